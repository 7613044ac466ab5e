#pragma once

#include <string>
#include <vector>

#include "tdsfact/poly.hpp"

namespace tdsfact {
namespace format {

// Shortest round-trip decimal (17 significant digits).
std::string full(double v);
// `digits` significant digits, plain formatting.
std::string sig(double v, int digits);
// Round to `digits` significant digits and return the value (for
// deterministic structured exports).
double round_sig(double v, int digits);

// "s^2-1.247s+1.1137" style; empty polynomial prints "0".
std::string poly_text(const Poly& p, int digits = 6);

// Coefficient list "a b c" at full precision.
std::string poly_coeffs(const Poly& p);

} // namespace format
} // namespace tdsfact
