#include "tdsfact/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tdsfact {
namespace format {

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double round_sig(double v, int digits) {
  return std::strtod(sig(v, digits).c_str(), nullptr);
}

std::string poly_text(const Poly& p, int digits) {
  const int n = static_cast<int>(p.size()) - 1;
  std::string out;
  bool wrote = false;
  for (int i = 0; i <= n; ++i) {
    const double c = p[static_cast<std::size_t>(i)];
    if (c == 0.0 && n > 0) continue;
    const int pow = n - i;
    std::string mag = sig(std::abs(c), digits);
    if (!wrote) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    if (pow == 0) {
      out += mag;
    } else {
      if (std::abs(c) != 1.0) out += mag;
      out += "s";
      if (pow > 1) out += "^" + std::to_string(pow);
    }
    wrote = true;
  }
  if (!wrote) out = "0";
  return out;
}

std::string poly_coeffs(const Poly& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += " ";
    out += full(p[i]);
  }
  return out;
}

} // namespace format
} // namespace tdsfact
