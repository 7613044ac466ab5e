#pragma once

#include <cstdint>
#include <string>

namespace tdsfact {

// Exact nonnegative rational number used for delays. Always stored
// reduced with a positive denominator, so equality is plain field
// comparison and arithmetic never accumulates drift.
struct RationalDelay {
  std::int64_t num = 0;
  std::int64_t den = 1;

  RationalDelay() = default;
  RationalDelay(std::int64_t n, std::int64_t d);

  static RationalDelay from_integer(std::int64_t n) { return RationalDelay(n, 1); }

  // Accepts "3", "3/2" or a plain decimal like "1.5" (converted exactly
  // via its decimal expansion). Rejects negative values and exponent
  // notation.
  static RationalDelay parse(const std::string& text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }

  RationalDelay operator+(const RationalDelay& o) const;
  // Requires *this >= o; delays never go negative.
  RationalDelay operator-(const RationalDelay& o) const;

  bool operator==(const RationalDelay& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RationalDelay& o) const { return !(*this == o); }
  bool operator<(const RationalDelay& o) const;
  bool operator<=(const RationalDelay& o) const { return *this < o || *this == o; }

  // Exact serialization, "n" or "n/d".
  std::string str() const;
};

// Least common denominator of a set of delays.
std::int64_t lcd(const RationalDelay* delays, std::size_t count);

} // namespace tdsfact
