#include "tdsfact/rational_delay.hpp"

#include <cctype>
#include <numeric>

#include "tdsfact/errors.hpp"

namespace tdsfact {

RationalDelay::RationalDelay(std::int64_t n, std::int64_t d) {
  if (d == 0) throw ParseError("delay denominator is zero");
  if (n < 0 || d < 0) throw ParseError("delay is negative");
  const std::int64_t g = std::gcd(n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
  if (num == 0) den = 1;
}

RationalDelay RationalDelay::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty delay literal");
  if (s.find('e') != std::string::npos || s.find('E') != std::string::npos)
    throw ParseError("exponent notation not allowed in delay: '" + text + "'");
  if (s[0] == '-') throw ParseError("negative delay: '" + text + "'");

  auto digits_only = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!digits_only(a) || !digits_only(b))
      throw ParseError("malformed delay fraction: '" + text + "'");
    return RationalDelay(std::stoll(a), std::stoll(b));
  }

  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    if (!digits_only(s)) throw ParseError("malformed delay: '" + text + "'");
    return RationalDelay(std::stoll(s), 1);
  }

  const std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  if ((!ip.empty() && !digits_only(ip)) || (!fp.empty() && !digits_only(fp)) ||
      (ip.empty() && fp.empty()))
    throw ParseError("malformed delay: '" + text + "'");
  if (fp.size() > 15) throw ParseError("delay has too many decimal digits: '" + text + "'");
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
  const std::int64_t whole = ip.empty() ? 0 : std::stoll(ip);
  const std::int64_t frac = fp.empty() ? 0 : std::stoll(fp);
  return RationalDelay(whole * scale + frac, scale);
}

RationalDelay RationalDelay::operator+(const RationalDelay& o) const {
  const std::int64_t g = std::gcd(den, o.den);
  return RationalDelay(num * (o.den / g) + o.num * (den / g), den / g * o.den);
}

RationalDelay RationalDelay::operator-(const RationalDelay& o) const {
  const std::int64_t g = std::gcd(den, o.den);
  const std::int64_t n = num * (o.den / g) - o.num * (den / g);
  if (n < 0) throw Error("delay subtraction went negative");
  return RationalDelay(n, den / g * o.den);
}

bool RationalDelay::operator<(const RationalDelay& o) const {
  return num * o.den < o.num * den;
}

std::string RationalDelay::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::int64_t lcd(const RationalDelay* delays, std::size_t count) {
  std::int64_t l = 1;
  for (std::size_t i = 0; i < count; ++i) l = std::lcm(l, delays[i].den);
  return l;
}

} // namespace tdsfact
