#include "tdsfact/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "tdsfact/errors.hpp"

namespace tdsfact {
namespace poly {

Poly trim(Poly p) {
  std::size_t lead = 0;
  while (lead + 1 < p.size() && p[lead] == 0.0) ++lead;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
  if (p.empty()) p.push_back(0.0);
  return p;
}

bool is_zero(const Poly& p) {
  for (double c : p)
    if (c != 0.0) return false;
  return true;
}

int degree(const Poly& p) {
  const Poly t = trim(p);
  if (is_zero(t)) return -1;
  return static_cast<int>(t.size()) - 1;
}

double eval(const Poly& p, double s) {
  double acc = 0.0;
  for (double c : p) acc = acc * s + c;
  return acc;
}

Complex eval(const Poly& p, Complex s) {
  Complex acc = 0.0;
  for (double c : p) acc = acc * s + c;
  return acc;
}

Complex eval(const CPoly& p, Complex s) {
  Complex acc = 0.0;
  for (const Complex& c : p) acc = acc * s + c;
  return acc;
}

double eval_scale(const Poly& p, Complex s) {
  const double m = std::abs(s);
  double acc = 0.0;
  for (double c : p) acc = acc * m + std::abs(c);
  return acc;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  const std::size_t oa = out.size() - a.size(), ob = out.size() - b.size();
  for (std::size_t i = 0; i < a.size(); ++i) out[oa + i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[ob + i] += b[i];
  return trim(out);
}

Poly sub(const Poly& a, const Poly& b) { return add(a, scale(b, -1.0)); }

Poly mul(const Poly& a, const Poly& b) {
  if (is_zero(a) || is_zero(b)) return {0.0};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return trim(out);
}

Poly scale(const Poly& a, double k) {
  Poly out = a;
  for (double& c : out) c *= k;
  return trim(out);
}

Poly derivative(const Poly& p) {
  const Poly t = trim(p);
  if (t.size() <= 1) return {0.0};
  Poly out(t.size() - 1);
  const int n = static_cast<int>(t.size()) - 1;
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)] * (n - i);
  return out;
}

Poly negate_argument(const Poly& p) {
  Poly out = trim(p);
  const int n = static_cast<int>(out.size()) - 1;
  for (int i = 0; i <= n; ++i)
    if ((n - i) % 2 != 0) out[static_cast<std::size_t>(i)] = -out[static_cast<std::size_t>(i)];
  return out;
}

DivResult divide(const Poly& a, const Poly& b) {
  const Poly num = trim(a), den = trim(b);
  if (is_zero(den)) throw Error("polynomial division by zero");
  if (num.size() < den.size()) return {{0.0}, num};
  Poly rem = num;
  Poly quot(num.size() - den.size() + 1, 0.0);
  for (std::size_t i = 0; i + den.size() <= rem.size(); ++i) {
    const double f = rem[i] / den[0];
    quot[i] = f;
    for (std::size_t j = 0; j < den.size(); ++j) rem[i + j] -= f * den[j];
  }
  rem.erase(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(quot.size()));
  if (rem.empty()) rem.push_back(0.0);
  return {trim(quot), trim(rem)};
}

CPoly deflate(const CPoly& p, Complex z, Complex* remainder) {
  if (p.size() <= 1) {
    if (remainder) *remainder = p.empty() ? Complex(0.0) : p[0];
    return {Complex(0.0)};
  }
  CPoly q(p.size() - 1);
  Complex acc = p[0];
  q[0] = acc;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    acc = acc * z + p[i];
    q[i] = acc;
  }
  if (remainder) *remainder = acc * z + p.back();
  return q;
}

CPoly taylor_shift(const CPoly& p, Complex z0) {
  CPoly work = p;
  CPoly out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    Complex rem;
    work = deflate(work, z0, &rem);
    out[k] = rem;
    if (work.size() == 1 && work[0] == Complex(0.0) && k + 1 < p.size()) {
      for (std::size_t j = k + 1; j < p.size(); ++j) out[j] = 0.0;
      break;
    }
  }
  return out;
}

CPoly to_cpoly(const Poly& p) {
  CPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  return out;
}

Poly to_real(const CPoly& p) {
  Poly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
  return out;
}

double max_imag(const CPoly& p) {
  double m = 0.0;
  for (const Complex& c : p) m = std::max(m, std::abs(c.imag()));
  return m;
}

CPoly series_divide(const CPoly& a, const CPoly& b, std::size_t count) {
  if (b.empty() || b[0] == Complex(0.0)) throw Error("series division by zero constant term");
  CPoly out(count, Complex(0.0));
  for (std::size_t k = 0; k < count; ++k) {
    Complex acc = k < a.size() ? a[k] : Complex(0.0);
    for (std::size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * out[k - j];
    out[k] = acc / b[0];
  }
  return out;
}

Poly from_roots(const std::vector<Complex>& roots, double pair_tol) {
  Poly acc{1.0};
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    const Complex z = roots[i];
    if (std::abs(z.imag()) <= pair_tol * (1.0 + std::abs(z))) {
      acc = mul(acc, {1.0, -z.real()});
      used[i] = true;
      continue;
    }
    // find the conjugate partner
    std::size_t partner = roots.size();
    double best = 0.0;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots[j] - std::conj(z));
      if (partner == roots.size() || d < best) {
        partner = j;
        best = d;
      }
    }
    if (partner == roots.size() || best > 1e-6 * (1.0 + std::abs(z)))
      throw Error("root set is not conjugate-symmetric");
    used[i] = used[partner] = true;
    const Complex zm = 0.5 * (z + std::conj(roots[partner]));
    acc = mul(acc, {1.0, -2.0 * zm.real(), std::norm(zm)});
  }
  return acc;
}

double inf_norm(const Poly& p) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::abs(c));
  return m;
}

} // namespace poly
} // namespace tdsfact
