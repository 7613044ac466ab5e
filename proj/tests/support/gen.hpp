#pragma once

// Deterministic random generators for the property suites.  Every suite
// seeds its own engine, so failures reproduce from the seed alone.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tdsfact/lti.hpp"
#include "tdsfact/poly.hpp"
#include "tdsfact/qpoly.hpp"
#include "tdsfact/rational_delay.hpp"

namespace testsupport {

using Rng = std::mt19937_64;
using tdsfact::Complex;
using tdsfact::Poly;
using tdsfact::RationalDelay;

inline double uniform(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int uniform_int(Rng& rng, int a, int b) {
  return std::uniform_int_distribution<int>(a, b)(rng);
}

// Nonzero coefficient in [-scale, scale], bounded away from zero so
// degrees stay what they were drawn to be.
inline double coeff(Rng& rng, double scale = 3.0) {
  double c = uniform(rng, 0.2, scale);
  return uniform_int(rng, 0, 1) ? c : -c;
}

inline Poly random_poly(Rng& rng, int max_deg, double scale = 3.0) {
  int deg = uniform_int(rng, 0, max_deg);
  Poly p(static_cast<std::size_t>(deg) + 1);
  p[0] = coeff(rng, scale);
  for (int i = 1; i <= deg; ++i) p[static_cast<std::size_t>(i)] = uniform(rng, -scale, scale);
  return p;
}

// Monic polynomial with all roots in Re < -margin: real roots and
// conjugate pairs drawn from a well-separated range.
inline Poly random_stable_poly(Rng& rng, int deg, double margin = 0.3) {
  std::vector<Complex> roots;
  while (static_cast<int>(roots.size()) < deg) {
    if (deg - static_cast<int>(roots.size()) >= 2 && uniform_int(rng, 0, 1)) {
      double re = -uniform(rng, margin, 4.0);
      double im = uniform(rng, 0.3, 3.0);
      roots.emplace_back(re, im);
      roots.emplace_back(re, -im);
    } else {
      roots.emplace_back(-uniform(rng, margin, 4.0), 0.0);
    }
  }
  return tdsfact::poly::from_roots(roots);
}

// Conjugate pair in the open right half plane, away from the axis.
inline std::pair<Complex, Complex> random_rhp_pair(Rng& rng) {
  double re = uniform(rng, 0.3, 1.6);
  double im = uniform(rng, 0.4, 2.2);
  return {Complex(re, im), Complex(re, -im)};
}

// Small exact delay from a fixed menu (denominators 1..5).
inline RationalDelay random_delay(Rng& rng, bool allow_zero = true) {
  static const std::pair<std::int64_t, std::int64_t> menu[] = {
      {0, 1}, {1, 4}, {2, 5}, {1, 2}, {3, 5}, {3, 4}, {1, 1},
      {5, 4}, {3, 2}, {2, 1}, {5, 2}, {3, 1}};
  int lo = allow_zero ? 0 : 1;
  auto pick = menu[uniform_int(rng, lo, 11)];
  return RationalDelay(pick.first, pick.second);
}

// Random quasi-polynomial: 1..4 terms with distinct delays, degrees up
// to 4.  Roughly half the draws are standard-form (first term dominant).
inline tdsfact::QuasiPolynomial random_qpoly(Rng& rng) {
  int nterms = uniform_int(rng, 1, 4);
  std::vector<tdsfact::QTerm> terms;
  std::vector<RationalDelay> used;
  for (int i = 0; i < nterms; ++i) {
    RationalDelay h = random_delay(rng, i == 0);
    bool fresh = true;
    for (const auto& u : used)
      if (u == h) fresh = false;
    if (!fresh) continue;
    used.push_back(h);
    terms.push_back({random_poly(rng, 4), h});
  }
  return tdsfact::QuasiPolynomial::make(std::move(terms));
}

// Strictly proper rational function with a random stable denominator.
inline tdsfact::RationalFunction random_strictly_proper(Rng& rng, int den_deg) {
  Poly den = random_stable_poly(rng, den_deg);
  Poly num = random_poly(rng, den_deg - 1);
  return tdsfact::RationalFunction::from(num, den);
}

// Evaluation points spread over a vertical strip, away from the real
// axis often enough to see complex structure.
inline Complex random_point(Rng& rng) {
  return Complex(uniform(rng, -2.5, 2.5), uniform(rng, -4.0, 4.0));
}

}  // namespace testsupport
