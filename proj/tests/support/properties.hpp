#pragma once

// Randomized property drivers, shared between the unit suites and the
// acceptance runner so both exercise identical logic.  Each driver is
// deterministic in (n, seed) and returns a compact report instead of
// asserting, so callers choose their own failure handling.

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "support/gen.hpp"
#include "tdsfact/errors.hpp"
#include "tdsfact/factorization.hpp"
#include "tdsfact/lti.hpp"
#include "tdsfact/phi.hpp"
#include "tdsfact/qpoly.hpp"

namespace testsupport {

using tdsfact::blaschke;
using tdsfact::Complex;
using tdsfact::DelaySum;
using tdsfact::DelayTerm;
using tdsfact::InnerRational;
using tdsfact::PoleSpec;
using tdsfact::Poly;
using tdsfact::QuasiPolynomial;
using tdsfact::RationalDelay;
using tdsfact::RationalFunction;
using tdsfact::RootSet;

struct PropertyReport {
  int cases = 0;
  int failures = 0;
  double worst = 0;  // worst residual over all cases (property-specific)
  std::string note;  // first failure, for diagnostics

  void fail(const std::string& what) {
    ++failures;
    if (note.empty()) note = what;
  }
  bool pass() const { return failures == 0 && cases > 0; }
};

namespace detail {

inline std::string case_tag(const char* prop, int i) {
  std::ostringstream os;
  os << prop << " case " << i;
  return os.str();
}

// Forward-constructed decomposition input: a delay sum G sharing the
// zeros of the inner G0 = blaschke({z, conj z}), with known smooth part
// H0 and known finite-support part F0.  The second numerator is solved
// from the first so the tail modes beyond the last delay cancel, which
// is exactly the condition G(z) = 0.
struct ForwardCase {
  DelaySum g;
  RationalFunction g0;
  DelaySum h0, f0;
  Complex z;
  double support = 0;
};

inline ForwardCase make_forward_case(Rng& rng, double perturb = 0.0) {
  ForwardCase fc;
  auto [z, zc] = random_rhp_pair(rng);
  fc.z = z;
  RootSet rs;
  rs.add(z, 1);
  rs.add(zc, 1);
  rs.canonicalize();
  InnerRational inner = blaschke(rs);
  fc.g0 = inner.value;
  Poly psi = fc.g0.num;          // vanishes at z
  Poly psi_mirror = fc.g0.den;   // stable

  RationalDelay h = random_delay(rng, false);
  fc.support = h.value();

  // Singular-part numerators: r1 is solved from r0 so that
  // r0(z) + r1(z) e^{-z h} = 0.
  double a1 = coeff(rng), a0 = uniform(rng, -3.0, 3.0);
  Complex w = -(a1 * z + a0) * std::exp(z * h.value());
  double b1 = w.imag() / z.imag();
  double b0 = w.real() - b1 * z.real();
  b0 += perturb * (1.0 + std::abs(b0));
  Poly r0 = {a1, a0}, r1 = {b1, b0};

  // Smooth parts: strictly proper and stable.
  RationalFunction h0a = random_strictly_proper(rng, uniform_int(rng, 2, 3));
  RationalFunction h0b = random_strictly_proper(rng, uniform_int(rng, 2, 3));
  fc.h0 = DelaySum::make(
      {{h0a, RationalDelay(0, 1)}, {h0b, h}});
  fc.f0 = DelaySum::make({{RationalFunction::from(r0, psi), RationalDelay(0, 1)},
                          {RationalFunction::from(r1, psi), h}});

  // G = (H0 + F0) * G0 with the psi factors cancelled by hand, so no
  // term carries a removable singularity at z.  Assembled with plain
  // polynomial algebra: G(z) = 0 must hold to machine precision, and
  // rational-arithmetic simplification would cost digits here.
  auto part = [&](const RationalFunction& smooth, const Poly& r) {
    Poly num = tdsfact::poly::add(tdsfact::poly::mul(smooth.num, psi),
                                  tdsfact::poly::mul(r, smooth.den));
    Poly den = tdsfact::poly::mul(smooth.den, psi_mirror);
    return RationalFunction::from(num, den);
  };
  fc.g = DelaySum::make(
      {{part(h0a, r0), RationalDelay(0, 1)}, {part(h0b, r1), h}});
  return fc;
}

// Relative agreement of two delay sums at sample points away from the
// poles of either.
inline double delaysum_distance(Rng& rng, const DelaySum& a, const DelaySum& b,
                                int points) {
  double worst = 0;
  int taken = 0, guard = 0;
  while (taken < points && guard < points * 20) {
    ++guard;
    Complex s = random_point(rng);
    try {
      Complex va = a.eval(s), vb = b.eval(s);
      double scale = std::max(1.0, std::max(std::abs(va), std::abs(vb)));
      worst = std::max(worst, std::abs(va - vb) / scale);
      ++taken;
    } catch (const tdsfact::Error&) {
      continue;  // too close to a pole; resample
    }
  }
  return worst;
}

}  // namespace detail

// conjugate(conjugate(q)) == q coefficient-exact on first-delay-zero
// data (conjugation measures delays from the leading term, so a common
// offset is dropped — the general round trip shifts by h_1), plus the
// magnitude symmetry |conj q (jw)| = |q(jw)| within 1e-12 relative.
inline PropertyReport prop_conjugate_involution(int n, std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    ++rep.cases;
    QuasiPolynomial raw = random_qpoly(rng);
    QuasiPolynomial shifted =
        tdsfact::conjugate(tdsfact::conjugate(raw));
    if (!(shifted == tdsfact::extract_common_delay(raw).second)) {
      rep.fail(detail::case_tag("involution", i) +
               ": general round trip is not the delay-normalized input");
      continue;
    }
    QuasiPolynomial q = tdsfact::extract_common_delay(raw).second;
    QuasiPolynomial qq = tdsfact::conjugate(tdsfact::conjugate(q));
    if (!(qq == q)) {
      rep.fail(detail::case_tag("involution", i) + ": round trip not exact");
      continue;
    }
    QuasiPolynomial qc = tdsfact::conjugate(q);
    for (double w : {0.37, 1.9, 6.3}) {
      Complex s(0.0, w);
      double m1 = std::abs(tdsfact::evaluate(q, s));
      double m2 = std::abs(tdsfact::evaluate(qc, s));
      double scale = std::max({1e-30, m1, m2});
      double rel = std::abs(m1 - m2) / scale;
      rep.worst = std::max(rep.worst, rel);
      if (rel > 1e-12)
        rep.fail(detail::case_tag("involution", i) + ": magnitude symmetry");
    }
  }
  return rep;
}

// partial_fraction_split: reconstruction within 1e-9, singular part
// strictly proper with exactly the prescribed poles, smooth part
// pole-free at the prescribed set.
inline PropertyReport prop_partial_fraction(int n, std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    ++rep.cases;
    auto [z, zc] = random_rhp_pair(rng);
    int order = (i % 4 == 3) ? 2 : 1;
    std::vector<Complex> roots;
    for (int k = 0; k < order; ++k) {
      roots.push_back(z);
      roots.push_back(zc);
    }
    Poly extra = random_stable_poly(rng, uniform_int(rng, 1, 3));
    Poly den = tdsfact::poly::mul(tdsfact::poly::from_roots(roots), extra);
    Poly num = random_poly(rng, tdsfact::poly::degree(den) - 1);
    RationalFunction r = RationalFunction::from(num, den);

    try {
      auto split = tdsfact::partial_fraction_split(
          r, {{z, order}, {zc, order}});
      if (!split.singular.strictly_proper())
        rep.fail(detail::case_tag("split", i) + ": singular not strictly proper");
      double ds = tdsfact::poly::eval_scale(split.smooth.den, z);
      if (std::abs(tdsfact::poly::eval(split.smooth.den, z)) < 1e-4 * ds)
        rep.fail(detail::case_tag("split", i) + ": smooth kept the pole");
      if (split.singular.den_degree() != 2 * order)
        rep.fail(detail::case_tag("split", i) + ": singular pole set wrong");

      for (int p = 0; p < 6; ++p) {
        Complex s = random_point(rng);
        try {
          Complex lhs = split.smooth.eval(s) + split.singular.eval(s);
          Complex rhs = r.eval(s);
          double rel =
              std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
          rep.worst = std::max(rep.worst, rel);
          if (rel > 1e-9)
            rep.fail(detail::case_tag("split", i) + ": reconstruction residual");
        } catch (const tdsfact::Error&) {
          continue;
        }
      }
    } catch (const tdsfact::Error& e) {
      rep.fail(detail::case_tag("split", i) + ": threw " + e.what());
    }
  }
  return rep;
}

// H + F reproduces G / G0 within 1e-9 across the decomposition paths:
// shared zeros, no shared zeros (degenerate), and a trivial reference.
inline PropertyReport prop_phi_reconstruction(int n, std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    ++rep.cases;
    DelaySum g;
    RationalFunction g0;
    if (i % 3 == 0) {
      detail::ForwardCase fc = detail::make_forward_case(rng);
      g = fc.g;
      g0 = fc.g0;
    } else if (i % 3 == 1) {
      g = DelaySum::make(
          {{random_strictly_proper(rng, 2), RationalDelay(0, 1)},
           {random_strictly_proper(rng, 3), random_delay(rng, false)}});
      auto [z, zc] = random_rhp_pair(rng);
      RootSet rs;
      rs.add(z, 1);
      rs.add(zc, 1);
      rs.canonicalize();
      g0 = blaschke(rs).value;
    } else {
      g = DelaySum::make(
          {{random_strictly_proper(rng, 2), RationalDelay(0, 1)},
           {random_strictly_proper(rng, 2), random_delay(rng, false)}});
      g0 = RationalFunction::one();
    }

    try {
      tdsfact::PhiResult pr = tdsfact::phi_decompose(g, g0, 1e-8, false);
      int taken = 0, guard = 0;
      while (taken < 8 && guard < 160) {
        ++guard;
        Complex s = random_point(rng);
        try {
          Complex lhs = pr.smooth.eval(s) + pr.fir.f.eval(s);
          Complex rhs = g.eval(s) / g0.eval(s);
          double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
          rep.worst = std::max(rep.worst, rel);
          if (rel > 1e-9)
            rep.fail(detail::case_tag("phi-recon", i) + ": residual too large");
          ++taken;
        } catch (const tdsfact::Error&) {
          continue;
        }
      }
    } catch (const tdsfact::Error& e) {
      rep.fail(detail::case_tag("phi-recon", i) + ": threw " + e.what());
    }
  }
  return rep;
}

// Forward-constructed cancellation: the decomposition recovers the known
// H0 and F0 within 1e-8 and certifies the finite support at 1e-8.
inline PropertyReport prop_forward_recovery(int n, std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    ++rep.cases;
    detail::ForwardCase fc = detail::make_forward_case(rng);
    try {
      tdsfact::PhiResult pr = tdsfact::phi_decompose(fc.g, fc.g0, 1e-8, false);
      if (pr.degenerate) {
        rep.fail(detail::case_tag("forward", i) + ": shared zeros not detected");
        continue;
      }
      if (!pr.fir.certification.pass) {
        rep.fail(detail::case_tag("forward", i) + ": certification failed: " +
                 pr.fir.certification.str());
        continue;
      }
      double df = detail::delaysum_distance(rng, pr.fir.f, fc.f0, 6);
      double dh = detail::delaysum_distance(rng, pr.smooth, fc.h0, 6);
      rep.worst = std::max({rep.worst, df, dh});
      if (df > 1e-8)
        rep.fail(detail::case_tag("forward", i) + ": recovered F off");
      if (dh > 1e-8)
        rep.fail(detail::case_tag("forward", i) + ": recovered H off");
    } catch (const tdsfact::Error& e) {
      rep.fail(detail::case_tag("forward", i) + ": threw " + e.what());
    }
  }
  return rep;
}

// A perturbed coefficient breaks the cancellation: certification fails
// and the tail grows with the window.
inline PropertyReport prop_broken_cancellation(int n, std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    ++rep.cases;
    detail::ForwardCase fc = detail::make_forward_case(rng, 1e-4);
    try {
      // Loose detection still sees the near-cancellation; the certificate
      // must reject it.
      tdsfact::PhiResult pr =
          tdsfact::phi_decompose(fc.g, fc.g0, 1e-8, false, 1e-2);
      if (pr.degenerate) {
        rep.fail(detail::case_tag("broken", i) + ": zero not picked up");
        continue;
      }
      if (pr.fir.certification.pass) {
        rep.fail(detail::case_tag("broken", i) +
                 ": certification accepted a broken cancellation");
        continue;
      }
      double t1 = 2.0 * fc.support + 1.0;
      tdsfact::FirCertification c1 =
          tdsfact::certify_fir(pr.fir.f, fc.support, 1e-8, t1);
      tdsfact::FirCertification c2 =
          tdsfact::certify_fir(pr.fir.f, fc.support, 1e-8, 2.0 * t1);
      rep.worst = std::max(rep.worst, c2.tail_max);
      if (!(c2.tail_max > c1.tail_max))
        rep.fail(detail::case_tag("broken", i) + ": tail did not grow");
    } catch (const tdsfact::Error& e) {
      rep.fail(detail::case_tag("broken", i) + ": threw " + e.what());
    }
  }
  return rep;
}

}  // namespace testsupport
