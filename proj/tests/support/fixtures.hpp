#pragma once

// Reference data for the bundled example plants: the plant definitions,
// their published factorization constants, the finite-support controller
// blocks quoted to a few significant digits, and frozen synthetic
// synthesis data used for machine-precision round trips.  Everything
// here is data, no logic.

#include <utility>
#include <vector>

#include "tdsfact/controller.hpp"
#include "tdsfact/factorization.hpp"
#include "tdsfact/lti.hpp"
#include "tdsfact/qpoly.hpp"

namespace testsupport {

using tdsfact::Complex;
using tdsfact::DelaySum;
using tdsfact::DelayTerm;
using tdsfact::PlantDescription;
using tdsfact::Poly;
using tdsfact::QuasiPolynomial;
using tdsfact::RationalDelay;
using tdsfact::RationalFunction;
using tdsfact::SynthesisData;

// ---------------------------------------------------------------------
// Bundled quasi-polynomials.

// 3s + 0.5 + (2s+7)e^{-1.5s} + (s-1)e^{-2s}: neutral, finitely many
// right-half-plane roots.
inline QuasiPolynomial q1() {
  return tdsfact::parse_qpoly("3 0.5 @ 0; 2 7 @ 3/2; 1 -1 @ 2");
}

// s + 3 + (2s-2)e^{-0.4s}: infinitely many right-half-plane roots
// directly, finitely many through the conjugate.
inline QuasiPolynomial q2() {
  return tdsfact::parse_qpoly("1 3 @ 0; 2 -2 @ 2/5");
}

// ---------------------------------------------------------------------
// Bundled example plants.

// P1 = (s^2-2s+3 + 0.2s e^{-s}) / (s^3+1 + e^{-1.5s})
inline PlantDescription plant1() {
  return {tdsfact::parse_qpoly("1 -2 3 @ 0; 0.2 0 @ 1"),
          tdsfact::parse_qpoly("1 0 0 1 @ 0; 1 @ 3/2")};
}

// P2 = ((s-1)e^{-0.2s} + (0.1s+1)e^{-0.3s} + (0.2s-3)e^{-s}) / q1
inline PlantDescription plant2() {
  return {tdsfact::parse_qpoly("1 -1 @ 1/5; 0.1 1 @ 3/10; 0.2 -3 @ 1"), q1()};
}

// P3 = (s+3 + (2s-2)e^{-0.4s}) / (s^2 + s e^{-0.2s} + 5 e^{-0.5s})
inline PlantDescription plant3() {
  return {q2(), tdsfact::parse_qpoly("1 0 0 @ 0; 1 0 @ 1/5; 5 @ 1/2")};
}

// Small delayed-zero plant used in the walk-through factorization:
// (s-1)e^{-s} / (s-2).
inline PlantDescription plant_walkthrough() {
  return {tdsfact::parse_qpoly("1 -1 @ 1"), tdsfact::parse_qpoly("1 -2 @ 0")};
}

// ---------------------------------------------------------------------
// Published factorization constants (4-5 significant digits).

// Right-half-plane roots of the numerator / denominator / conjugate
// numerator quasi-polynomials, as quoted.
inline std::vector<Complex> p1_num_rhp_roots() {
  return {{1.0209, 1.4536}, {1.0209, -1.4536}};
}
inline std::vector<Complex> p1_den_rhp_roots() {
  return {{0.6235, 0.8514}, {0.6235, -0.8514}};
}
inline std::vector<Complex> p2_num_rhp_roots() { return {{1.1296, 0.0}}; }
inline std::vector<Complex> p2_den_rhp_roots() {
  return {{0.4153, 1.6032}, {0.4153, -1.6032}};
}
inline std::vector<Complex> p3_conj_num_rhp_roots() { return {{0.2470, 0.0}}; }
inline std::vector<Complex> p3_den_rhp_roots() {
  return {{0.4672, 1.8891}, {0.4672, -1.8891}};
}

// Numerators of the quoted rational inner factors (all monic, the
// denominators are the mirror images).
inline Poly p1_mn_num() { return {1, -2.0418, 3.1553}; }
inline Poly p1_md_num() { return {1, -1.2470, 1.1137}; }
inline Poly p2_md_num() { return {1, -0.8306, 2.7426}; }
inline Poly p3_md_num() { return {1, -0.9343, 3.7868}; }

// Asymptotic data quoted for q1: magnitudes of the asymptotic-polynomial
// roots (each a conjugate pair, listed once).
inline std::vector<double> q1_asymptotic_magnitudes() { return {1.6796, 1.0312}; }

// Quoted location of the single right-half-plane root of conjugate(q2).
inline double q2_conjugate_root() { return 0.2470; }

// Reference performance levels quoted for the three bundled plants.
// These are carried as fixtures; the library never computes them.
inline double gamma_reference(int plant) {
  return plant == 1 ? 1.8595 : plant == 2 ? 0.9579 : 0.5534;
}

// Mixed-sensitivity weights quoted with the bundled plants.
inline tdsfact::WeightPair weights1() {
  return {RationalFunction::from({0.1, 1}, {1, 2}), RationalFunction::zero()};
}
inline tdsfact::WeightPair weights2() {
  return {RationalFunction::one(), RationalFunction::from({0.2, 0.22}, {1})};
}
inline tdsfact::WeightPair weights3() {
  return {RationalFunction::from({1, 1}, {10, 1}),
          RationalFunction::constant(0.5)};
}

// ---------------------------------------------------------------------
// The decomposition example ("fir"): G = theta * (s^3+1+e^{-1.5s}) with a
// rational theta, G0 the inner factor of the denominator pair.

inline RationalFunction fir_theta() {
  return RationalFunction::from({-18.5952, -27.8651, 18.5796},
                                {1, 15, 59, 97, 72, 20});
}

inline DelaySum fir_g() {
  Poly den = {1, 15, 59, 97, 72, 20};
  std::vector<DelayTerm> ts;
  ts.push_back({RationalFunction::from({-18.5952, -27.8651, 18.5796, -18.5952,
                                        -27.8651, 18.5796},
                                       den),
                RationalDelay(0, 1)});
  ts.push_back({RationalFunction::from({-18.5952, -27.8651, 18.5796}, den),
                RationalDelay(3, 2)});
  return DelaySum::make(std::move(ts));
}

inline RationalFunction fir_g0() {
  return RationalFunction::from({1, -1.2470, 1.1137}, {1, 1.2470, 1.1137});
}

// ---------------------------------------------------------------------
// Finite-support controller blocks quoted for the bundled plants.

namespace detail {
inline DelaySum block(std::vector<std::pair<Poly, RationalDelay>> groups,
                      Poly den) {
  std::vector<DelayTerm> ts;
  ts.reserve(groups.size());
  for (auto& g : groups)
    ts.push_back({RationalFunction::from(std::move(g.first), den), g.second});
  return DelaySum::make(std::move(ts));
}
}  // namespace detail

// P1: numerator and denominator finite-support blocks are quoted
// identically; support 1.5.
inline DelaySum p1_printed_fn() {
  return detail::block({{{-0.1260, 0.3061}, RationalDelay(0, 1)},
                        {{-0.5588, -0.0810}, RationalDelay(3, 2)}},
                       {1, -1.2470, 1.1137});
}
inline DelaySum p1_printed_fd() { return p1_printed_fn(); }

// P2 numerator block, support 2, and the quoted smooth part that goes
// with it (the one quoted numerator channel that a rational synthesis
// product reproduces).
inline DelaySum p2_printed_fn() {
  return detail::block({{{2.2581, -2.8559}, RationalDelay(0, 1)},
                        {{3.9747, 0.6515}, RationalDelay(3, 2)},
                        {{0.3206, -1.3992}, RationalDelay(2, 1)}},
                       {1, -0.8306, 2.7426});
}
inline DelaySum p2_printed_hn() {
  return detail::block(
      {{{2.5576, -23.7178, -66.2867, -27.6938}, RationalDelay(0, 1)},
       {{-0.7643, -26.4543, -104.3494, -103.2943}, RationalDelay(3, 2)},
       {{1.2847, -6.0435, -11.5679, 5.6143}, RationalDelay(2, 1)}},
      {1, 6.7782, 3.7362, -21.2389, -19.1968});
}

// P2 denominator block, support 1.2 (delays start at 0.2).
inline DelaySum p2_printed_fd() {
  return detail::block(
      {{{-1.9920, -2.0032, -0.6709, -3.4737, 8.3747}, RationalDelay(1, 5)},
       {{-0.5516, -2.0532, -4.3838, -6.3426, -5.1627}, RationalDelay(3, 10)},
       {{4.0299, 1.1908, 0.1515, 8.6321, -18.2225}, RationalDelay(2, 5)},
       {{6.7325, -1.5256, 4.3559, 22.2652, -39.4726}, RationalDelay(1, 2)},
       {{0.4985, 4.3158, 10.8537, 14.5658, 16.9481}, RationalDelay(1, 1)},
       {{-15.3054, 4.4247, -11.0188, -52.7515, 92.1927}, RationalDelay(6, 5)}},
      {1, -1.9602, 0.7387, 2.6692, -10.8299, 9.1153});
}

// P3 numerator block, support 0.5.
inline DelaySum p3_printed_fn() {
  return detail::block({{{-0.009883, 0.02164}, RationalDelay(0, 1)},
                        {{-0.005714, -0.004544}, RationalDelay(1, 5)},
                        {{0.005999, -0.03418}, RationalDelay(1, 2)}},
                       {1, -0.9343, 3.7868});
}

// P3 denominator block, support 0.4.
inline DelaySum p3_printed_fd() {
  return detail::block(
      {{{-0.8777, 0.1428, -3.1172, -0.1909, -0.1546}, RationalDelay(0, 1)},
       {{1.2623, -0.5283, 3.6099, 0.2144, 0.1640}, RationalDelay(2, 5)}},
      {100, -118.13, 404.10, -96.30, 9.41, -2.191});
}

// ---------------------------------------------------------------------
// Frozen synthetic synthesis data.  The rational functions below satisfy
// the interpolation conditions of their plants to machine precision (each
// quadratic f was fitted so the denominator channel vanishes at the
// carrier zeros), so the assembled controllers certify at 1e-8.

// For plant1 (direct-numerator case), level 1.0.
inline SynthesisData synth1() {
  SynthesisData sd;
  sd.gamma_opt = 1.0;
  sd.e = RationalFunction::from({1, 5}, {1, 3});
  sd.f = RationalFunction::from(
      {-12.192473795755822, -1.2192473795755823, -0.030481184489389558},
      {1, 2.835088825293745, 2.009432161826367});
  sd.l = RationalFunction::one();
  return sd;
}

// For plant3 (conjugate-numerator case), level 0.7.
inline SynthesisData synth3() {
  SynthesisData sd;
  sd.gamma_opt = 0.7;
  sd.e = RationalFunction::one();
  sd.f = RationalFunction::from(
      {-1.11763031403943, -0.111763031403943, -0.002794075785098575},
      {1, 0.493788122009254, 0.060956677359356476});
  sd.l = RationalFunction::one();
  return sd;
}

}  // namespace testsupport
