#pragma once

#include <string>
#include <vector>

#include "tdsfact/lti.hpp"
#include "tdsfact/qpoly.hpp"
#include "tdsfact/rootfinder.hpp"

namespace tdsfact {

// Blaschke product carrying the given open-right-half-plane zero set:
// numerator prod (s - z_i), denominator its mirror across the imaginary
// axis, both monic with real coefficients. |value(jw)| = 1 for all w.
struct InnerRational {
  RationalFunction value = RationalFunction::one();
  RootSet zeros;
};

// Errors: a zero within 1e-8 of the imaginary axis, or a zero set that is
// not conjugate-symmetric. Empty set gives the constant 1.
InnerRational blaschke(const RootSet& zeros);

// Inner/outer factorization of a single quasi-polynomial,
// q = inner * outer, with the inner factor carrying the right-half-plane
// zeros (plus any leading common delay) and the outer factor free of
// right-half-plane zeros and poles.
struct QpolyFactors {
  RatioExpression inner;
  RatioExpression outer;
  InnerRational bl;           // rational Blaschke part of the inner factor
  RootSet rhp_zeros;          // zero set carried by the inner factor
  Rectangle box;              // search box certified by the root finder
  bool heuristic_box = false; // top edge found by growth heuristic
};

// Factor q directly; requires finiteness_rhp(q) == Finite.
QpolyFactors factor_qpoly_direct(const QuasiPolynomial& q,
                                 const RhpOptions& opts = {});

// Factor through the conjugate: the inner factor is the all-pass q/q~
// times the Blaschke product of the conjugate's right-half-plane zeros,
// the outer factor is q~ with those zeros removed. Requires
// finiteness_rhp_conjugate(q) == Finite.
QpolyFactors factor_qpoly_conjugate(const QuasiPolynomial& q,
                                    const RhpOptions& opts = {});

struct PlantDescription {
  QuasiPolynomial num;
  QuasiPolynomial den;
};

enum class PlantCase {
  DirectNumerator,     // numerator and denominator both have finitely
                       // many right-half-plane roots
  ConjugateNumerator,  // the numerator's conjugate does
  NotAdmissible,
};

struct PlantClass {
  PlantCase kind = PlantCase::NotAdmissible;
  std::string reason;          // filled when NotAdmissible
  bool indeterminate = false;  // a finiteness verdict fell in the unit band
  FinitenessVerdict num_direct, den_direct, num_conjugate;
};

// Classify a plant into one of the two factorization cases. Realizability
// (leading-term degree and delay order) is a precondition and throws
// FactorizationError when violated; both verdicts are recorded for
// reporting either way.
PlantClass classify_plant(const PlantDescription& p);

// Coprime inner/outer factorization q_n/q_d = m_n N_o / m_d.
struct FactoredPlant {
  PlantCase kind = PlantCase::NotAdmissible;
  RatioExpression m_n;    // inner, may carry a pure delay or all-pass ratio
  RatioExpression m_d;    // inner, rational
  RatioExpression outer;  // N_o, kept in factored form
  InnerRational bn, bd;   // Blaschke parts backing m_n and m_d
  RootSet num_rhp_zeros;  // zeros carried by m_n's Blaschke part
  RootSet den_rhp_zeros;  // zeros of m_d
  RationalDelay net_delay;  // pure-delay factor inside m_n (direct case)
  RationalDelay num_lead, den_lead;  // leading delays removed by the shifts
  QuasiPolynomial num_shifted, den_shifted;  // leading delays extracted
  QuasiPolynomial num_conj;  // conjugate numerator (conjugate case only)
  bool heuristic_boxes = false;
  std::vector<std::string> warnings;
};

FactoredPlant factor_plant(const PlantDescription& p,
                           const RhpOptions& opts = {});

// Largest relative deviation of m_n * N_o / m_d from q_n/q_d over
// deterministic sample points chosen away from poles and zeros.
double factorization_residual(const PlantDescription& p,
                              const FactoredPlant& f, int samples = 64);

// Human-readable factorization summary.
std::string describe(const FactoredPlant& f, int digits = 6);

}  // namespace tdsfact
