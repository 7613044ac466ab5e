#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tdsfact/poly.hpp"
#include "tdsfact/qpoly.hpp"
#include "tdsfact/rational_delay.hpp"

namespace tdsfact {

// Real-rational transfer function in normal form: both polynomials
// trimmed, denominator monic. Equality-friendly and deterministic.
struct RationalFunction {
  Poly num{0.0};
  Poly den{1.0};

  static RationalFunction from(Poly num, Poly den);
  static RationalFunction constant(double c) { return from({c}, {1.0}); }
  static RationalFunction one() { return constant(1.0); }
  static RationalFunction zero() { return constant(0.0); }

  bool is_zero() const { return poly::is_zero(num); }
  bool is_one() const;
  int num_degree() const { return poly::degree(num); }
  int den_degree() const { return poly::degree(den); }
  bool proper() const { return is_zero() || num_degree() <= den_degree(); }
  bool strictly_proper() const { return is_zero() || num_degree() < den_degree(); }
  bool biproper() const { return !is_zero() && num_degree() == den_degree(); }

  // Guarded evaluation: throws EvalError within ~1e-8 relative residual
  // of a denominator root.
  Complex eval(Complex s) const;
  Complex eval_unguarded(Complex s) const;
  double eval_scale(Complex s) const;

  RationalFunction derivative() const;
  RationalFunction reciprocal() const;

  // Arithmetic normalizes and attempts verified common-factor
  // cancellation (root matching, checked by sample evaluation; kept
  // only when it reproduces the original).
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;

  // Structure-preserving product: no cancellation, just normal form.
  static RationalFunction mul_nocancel(const RationalFunction& a,
                                       const RationalFunction& b);

  std::string str(int digits = 6) const;
};

// Verified cancellation used by the arithmetic above; public because
// callers occasionally want it explicitly.
RationalFunction simplified(const RationalFunction& rf);

// One pole with order and the coefficients of its principal part:
// coeffs[j] multiplies 1/(s-z)^{j+1}. coeffs[0] is the residue.
struct ResidueEntry {
  Complex pole;
  int order = 1;
  std::vector<Complex> coeffs;
};

struct ResidueTable {
  std::vector<ResidueEntry> entries;
  const ResidueEntry* find(Complex z, double tol = 1e-7) const;
};

// Pole prescription for a partial-fraction split.
struct PoleSpec {
  Complex z;
  int order = 1;
};

struct SplitOptions {
  double pole_tol = 1e-6;     // relative |den(z)| accepted as "a pole"
  double residual_tol = 1e-7; // relative reconstruction residual accepted
};

struct SplitResult {
  RationalFunction smooth;   // no poles at the prescribed set
  RationalFunction singular; // strictly proper, poles exactly the set
  ResidueTable residues;
};

// R = smooth + singular with the singular part carrying exactly the
// prescribed poles. Residue coefficients come from truncated power
// series of the deflated parts (repeated synthetic division), never
// numerical differentiation. The prescribed set must be
// conjugate-symmetric. Throws NumericalError when a z is not a pole of
// the stated order or the reconstruction residual is out of tolerance.
SplitResult partial_fraction_split(const RationalFunction& R,
                                   const std::vector<PoleSpec>& set,
                                   const SplitOptions& opts = {});

// Residues of R at all roots of its denominator.
ResidueTable full_residues(const RationalFunction& R, const SplitOptions& opts = {});

// Finite sum of delayed rational terms, sum_k G_k(s) e^{-h_k s}.
// Delays ascending and distinct; zero terms dropped. Improper terms are
// only admitted when flagged (quasi-polynomial conversions need them).
struct DelayTerm {
  RationalFunction part;
  RationalDelay delay;
};

struct DelaySum {
  std::vector<DelayTerm> terms;
  bool improper_allowed = false;

  static DelaySum make(std::vector<DelayTerm> terms, bool allow_improper = false);
  static DelaySum from_qpoly(const QuasiPolynomial& q);
  static DelaySum zero() { return DelaySum{}; }

  bool is_zero() const { return terms.empty(); }
  RationalDelay last_delay() const;
  bool all_proper() const;
  bool all_strictly_proper() const;

  Complex eval(Complex s) const;
  double eval_scale(Complex s) const;
  DelaySum derivative() const;

  DelaySum operator+(const DelaySum& o) const;
  DelaySum times(const RationalFunction& r) const;
  DelaySum delayed(const RationalDelay& h) const;

  std::string str(int digits = 6) const;
};

// Impulse response samples of a strictly proper DelaySum on the given
// time grid, via pole residues (sum of t^j e^{zt} modes per delayed
// term). Throws Error on a term that is not strictly proper.
std::vector<double> impulse_response(const DelaySum& f, const std::vector<double>& t);

// Uniform grid helper [t0, t1] with n points (n >= 2).
std::vector<double> time_grid(double t0, double t1, std::size_t n);

// Lazy product of factors kept in exact form: rational functions,
// ratios of quasi-polynomials, pure delays. Never expanded; evaluation
// multiplies factor values. Adjacent rational factors merge, unit
// factors vanish, so reports stay tidy.
struct QPRatio {
  QuasiPolynomial num;
  QuasiPolynomial den;
};

using RatioFactor = std::variant<RationalFunction, QPRatio, RationalDelay>;

struct RatioExpression {
  std::vector<RatioFactor> factors;

  static RatioExpression one() { return {}; }
  void push(RationalFunction f);
  void push(QPRatio f);
  void push_delay(RationalDelay h);

  bool is_one() const { return factors.empty(); }
  Complex eval(Complex s) const;
  double eval_scale(Complex s) const;
  RatioExpression times(const RatioExpression& o) const;

  std::string str(int digits = 6) const;
};

} // namespace tdsfact
