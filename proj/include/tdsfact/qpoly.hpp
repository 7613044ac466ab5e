#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tdsfact/poly.hpp"
#include "tdsfact/rational_delay.hpp"

namespace tdsfact {

// One term c(s) e^{-h s} of a quasi-polynomial.
struct QTerm {
  Poly coeffs;         // highest degree first, trimmed, not all zero
  RationalDelay delay; // exact
};

// Finite sum q(s) = sum_i q_i(s) e^{-h_i s}, delays strictly ascending
// and exact. Canonical: distinct delays, zero terms dropped, at least
// one term. The dominant-degree condition (first term has maximal
// degree) is NOT enforced structurally, because conjugation of a
// retarded input legitimately produces data violating it; query it via
// is_standard().
struct QuasiPolynomial {
  std::vector<QTerm> terms;

  // Canonicalizes: sorts by delay, merges equal delays, drops zero
  // polynomials. Throws if everything cancels.
  static QuasiPolynomial make(std::vector<QTerm> terms);
  static QuasiPolynomial from_poly(Poly p);

  std::size_t size() const { return terms.size(); }
  const RationalDelay& h1() const { return terms.front().delay; }
  const RationalDelay& hv() const { return terms.back().delay; }
  int max_degree() const;
  bool is_standard() const; // deg(term 1) >= deg(term i) for all i
  bool is_polynomial() const { return terms.size() == 1 && terms[0].delay.is_zero(); }

  bool operator==(const QuasiPolynomial& o) const;
};

enum class KindTag { Retarded, Neutral };

// Def-2 dichotomy: Neutral iff some later term matches the first term's
// degree. Meaningful for standard-form inputs.
KindTag classify(const QuasiPolynomial& q);

Complex evaluate(const QuasiPolynomial& q, Complex s);
// Sum of term magnitudes at s; the natural scale for relative residuals.
double evaluate_scale(const QuasiPolynomial& q, Complex s);
Complex evaluate_derivative(const QuasiPolynomial& q, Complex s);
// Order-n derivative, computed termwise: (c e^{-hs})' = (c' - h c)e^{-hs}.
QuasiPolynomial derivative(const QuasiPolynomial& q);

// qbar(s) = -q(-s) e^{-h_v s}. Involutive; delays map to h_v - h_i.
QuasiPolynomial conjugate(const QuasiPolynomial& q);

// (h_1, q shifted so its first delay is zero); q = e^{-h_1 s} * shifted.
std::pair<RationalDelay, QuasiPolynomial> extract_common_delay(const QuasiPolynomial& q);

// Shift every delay down by h (requires h <= h_1).
QuasiPolynomial shift_delays_down(const QuasiPolynomial& q, const RationalDelay& h);

// p(s) = sum_i p_i s^{n_i - n_1} with h_i = n_i / N, N the least common
// denominator of all delays, and p_i the ratio of leading coefficients
// when deg q_i = deg q_1 and 0 otherwise. Constant 1 for retarded q.
struct AsymptoticPolynomial {
  std::int64_t base = 1;            // N
  std::vector<std::int64_t> exponents; // n_i - n_1, ascending, only nonzero p_i
  std::vector<double> coefficients;    // matching p_i
  Poly dense() const;                  // highest degree first
};

AsymptoticPolynomial asymptotic_polynomial(const QuasiPolynomial& q);

// Text grammar: terms joined by ';', each "c_n ... c_0 @ h" with h a
// nonnegative decimal or fraction. parse(serialize(q)) == q exactly.
QuasiPolynomial parse_qpoly(const std::string& text);
std::string serialize_qpoly(const QuasiPolynomial& q);

// Human-readable form like "3s+0.5+(2s+7)e^{-1.5s}", `digits`
// significant digits.
std::string to_string(const QuasiPolynomial& q, int digits = 6);

} // namespace tdsfact
