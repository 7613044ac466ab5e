#pragma once

#include <string>
#include <vector>

#include "tdsfact/poly.hpp"
#include "tdsfact/qpoly.hpp"

namespace tdsfact {

struct Rectangle {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
};

enum class Finiteness { Finite, Infinite, Indeterminate };

struct FinitenessVerdict {
  Finiteness kind = Finiteness::Indeterminate;
  // Asymptotic-polynomial root magnitudes backing the verdict.
  std::vector<double> magnitudes;
  std::string note;
};

// Roots with multiplicities, conjugate-symmetric for real data, sorted
// by descending real part then ascending imaginary part.
struct RootSet {
  std::vector<Complex> roots;
  std::vector<int> multiplicities;

  int total() const;
  bool empty() const { return roots.empty(); }
  void add(Complex z, int mult);
  // Pair conjugates exactly, zero out negligible imaginary parts, sort.
  void canonicalize(double tol = 1e-7);
};

struct CountOptions {
  double boundary_rel_tol = 1e-11; // |q| below this times term scale flags a boundary root
  int max_perturbations = 8;
  int max_depth = 48;       // per-segment bisection depth for phase tracking
  int initial_segments = 16;
};

struct RhpOptions {
  CountOptions count;
  double newton_residual = 1e-10; // relative residual accepted for a refined root
  double min_cell = 1e-7;         // relative cell size at which a cluster is a multiple root
  double start_height = 16.0;
  double max_height = 65536.0;
};

// All complex roots of a real polynomial: companion-matrix eigenvalues
// with a Newton polish, clustered into multiplicities.
RootSet polynomial_roots(const Poly& p);

// Number of roots (with multiplicity) of q inside the rectangle, by the
// argument principle with adaptive boundary phase tracking. Roots on or
// extremely near the boundary trigger tiny outward perturbations of the
// rectangle; unresolvable cases throw RootfindError.
int count_roots(const QuasiPolynomial& q, const Rectangle& rect,
                const CountOptions& opts = {});

// Lemma-type dichotomy for the closed right half plane:
// retarded -> Finite; neutral -> Finite iff all asymptotic-polynomial
// root magnitudes exceed 1 (band 1e-6 around 1 -> Indeterminate). A
// later term exceeding the leading degree (possible for conjugated
// retarded data) is advanced-type -> Infinite.
FinitenessVerdict finiteness_rhp(const QuasiPolynomial& q);

// Same verdict for the conjugate quasi-polynomial, i.e. the reciprocal
// criterion: computed on conjugate(q) so the degree geometry is honored;
// witness magnitudes are those of q's own asymptotic polynomial.
FinitenessVerdict finiteness_rhp_conjugate(const QuasiPolynomial& q);

struct RhpRootsResult {
  RootSet roots;
  Rectangle box;            // search box that was certified/stabilized
  bool heuristic_top = false; // true when the top extent came from the
                              // growth-until-stable heuristic (neutral case)
};

// All closed-right-half-plane roots. Precondition: finiteness_rhp(q) is
// Finite. Right extent from a rigorous coefficient bound; top extent
// rigorous for retarded inputs and growth-until-stable for neutral ones
// (flagged in the result). Rectangle subdivision plus Newton refinement;
// multiplicities detected by counts over shrinking cells.
RhpRootsResult rhp_roots(const QuasiPolynomial& q, const RhpOptions& opts = {});

// Roots with real part above the cutoff.
RootSet filter_rhp(const RootSet& all, double min_re = 0.0);

} // namespace tdsfact
