#include "tdsfact/rootfinder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdsfact/errors.hpp"

namespace tdsfact {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

int RootSet::total() const {
  int n = 0;
  for (int m : multiplicities) n += m;
  return n;
}

void RootSet::add(Complex z, int mult) {
  roots.push_back(z);
  multiplicities.push_back(mult);
}

void RootSet::canonicalize(double tol) {
  std::vector<Complex> zs;
  std::vector<int> ms;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex z = roots[i];
    const double local = tol * (1.0 + std::abs(z));
    if (std::abs(z.imag()) <= local) {
      zs.push_back(Complex(z.real(), 0.0));
      ms.push_back(multiplicities[i]);
      used[i] = true;
      continue;
    }
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
    if (partner != roots.size() && best <= 1e4 * local &&
        multiplicities[partner] == multiplicities[i]) {
      const Complex avg = 0.5 * (z + std::conj(roots[partner]));
      const Complex lower(avg.real(), -std::abs(avg.imag()));
      zs.push_back(lower);
      ms.push_back(multiplicities[i]);
      zs.push_back(std::conj(lower));
      ms.push_back(multiplicities[i]);
      used[i] = used[partner] = true;
    } else {
      // leave as is; caller may reject asymmetric data downstream
      zs.push_back(z);
      ms.push_back(multiplicities[i]);
      used[i] = true;
    }
  }
  std::vector<std::size_t> order(zs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (zs[a].real() != zs[b].real()) return zs[a].real() > zs[b].real();
    return zs[a].imag() < zs[b].imag();
  });
  roots.clear();
  multiplicities.clear();
  for (std::size_t i : order) {
    roots.push_back(zs[i]);
    multiplicities.push_back(ms[i]);
  }
}

RootSet filter_rhp(const RootSet& all, double min_re) {
  RootSet out;
  for (std::size_t i = 0; i < all.roots.size(); ++i)
    if (all.roots[i].real() >= min_re) out.add(all.roots[i], all.multiplicities[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial roots: companion matrix eigenvalues + Newton polish.

namespace {

Complex poly_newton(const Poly& p, const Poly& dp, Complex z, int mult, int iters) {
  for (int k = 0; k < iters; ++k) {
    const Complex f = poly::eval(p, z);
    const Complex fp = poly::eval(dp, z);
    if (std::abs(fp) == 0.0) break;
    const Complex step = static_cast<double>(mult) * f / fp;
    z -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

} // namespace

RootSet polynomial_roots(const Poly& p_in) {
  const Poly p = poly::trim(p_in);
  RootSet out;
  const int n = poly::degree(p);
  if (n <= 0) return out;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    companion(0, i) = -p[static_cast<std::size_t>(i + 1)] / p[0];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;

  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  if (solver.info() != Eigen::Success)
    throw RootfindError("companion-matrix eigenvalue computation failed");

  const Poly dp = poly::derivative(p);
  std::vector<Complex> raw;
  for (int i = 0; i < n; ++i) {
    Complex z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    raw.push_back(poly_newton(p, dp, z, 1, 2));
  }

  // cluster into multiplicities
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(raw[j] - raw[i]) <= 5e-6 * (1.0 + std::abs(raw[i]))) {
        cluster.push_back(j);
        used[j] = true;
      }
    }
    Complex center = 0.0;
    for (std::size_t j : cluster) center += raw[j];
    center /= static_cast<double>(cluster.size());
    center = poly_newton(p, dp, center, static_cast<int>(cluster.size()), 6);
    out.add(center, static_cast<int>(cluster.size()));
  }
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------
// Argument-principle counting.

namespace {

struct BoundarySignal {};

struct PhaseWalk {
  const QuasiPolynomial& q;
  const CountOptions& opts;
  double total = 0.0;

  Complex value(Complex s) const {
    const Complex f = evaluate(q, s);
    const double scale = evaluate_scale(q, s);
    if (std::abs(f) <= opts.boundary_rel_tol * scale) throw BoundarySignal{};
    return f;
  }

  // Always confirms through the midpoint: a half is accepted only when
  // its own increment is below pi/2, so a fast near-2pi swing cannot
  // alias to a small measured step.
  void segment(Complex a, Complex b, Complex fa, Complex fb, int depth) {
    if (depth <= 0)
      throw RootfindError("phase tracking failed to resolve a boundary segment");
    const Complex m = 0.5 * (a + b);
    const Complex fm = value(m);
    const double d1 = std::arg(fm / fa);
    const double d2 = std::arg(fb / fm);
    if (std::abs(d1) < 0.5 * kPi)
      total += d1;
    else
      segment(a, m, fa, fm, depth - 1);
    if (std::abs(d2) < 0.5 * kPi)
      total += d2;
    else
      segment(m, b, fm, fb, depth - 1);
  }

  void edge(Complex a, Complex b) {
    // Initial sampling no coarser than ~1 radian of the fastest term
    // rotation e^{-h_v s} along the edge.
    const double len = std::abs(b - a);
    const double hv = q.hv().value();
    int n = std::max(1, opts.initial_segments);
    if (hv > 0.0 && len * hv > static_cast<double>(n))
      n = static_cast<int>(std::ceil(len * hv));
    Complex prev = a;
    Complex fprev = value(a);
    for (int i = 1; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      const Complex cur = a + t * (b - a);
      const Complex fcur = value(cur);
      segment(prev, cur, fprev, fcur, opts.max_depth);
      prev = cur;
      fprev = fcur;
    }
  }
};

int wind_rectangle(const QuasiPolynomial& q, const Rectangle& r, const CountOptions& opts) {
  PhaseWalk walk{q, opts};
  const Complex c0(r.re_min, r.im_min), c1(r.re_max, r.im_min);
  const Complex c2(r.re_max, r.im_max), c3(r.re_min, r.im_max);
  walk.edge(c0, c1);
  walk.edge(c1, c2);
  walk.edge(c2, c3);
  walk.edge(c3, c0);
  const double turns = walk.total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.25)
    throw RootfindError("winding number did not converge to an integer");
  if (rounded < -0.5)
    throw RootfindError("negative winding number; numerical breakdown on the boundary");
  return static_cast<int>(rounded);
}

Rectangle perturbed(const Rectangle& r, int attempt) {
  if (attempt == 0) return r;
  const double scale = std::max({r.width(), r.height(), 1.0});
  // outward-only growth, irrational steps so retries land elsewhere
  const double d = scale * 3.7e-7 * attempt * (1.0 + 0.61803398875 * attempt);
  return Rectangle{r.re_min - d, r.re_max + d, r.im_min - d, r.im_max + d};
}

} // namespace

int count_roots(const QuasiPolynomial& q, const Rectangle& rect, const CountOptions& opts) {
  if (rect.width() <= 0 || rect.height() <= 0)
    throw RootfindError("count_roots requires a rectangle with positive area");
  for (int attempt = 0; attempt <= opts.max_perturbations; ++attempt) {
    try {
      return wind_rectangle(q, perturbed(rect, attempt), opts);
    } catch (const BoundarySignal&) {
      continue;
    }
  }
  throw RootfindError("boundary-root condition unresolvable after " +
                      std::to_string(opts.max_perturbations) + " perturbations");
}

// ---------------------------------------------------------------------------
// Finiteness verdicts.

namespace {

std::vector<double> magnitudes_of(const AsymptoticPolynomial& ap) {
  const RootSet rs = polynomial_roots(ap.dense());
  std::vector<double> mags;
  for (std::size_t i = 0; i < rs.roots.size(); ++i)
    for (int k = 0; k < rs.multiplicities[i]; ++k) mags.push_back(std::abs(rs.roots[i]));
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return mags;
}

constexpr double kUnitBand = 1e-6;

} // namespace

FinitenessVerdict finiteness_rhp(const QuasiPolynomial& q) {
  FinitenessVerdict v;
  if (!q.is_standard()) {
    v.kind = Finiteness::Infinite;
    v.magnitudes = magnitudes_of(asymptotic_polynomial(q));
    v.note = "a later term exceeds the leading degree (advanced type)";
    return v;
  }
  if (classify(q) == KindTag::Retarded) {
    v.kind = Finiteness::Finite;
    v.note = "retarded";
    return v;
  }
  v.magnitudes = magnitudes_of(asymptotic_polynomial(q));
  bool all_above = true, in_band = false;
  for (double m : v.magnitudes) {
    if (std::abs(m - 1.0) <= kUnitBand) in_band = true;
    if (m <= 1.0) all_above = false;
  }
  if (in_band) {
    v.kind = Finiteness::Indeterminate;
    v.note = "asymptotic root magnitude within tolerance band of 1";
  } else if (all_above) {
    v.kind = Finiteness::Finite;
    v.note = "neutral, all asymptotic chains strictly left of the axis";
  } else {
    v.kind = Finiteness::Infinite;
    v.note = "neutral, an asymptotic chain lies in the right half plane";
  }
  return v;
}

FinitenessVerdict finiteness_rhp_conjugate(const QuasiPolynomial& q) {
  FinitenessVerdict v = finiteness_rhp(conjugate(q));
  // Witness from q's own asymptotic polynomial (reciprocal criterion).
  v.magnitudes = magnitudes_of(asymptotic_polynomial(q));
  if (q.size() == 1) v.note = "conjugate is a polynomial";
  return v;
}

// ---------------------------------------------------------------------------
// Right-half-plane root location.

namespace {

// Smallest R >= 1 with sum_{i>=2} A_i e^{-(h_i-h_1)R} <= slack, where
// A_i is the coefficient 1-norm of term i. Also at least rho0, the
// radius beyond which the leading polynomial dominates its own tail.
double right_extent(const QuasiPolynomial& q) {
  const Poly& lead = q.terms.front().coeffs;
  const double lead1 = std::abs(lead.front());
  double tail1 = 0.0;
  for (std::size_t j = 1; j < lead.size(); ++j) tail1 += std::abs(lead[j]);
  const double rho0 = std::max(1.0, 2.0 * tail1 / lead1);
  const double h1 = q.terms.front().delay.value();

  double R = std::max(1.0, rho0);
  for (int iter = 0; iter < 64; ++iter) {
    double sum = 0.0;
    for (std::size_t i = 1; i < q.terms.size(); ++i) {
      double Ai = 0.0;
      for (double c : q.terms[i].coeffs) Ai += std::abs(c);
      sum += Ai * std::exp(-(q.terms[i].delay.value() - h1) * R);
    }
    if (sum <= 0.5 * lead1) return R;
    R *= 2.0;
  }
  throw RootfindError("failed to certify a right extent for the search box");
}

// For retarded q: height M beyond which the leading term dominates on
// the whole strip Re in [0, R]. Rigorous counterpart of the growth
// heuristic used for neutral inputs.
double retarded_height(const QuasiPolynomial& q, double start) {
  const Poly& lead = q.terms.front().coeffs;
  const double lead1 = std::abs(lead.front());
  const int d1 = poly::degree(lead);
  double tail1 = 0.0;
  for (std::size_t j = 1; j < lead.size(); ++j) tail1 += std::abs(lead[j]);
  const double rho0 = std::max(1.0, 2.0 * tail1 / lead1);

  double M = std::max(start, rho0);
  for (int iter = 0; iter < 64; ++iter) {
    double sum = 0.0;
    for (std::size_t i = 1; i < q.terms.size(); ++i) {
      double Ai = 0.0;
      for (double c : q.terms[i].coeffs) Ai += std::abs(c);
      const int di = poly::degree(q.terms[i].coeffs);
      sum += Ai * std::pow(M, di - d1);
    }
    if (sum <= 0.5 * lead1) return M;
    M *= 2.0;
  }
  throw RootfindError("failed to certify a top extent for the search box");
}

struct Located {
  Complex z;
  int mult;
};

Complex qp_newton(const QuasiPolynomial& q, Complex z, int mult, double* rel_residual) {
  Complex best = z;
  double best_res = std::abs(evaluate(q, z)) / std::max(evaluate_scale(q, z), 1e-300);
  for (int k = 0; k < 80; ++k) {
    const Complex f = evaluate(q, z);
    const Complex fp = evaluate_derivative(q, z);
    if (std::abs(fp) == 0.0) break;
    const Complex step = static_cast<double>(mult) * f / fp;
    z -= step;
    const double res = std::abs(evaluate(q, z)) / std::max(evaluate_scale(q, z), 1e-300);
    if (res < best_res) {
      best_res = res;
      best = z;
    }
    if (res <= 1e-14 || std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  if (rel_residual) *rel_residual = best_res;
  return best;
}

void subdivide(const QuasiPolynomial& q, const Rectangle& r, int count,
               const RhpOptions& opts, double scale, std::vector<Located>& out,
               int depth) {
  if (count == 0) return;
  if (depth > 96) throw RootfindError("rectangle subdivision exceeded depth limit");

  const double diam = std::max(r.width(), r.height());
  const Complex center(0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max));

  if (count == 1 || diam <= opts.min_cell * scale) {
    double res = 0.0;
    const Complex z = qp_newton(q, center, count, &res);
    // The root must lie genuinely inside this cell; a refinement that
    // drifted into a neighbour (or out of the half plane entirely) is
    // rejected and the cell split further instead.
    const double slack = 1e-9 * scale;
    const bool inside = z.real() >= r.re_min - slack && z.real() <= r.re_max + slack &&
                        z.imag() >= r.im_min - slack && z.imag() <= r.im_max + slack;
    if (res <= opts.newton_residual && inside) {
      out.push_back({z, count});
      return;
    }
    if (diam <= opts.min_cell * scale)
      throw RootfindError("refinement failed inside a minimal cell");
  }

  // split the longer side; nudge the split fraction if a root sits on it
  const bool vertical = r.height() >= r.width();
  const double fractions[] = {0.5, 0.468013, 0.539173, 0.432842, 0.575931};
  for (double f : fractions) {
    Rectangle a = r, b = r;
    if (vertical) {
      const double cut = r.im_min + f * r.height();
      a.im_max = cut;
      b.im_min = cut;
    } else {
      const double cut = r.re_min + f * r.width();
      a.re_max = cut;
      b.re_min = cut;
    }
    int ca, cb;
    try {
      ca = count_roots(q, a, opts.count);
      cb = count_roots(q, b, opts.count);
    } catch (const RootfindError&) {
      continue;
    }
    if (ca + cb != count) continue;
    subdivide(q, a, ca, opts, scale, out, depth + 1);
    subdivide(q, b, cb, opts, scale, out, depth + 1);
    return;
  }
  throw RootfindError("subdivision could not split a cell consistently");
}

} // namespace

RhpRootsResult rhp_roots(const QuasiPolynomial& q, const RhpOptions& opts) {
  const FinitenessVerdict verdict = finiteness_rhp(q);
  if (verdict.kind != Finiteness::Finite)
    throw RootfindError("rhp_roots requires a Finite verdict (" + verdict.note + ")");

  RhpRootsResult result;

  if (q.size() == 1) {
    // polynomial times a pure delay; roots are the polynomial's
    const RootSet all = polynomial_roots(q.terms.front().coeffs);
    for (std::size_t i = 0; i < all.roots.size(); ++i)
      if (all.roots[i].real() >= -1e-10 * (1.0 + std::abs(all.roots[i])))
        result.roots.add(all.roots[i], all.multiplicities[i]);
    result.roots.canonicalize();
    return result;
  }

  const bool neutral = classify(q) == KindTag::Neutral;
  const double R = right_extent(q);

  double M = std::max(opts.start_height, 1.0);
  int count = -1;
  if (!neutral) {
    M = retarded_height(q, M);
    count = count_roots(q, Rectangle{0.0, R, -M, M}, opts.count);
  } else {
    result.heuristic_top = true;
    int stable = 0;
    int prev = -1;
    while (M <= opts.max_height) {
      const int c = count_roots(q, Rectangle{0.0, R, -M, M}, opts.count);
      if (c == prev) {
        if (++stable >= 2) {
          count = c;
          break;
        }
      } else {
        stable = 0;
      }
      prev = c;
      M *= 2.0;
    }
    if (count < 0)
      throw RootfindError("top extent did not stabilize below the height cap");
  }

  result.box = Rectangle{0.0, R, -M, M};

  std::vector<Located> found;
  const double scale = std::max({R, M, 1.0});
  subdivide(q, result.box, count, opts, scale, found, 0);

  for (const Located& l : found) result.roots.add(l.z, l.mult);
  result.roots.canonicalize();
  if (result.roots.total() != count)
    throw RootfindError("located roots do not account for the counted total");
  return result;
}

} // namespace tdsfact
