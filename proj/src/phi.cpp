#include "tdsfact/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tdsfact/errors.hpp"
#include "tdsfact/format.hpp"
#include "tdsfact/rootfinder.hpp"

namespace tdsfact {
namespace {

constexpr double kAxisTol = 1e-8;
constexpr double kTiny = 1e-300;

double cpoly_scale(const CPoly& p, Complex z) {
  double az = std::abs(z);
  double pw = 1.0;
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc += std::abs(*it) * pw;
    pw *= az;
  }
  return acc;
}

// Multiplicity of z as a root of p, by repeated deflation with relative
// remainder tests against the current quotient's scale.
int root_multiplicity(const Poly& p, Complex z, double rel_tol) {
  CPoly cur = poly::to_cpoly(poly::trim(p));
  int mult = 0;
  while (cur.size() > 1) {
    Complex rem;
    CPoly next = poly::deflate(cur, z, &rem);
    double scale = cpoly_scale(cur, z);
    if (std::abs(rem) > rel_tol * std::max(scale, kTiny)) break;
    ++mult;
    cur = std::move(next);
  }
  return mult;
}

std::string complex_text(Complex z, int digits = 6) {
  std::ostringstream os;
  os << format::sig(z.real(), digits);
  if (std::abs(z.imag()) > 0) {
    os << (z.imag() < 0 ? "-" : "+") << format::sig(std::abs(z.imag()), digits)
       << "j";
  }
  return os.str();
}

bool near(Complex a, Complex b) {
  return std::abs(a - b) <= 1e-6 * (1.0 + std::abs(b));
}

double factorial_d(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binom_d(int n, int k) {
  double b = 1.0;
  for (int j = 0; j < k; ++j) b = b * (n - j) / (j + 1);
  return b;
}

}  // namespace

int CancellationSet::total_order() const {
  int n = 0;
  for (const auto& p : points) n += p.order;
  return n;
}

CancellationSet common_rhp_zeros(const DelaySum& G, const RationalFunction& G0,
                                 double rel_tol) {
  if (!G0.biproper())
    throw PhiError("cancellation detection needs a biproper reference factor");
  CancellationSet out;
  if (G.is_zero()) return out;

  RootSet rs = polynomial_roots(G0.num);
  rs.canonicalize();
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    Complex z = rs.roots[i];
    if (z.real() <= kAxisTol) continue;
    Complex gz;
    double scale;
    try {
      gz = G.eval(z);
      scale = G.eval_scale(z);
    } catch (const Error&) {
      continue;  // a pole of G cannot be a zero of G
    }
    if (std::abs(gz) > rel_tol * std::max(scale, kTiny)) continue;

    int observed = 1;
    DelaySum d = G;
    for (int k = 1; k < rs.multiplicities[i]; ++k) {
      d = d.derivative();
      Complex dz;
      double ds;
      try {
        dz = d.eval(z);
        ds = d.eval_scale(z);
      } catch (const Error&) {
        break;
      }
      if (std::abs(dz) > rel_tol * std::max(ds, kTiny)) break;
      ++observed;
    }
    out.points.push_back({z, rs.multiplicities[i], observed});
  }
  return out;
}

std::string FirCertification::str() const {
  std::ostringstream os;
  os << (pass ? "pass" : "FAIL") << ": tail max " << format::sig(tail_max, 3)
     << " vs head max " << format::sig(head_max, 3) << " on ("
     << format::sig(support, 6) << ", " << format::sig(support + horizon, 6)
     << "] (" << (behavioral_pass ? "ok" : "FAIL")
     << "); worst relative tail coefficient " << format::sig(tail_coeff_max, 3)
     << " (" << (algebraic_pass ? "ok" : "FAIL") << "); tolerance "
     << format::sig(tol, 3);
  return os.str();
}

FirCertification certify_fir(const DelaySum& f, double support_end, double tol,
                             double horizon) {
  FirCertification c;
  c.tol = tol;
  c.support = std::max(support_end, 0.0);
  if (f.is_zero()) {
    c.behavioral_pass = c.algebraic_pass = c.pass = true;
    c.horizon = horizon > 0 ? horizon : 3.0 * std::max(c.support, 1.0);
    return c;
  }

  // Residue expansions per delayed term, with the minimum unstable real
  // part driving the default horizon.
  struct Contribution {
    Complex pole;
    int order;
    std::vector<Complex> coeffs;
    double h;
  };
  std::vector<Contribution> contribs;
  double min_pos_re = std::numeric_limits<double>::infinity();
  for (const auto& term : f.terms) {
    ResidueTable rt = full_residues(term.part);
    for (const auto& e : rt.entries) {
      contribs.push_back({e.pole, e.order, e.coeffs, term.delay.value()});
      if (e.pole.real() > 1e-9) min_pos_re = std::min(min_pos_re, e.pole.real());
    }
  }

  double T = horizon;
  if (T <= 0) {
    // Three supports of tail, but always at least one e-fold of growth of
    // the slowest unstable mode so short supports still expose leaks.
    T = 3.0 * c.support;
    if (std::isfinite(min_pos_re)) T = std::max(T, 1.0 / min_pos_re);
    if (T <= 0) T = 1.0;
  }
  c.horizon = T;

  // Behavioral: impulse-response magnitude on the claimed support versus
  // the tail window just past it.
  std::vector<double> head_grid =
      c.support > 0 ? time_grid(0.0, c.support, 512) : std::vector<double>{0.0};
  std::vector<double> tail_grid(512);
  for (std::size_t k = 0; k < tail_grid.size(); ++k)
    tail_grid[k] = c.support + T * double(k + 1) / double(tail_grid.size());
  for (double v : impulse_response(f, head_grid))
    c.head_max = std::max(c.head_max, std::abs(v));
  for (double v : impulse_response(f, tail_grid))
    c.tail_max = std::max(c.tail_max, std::abs(v));
  c.behavioral_pass = c.tail_max <= tol * std::max(c.head_max, kTiny);

  // Algebraic: past the last delay the response is sum_z e^{zt} P_z(t);
  // every coefficient of P_z must cancel relative to the size of its
  // contributions. Exponential weights are normalized per pole cluster
  // so only ratios matter.
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<Complex> reps;
  for (std::size_t i = 0; i < contribs.size(); ++i) {
    bool placed = false;
    for (std::size_t cidx = 0; cidx < reps.size() && !placed; ++cidx) {
      if (near(contribs[i].pole, reps[cidx])) {
        clusters[cidx].push_back(i);
        placed = true;
      }
    }
    if (!placed) {
      clusters.push_back({i});
      reps.push_back(contribs[i].pole);
    }
  }
  struct ClusterCoeff {
    double ratio;      // |sum| / scale within the cluster
    double log_scale;  // log of the cluster scale with the shift restored
  };
  std::vector<ClusterCoeff> records;
  for (std::size_t cidx = 0; cidx < clusters.size(); ++cidx) {
    Complex rep = reps[cidx];
    int max_order = 0;
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i : clusters[cidx]) {
      max_order = std::max(max_order, contribs[i].order);
      shift = std::max(shift, -rep.real() * contribs[i].h);
    }
    for (int l = 0; l < max_order; ++l) {
      Complex sum = 0.0;
      double scale = 0.0;
      for (std::size_t i : clusters[cidx]) {
        const Contribution& ct = contribs[i];
        Complex damp =
            std::exp(Complex(-rep.real() * ct.h - shift, -rep.imag() * ct.h));
        for (int k = l + 1; k <= ct.order; ++k) {
          Complex w = ct.coeffs[k - 1] / factorial_d(k - 1) *
                      binom_d(k - 1, l) * std::pow(-ct.h, k - 1 - l) * damp;
          sum += w;
          scale += std::abs(w);
        }
      }
      if (scale <= kTiny) continue;
      records.push_back({std::abs(sum) / scale, std::log(scale) + shift});
    }
  }
  // A coefficient leaks past the support in proportion to (its imbalance
  // within the cluster) x (the cluster's weight among all clusters).  Both
  // factors are at most one, so their minimum bounds the leak: a cluster
  // whose whole content sits below tolerance relative to the dominant one
  // cannot leak above tolerance no matter how unbalanced its entries are.
  // That keeps vanishing residues at removable points from drowning the
  // verdict in their own rounding noise.
  double grand_log = -std::numeric_limits<double>::infinity();
  for (const ClusterCoeff& r : records) grand_log = std::max(grand_log, r.log_scale);
  for (const ClusterCoeff& r : records) {
    double weight = std::exp(r.log_scale - grand_log);
    c.tail_coeff_max = std::max(c.tail_coeff_max, std::min(r.ratio, weight));
  }
  c.algebraic_pass = c.tail_coeff_max <= tol;
  c.pass = c.behavioral_pass && c.algebraic_pass;
  return c;
}

PhiResult phi_decompose(const DelaySum& G, const RationalFunction& G0,
                        double cert_tol, bool throw_on_cert_failure,
                        double detect_tol, double cert_horizon) {
  if (G0.is_zero()) throw PhiError("reference factor is zero");
  PhiResult out;
  out.cancellations = common_rhp_zeros(G, G0, detect_tol);
  if (G.is_zero()) {
    out.degenerate = true;
    out.fir.certification.pass = true;
    out.fir.certification.behavioral_pass = true;
    out.fir.certification.algebraic_pass = true;
    out.fir.certification.tol = cert_tol;
    return out;
  }

  // Right-half-plane zeros of G0 the delayed sum does not share survive
  // as unstable poles of the smooth part; surface them.
  {
    RootSet rs = polynomial_roots(G0.num);
    rs.canonicalize();
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      Complex z = rs.roots[i];
      if (z.real() <= kAxisTol) continue;
      bool cancelled = false;
      for (const auto& p : out.cancellations.points)
        if (near(z, p.z)) cancelled = true;
      if (!cancelled)
        out.warnings.push_back("unstable pole of the smooth part at " +
                               complex_text(z) +
                               ": not a zero of the delayed sum");
    }
  }

  const RationalFunction inv_g0 = G0.reciprocal();
  out.fir.support_end = G.last_delay().value();

  if (out.cancellations.empty()) {
    out.degenerate = true;
    std::vector<DelayTerm> hterms;
    for (const auto& t : G.terms) {
      hterms.push_back(
          {simplified(RationalFunction::mul_nocancel(t.part, inv_g0)), t.delay});
      out.terms.push_back({t.delay, ResidueTable{}});
    }
    out.smooth = DelaySum::make(std::move(hterms), true);
    out.fir.certification =
        certify_fir(out.fir.f, out.fir.support_end, cert_tol, cert_horizon);
    return out;
  }

  std::vector<DelayTerm> hterms;
  std::vector<DelayTerm> fterms;
  for (const auto& t : G.terms) {
    RationalFunction R = RationalFunction::mul_nocancel(t.part, inv_g0);
    std::vector<PoleSpec> set;
    for (const auto& p : out.cancellations.points) {
      int m = root_multiplicity(R.den, p.z, 1e-7);
      set.push_back({p.z, m > 0 ? m : p.order});
    }
    SplitResult sr;
    try {
      sr = partial_fraction_split(R, set);
    } catch (const Error& e) {
      throw PhiError("split failed for the term at delay " + t.delay.str() +
                     ": " + e.what());
    }
    hterms.push_back({sr.smooth, t.delay});
    fterms.push_back({sr.singular, t.delay});
    out.terms.push_back({t.delay, sr.residues});
  }
  out.smooth = DelaySum::make(std::move(hterms), true);
  out.fir.f = DelaySum::make(std::move(fterms), false);
  out.fir.poles = out.cancellations;
  out.fir.certification =
      certify_fir(out.fir.f, out.fir.support_end, cert_tol, cert_horizon);
  if (!out.fir.certification.pass && throw_on_cert_failure)
    throw PhiError("finite-support certification failed: " +
                   out.fir.certification.str());
  return out;
}

}  // namespace tdsfact
