#include "tdsfact/lti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "tdsfact/errors.hpp"
#include "tdsfact/format.hpp"
#include "tdsfact/rootfinder.hpp"

namespace tdsfact {

namespace {

double cpoly_eval_scale(const CPoly& p, Complex s) {
  double acc = 0.0;
  const double r = std::abs(s);
  for (const Complex& c : p) acc = acc * r + std::abs(c);
  return acc;
}

double cpoly_inf_norm(const CPoly& p) {
  double m = 0.0;
  for (const Complex& c : p) m = std::max(m, std::abs(c));
  return m;
}

CPoly cpoly_axpy(CPoly acc, Complex a, const CPoly& x) {
  if (acc.size() < x.size()) acc.insert(acc.begin(), x.size() - acc.size(), Complex{0.0});
  const std::size_t off = acc.size() - x.size();
  for (std::size_t i = 0; i < x.size(); ++i) acc[off + i] += a * x[i];
  return acc;
}

} // namespace

RationalFunction RationalFunction::from(Poly num, Poly den) {
  num = poly::trim(std::move(num));
  den = poly::trim(std::move(den));
  if (poly::is_zero(den)) throw Error("rational function has zero denominator");
  if (poly::is_zero(num)) return RationalFunction{{0.0}, {1.0}};
  const double lead = den.front();
  RationalFunction rf;
  rf.num = poly::scale(num, 1.0 / lead);
  rf.den = poly::scale(den, 1.0 / lead);
  rf.den.front() = 1.0; // exact monic, no rounding residue
  return rf;
}

bool RationalFunction::is_one() const { return num == den; }

Complex RationalFunction::eval(Complex s) const {
  const Complex d = poly::eval(den, s);
  const double scale = poly::eval_scale(den, s);
  if (std::abs(d) <= 1e-8 * std::max(scale, 1e-300))
    throw EvalError("evaluation too close to a pole");
  return poly::eval(num, s) / d;
}

Complex RationalFunction::eval_unguarded(Complex s) const {
  return poly::eval(num, s) / poly::eval(den, s);
}

double RationalFunction::eval_scale(Complex s) const {
  const double d = std::abs(poly::eval(den, s));
  return poly::eval_scale(num, s) / std::max(d, 1e-300);
}

RationalFunction RationalFunction::derivative() const {
  // (n/d)' = (n'd - nd')/d^2
  const Poly a = poly::sub(poly::mul(poly::derivative(num), den),
                           poly::mul(num, poly::derivative(den)));
  return simplified(from(a, poly::mul(den, den)));
}

RationalFunction RationalFunction::reciprocal() const {
  if (is_zero()) throw Error("reciprocal of the zero rational function");
  return from(den, num);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return zero();
  return simplified(from(poly::mul(num, o.num), poly::mul(den, o.den)));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const Poly a = poly::add(poly::mul(num, o.den), poly::mul(o.num, den));
  return simplified(from(a, poly::mul(den, o.den)));
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  if (o.is_zero()) return *this;
  const Poly a = poly::sub(poly::mul(num, o.den), poly::mul(o.num, den));
  return simplified(from(a, poly::mul(den, o.den)));
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  return *this * o.reciprocal();
}

RationalFunction RationalFunction::mul_nocancel(const RationalFunction& a,
                                                const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return zero();
  return from(poly::mul(a.num, b.num), poly::mul(a.den, b.den));
}

std::string RationalFunction::str(int digits) const {
  if (den.size() == 1 && den[0] == 1.0) return format::poly_text(num, digits);
  return "(" + format::poly_text(num, digits) + ")/(" + format::poly_text(den, digits) + ")";
}

RationalFunction simplified(const RationalFunction& rf) {
  if (rf.is_zero()) return RationalFunction::zero();
  if (rf.num_degree() == 0 || rf.den_degree() == 0)
    return RationalFunction::from(rf.num, rf.den);

  RootSet rn = polynomial_roots(rf.num);
  RootSet rd = polynomial_roots(rf.den);
  std::vector<int> nleft = rn.multiplicities;
  std::vector<int> dleft = rd.multiplicities;
  bool cancelled = false;
  for (std::size_t i = 0; i < rn.roots.size(); ++i) {
    const Complex z = rn.roots[i];
    const double tol = 1e-8 * (1.0 + std::abs(z));
    std::size_t best = rd.roots.size();
    double bestd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rd.roots.size(); ++j) {
      if (dleft[j] == 0) continue;
      const double d = std::abs(rd.roots[j] - z);
      if (d < bestd) {
        bestd = d;
        best = j;
      }
    }
    if (best == rd.roots.size() || bestd > tol) continue;
    const int k = std::min(nleft[i], dleft[best]);
    nleft[i] -= k;
    dleft[best] -= k;
    cancelled = true;
  }
  if (!cancelled) return rf;

  std::vector<Complex> keep_n, keep_d;
  double radius = 1.0;
  for (std::size_t i = 0; i < rn.roots.size(); ++i) {
    radius = std::max(radius, std::abs(rn.roots[i]));
    for (int k = 0; k < nleft[i]; ++k) keep_n.push_back(rn.roots[i]);
  }
  for (std::size_t j = 0; j < rd.roots.size(); ++j) {
    radius = std::max(radius, std::abs(rd.roots[j]));
    for (int k = 0; k < dleft[j]; ++k) keep_d.push_back(rd.roots[j]);
  }

  RationalFunction cand;
  try {
    cand = RationalFunction::from(poly::scale(poly::from_roots(keep_n), rf.num.front()),
                                  poly::from_roots(keep_d));
  } catch (const Error&) {
    return rf; // asymmetric leftover set; keep the uncancelled form
  }

  // Accept only if the reduced form reproduces the original on a circle
  // that every root clears by at least `radius`.
  for (double theta : {0.37, 1.23, 2.51, 3.93, 5.41}) {
    const Complex s = 2.0 * radius * Complex{std::cos(theta), std::sin(theta)};
    const Complex a = rf.eval_unguarded(s);
    const Complex b = cand.eval_unguarded(s);
    if (!(std::isfinite(a.real()) && std::isfinite(a.imag()) &&
          std::isfinite(b.real()) && std::isfinite(b.imag())))
      return rf;
    if (std::abs(a - b) > 1e-6 * (std::abs(a) + std::abs(b) + 1e-300)) return rf;
  }
  return cand;
}

const ResidueEntry* ResidueTable::find(Complex z, double tol) const {
  for (const ResidueEntry& e : entries)
    if (std::abs(e.pole - z) <= tol * (1.0 + std::abs(z))) return &e;
  return nullptr;
}

SplitResult partial_fraction_split(const RationalFunction& R,
                                   const std::vector<PoleSpec>& set,
                                   const SplitOptions& opts) {
  SplitResult out;
  if (set.empty()) {
    out.smooth = R;
    out.singular = RationalFunction::zero();
    return out;
  }

  // The prescribed set must be conjugate-symmetric or the singular part
  // cannot be real.
  for (const PoleSpec& a : set) {
    if (std::abs(a.z.imag()) <= 1e-9 * (1.0 + std::abs(a.z))) continue;
    bool matched = false;
    for (const PoleSpec& b : set)
      if (a.order == b.order &&
          std::abs(b.z - std::conj(a.z)) <= 1e-7 * (1.0 + std::abs(a.z))) {
        matched = true;
        break;
      }
    if (!matched) throw Error("prescribed pole set is not conjugate-symmetric");
  }
  for (const PoleSpec& a : set)
    if (a.order < 1) throw Error("prescribed pole order must be positive");

  // Peel every prescribed pole off the denominator, verifying each
  // synthetic-division remainder stays negligible.
  CPoly phi_c = poly::to_cpoly(R.den);
  for (const PoleSpec& spec : set) {
    for (int k = 0; k < spec.order; ++k) {
      Complex rem;
      const double scale = cpoly_eval_scale(phi_c, spec.z);
      CPoly next = poly::deflate(phi_c, spec.z, &rem);
      if (std::abs(rem) > opts.pole_tol * std::max(scale, 1e-300))
        throw NumericalError("prescribed point is not a denominator root of the stated order");
      phi_c = next;
    }
  }
  const double phi_imag = poly::max_imag(phi_c);
  if (phi_imag > 1e-7 * (cpoly_inf_norm(phi_c) + 1.0))
    throw NumericalError("deflated denominator failed to come out real");
  const Poly phi = poly::trim(poly::to_real(phi_c));

  std::vector<Complex> psi_roots;
  for (const PoleSpec& spec : set)
    for (int k = 0; k < spec.order; ++k) psi_roots.push_back(spec.z);
  const Poly psi = poly::from_roots(psi_roots, 1e-7);

  // Principal-part coefficients from the power series of num/g around
  // each pole, g the denominator with that pole fully removed.
  for (const PoleSpec& spec : set) {
    CPoly g = poly::to_cpoly(R.den);
    for (int k = 0; k < spec.order; ++k) g = poly::deflate(g, spec.z);
    const CPoly nser = poly::taylor_shift(poly::to_cpoly(R.num), spec.z);
    const CPoly gser = poly::taylor_shift(g, spec.z);
    if (std::abs(gser[0]) <= opts.pole_tol * std::max(cpoly_eval_scale(g, spec.z), 1e-300))
      throw NumericalError("stated pole order is below the actual multiplicity");
    const CPoly series = poly::series_divide(nser, gser, static_cast<std::size_t>(spec.order));

    ResidueEntry entry;
    entry.pole = spec.z;
    entry.order = spec.order;
    entry.coeffs.resize(static_cast<std::size_t>(spec.order));
    // num/den = (num/g)(s) / (s-z)^m, so series coefficient c_l feeds
    // the 1/(s-z)^{m-l} part.
    for (int k = 1; k <= spec.order; ++k)
      entry.coeffs[static_cast<std::size_t>(k - 1)] =
          series[static_cast<std::size_t>(spec.order - k)];
    out.residues.entries.push_back(std::move(entry));
  }

  // Assemble the singular numerator A with F = A/psi, using exact
  // psi/(s-z)^k quotients.
  CPoly a_acc{Complex{0.0}};
  for (const ResidueEntry& e : out.residues.entries) {
    CPoly base = poly::to_cpoly(psi);
    for (int k = 1; k <= e.order; ++k) {
      base = poly::deflate(base, e.pole);
      a_acc = cpoly_axpy(std::move(a_acc), e.coeffs[static_cast<std::size_t>(k - 1)], base);
    }
  }
  if (poly::max_imag(a_acc) > 1e-7 * (cpoly_inf_norm(a_acc) + 1.0))
    throw NumericalError("singular-part numerator failed to come out real");
  const Poly a_poly = poly::trim(poly::to_real(a_acc));

  // Smooth numerator: (num - A*phi) must be divisible by psi.
  const Poly a_phi = poly::mul(a_poly, phi);
  const poly::DivResult dr = poly::divide(poly::sub(R.num, a_phi), psi);
  const double bscale = poly::inf_norm(R.num) + poly::inf_norm(a_phi) + 1.0;
  if (poly::inf_norm(dr.remainder) > opts.residual_tol * bscale)
    throw NumericalError("partial-fraction reconstruction residual out of tolerance");

  out.singular = RationalFunction::from(a_poly, psi);
  out.smooth = RationalFunction::from(dr.quotient, phi);

  // Independent spot check away from every pole.
  double radius = 1.0;
  for (const PoleSpec& spec : set) radius = std::max(radius, std::abs(spec.z));
  for (const Complex& z : polynomial_roots(R.den).roots) radius = std::max(radius, std::abs(z));
  for (double theta : {0.41, 1.57, 2.9, 4.3}) {
    const Complex s = 2.0 * radius * Complex{std::cos(theta), std::sin(theta)};
    const Complex lhs = R.eval_unguarded(s);
    const Complex rhs = out.smooth.eval_unguarded(s) + out.singular.eval_unguarded(s);
    const double mag = std::abs(lhs) + std::abs(rhs) + 1.0;
    if (std::abs(lhs - rhs) > opts.residual_tol * mag)
      throw NumericalError("partial-fraction spot check failed");
  }
  return out;
}

ResidueTable full_residues(const RationalFunction& R, const SplitOptions& opts) {
  if (R.is_zero() || R.den_degree() == 0) return {};
  const RootSet rs = polynomial_roots(R.den);
  std::vector<PoleSpec> set;
  for (std::size_t i = 0; i < rs.roots.size(); ++i)
    set.push_back({rs.roots[i], rs.multiplicities[i]});
  return partial_fraction_split(R, set, opts).residues;
}

DelaySum DelaySum::make(std::vector<DelayTerm> in, bool allow_improper) {
  std::vector<DelayTerm> kept;
  for (DelayTerm& t : in)
    if (!t.part.is_zero()) kept.push_back(std::move(t));
  std::sort(kept.begin(), kept.end(),
            [](const DelayTerm& a, const DelayTerm& b) { return a.delay < b.delay; });
  DelaySum out;
  out.improper_allowed = allow_improper;
  for (DelayTerm& t : kept) {
    if (!out.terms.empty() && out.terms.back().delay == t.delay) {
      RationalFunction sum = out.terms.back().part + t.part;
      if (sum.is_zero())
        out.terms.pop_back();
      else
        out.terms.back().part = sum;
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  if (!allow_improper)
    for (const DelayTerm& t : out.terms)
      if (!t.part.proper()) throw Error("improper delayed term where a proper one is required");
  return out;
}

DelaySum DelaySum::from_qpoly(const QuasiPolynomial& q) {
  std::vector<DelayTerm> terms;
  for (const QTerm& t : q.terms)
    terms.push_back({RationalFunction::from(t.coeffs, {1.0}), t.delay});
  return make(std::move(terms), true);
}

RationalDelay DelaySum::last_delay() const {
  if (terms.empty()) return RationalDelay{};
  return terms.back().delay;
}

bool DelaySum::all_proper() const {
  for (const DelayTerm& t : terms)
    if (!t.part.proper()) return false;
  return true;
}

bool DelaySum::all_strictly_proper() const {
  for (const DelayTerm& t : terms)
    if (!t.part.strictly_proper()) return false;
  return true;
}

Complex DelaySum::eval(Complex s) const {
  Complex acc{0.0};
  for (const DelayTerm& t : terms)
    acc += t.part.eval(s) * std::exp(-t.delay.value() * s);
  return acc;
}

double DelaySum::eval_scale(Complex s) const {
  double acc = 0.0;
  for (const DelayTerm& t : terms)
    acc += t.part.eval_scale(s) * std::exp(-t.delay.value() * s.real());
  return acc;
}

DelaySum DelaySum::derivative() const {
  // (G e^{-hs})' = (G' - h G) e^{-hs}
  std::vector<DelayTerm> out;
  for (const DelayTerm& t : terms) {
    RationalFunction part =
        t.part.derivative() - RationalFunction::constant(t.delay.value()) * t.part;
    out.push_back({part, t.delay});
  }
  return make(std::move(out), true);
}

DelaySum DelaySum::operator+(const DelaySum& o) const {
  std::vector<DelayTerm> all = terms;
  all.insert(all.end(), o.terms.begin(), o.terms.end());
  return make(std::move(all), improper_allowed || o.improper_allowed);
}

DelaySum DelaySum::times(const RationalFunction& r) const {
  // Exact products only: cancelling inside each term would perturb the
  // terms independently and destroy zeros the sum shares across terms.
  std::vector<DelayTerm> out;
  for (const DelayTerm& t : terms)
    out.push_back({RationalFunction::mul_nocancel(t.part, r), t.delay});
  return make(std::move(out), improper_allowed);
}

DelaySum DelaySum::delayed(const RationalDelay& h) const {
  std::vector<DelayTerm> out;
  for (const DelayTerm& t : terms) out.push_back({t.part, t.delay + h});
  return make(std::move(out), improper_allowed);
}

std::string DelaySum::str(int digits) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << "[" << terms[i].part.str(digits) << "]";
    if (!terms[i].delay.is_zero()) os << " e^{-" << terms[i].delay.str() << " s}";
  }
  return os.str();
}

std::vector<double> impulse_response(const DelaySum& f, const std::vector<double>& t) {
  struct Mode {
    double delay;
    ResidueTable table;
  };
  std::vector<Mode> modes;
  for (const DelayTerm& term : f.terms) {
    if (!term.part.strictly_proper())
      throw Error("impulse response needs strictly proper delayed terms");
    modes.push_back({term.delay.value(), full_residues(term.part)});
  }

  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double acc = 0.0;
    for (const Mode& m : modes) {
      double tau = t[i] - m.delay;
      if (tau < 0.0) {
        if (tau > -1e-12 * (1.0 + std::abs(t[i])))
          tau = 0.0; // the step is closed on the left
        else
          continue;
      }
      Complex sum{0.0};
      for (const ResidueEntry& e : m.table.entries) {
        const Complex ez = std::exp(e.pole * tau);
        double pow_t = 1.0;   // tau^{k-1}
        double factor = 1.0;  // (k-1)!
        for (int k = 1; k <= e.order; ++k) {
          sum += e.coeffs[static_cast<std::size_t>(k - 1)] * (pow_t / factor) * ez;
          pow_t *= tau;
          factor *= static_cast<double>(k);
        }
      }
      acc += sum.real();
    }
    out[i] = acc;
  }
  return out;
}

std::vector<double> time_grid(double t0, double t1, std::size_t n) {
  if (n < 2 || !(t1 > t0)) throw Error("time grid needs t1 > t0 and at least two points");
  std::vector<double> t(n);
  const double step = (t1 - t0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) t[i] = t0 + step * static_cast<double>(i);
  t.back() = t1;
  return t;
}

void RatioExpression::push(RationalFunction f) {
  if (f.is_one()) return;
  if (!factors.empty()) {
    if (auto* last = std::get_if<RationalFunction>(&factors.back())) {
      RationalFunction merged = *last * f;
      if (merged.is_one())
        factors.pop_back();
      else
        *last = merged;
      return;
    }
  }
  factors.emplace_back(std::move(f));
}

void RatioExpression::push(QPRatio f) {
  if (f.num == f.den) return;
  if (f.num.is_polynomial() && f.den.is_polynomial()) {
    push(simplified(RationalFunction::from(f.num.terms[0].coeffs, f.den.terms[0].coeffs)));
    return;
  }
  factors.emplace_back(std::move(f));
}

void RatioExpression::push_delay(RationalDelay h) {
  if (h.is_zero()) return;
  if (!factors.empty()) {
    if (auto* last = std::get_if<RationalDelay>(&factors.back())) {
      *last = *last + h;
      return;
    }
  }
  factors.emplace_back(h);
}

Complex RatioExpression::eval(Complex s) const {
  Complex acc{1.0};
  for (const RatioFactor& f : factors) {
    if (const auto* rf = std::get_if<RationalFunction>(&f)) {
      acc *= rf->eval(s);
    } else if (const auto* qr = std::get_if<QPRatio>(&f)) {
      const Complex d = evaluate(qr->den, s);
      if (std::abs(d) <= 1e-8 * std::max(evaluate_scale(qr->den, s), 1e-300))
        throw EvalError("evaluation too close to a quasi-polynomial zero");
      acc *= evaluate(qr->num, s) / d;
    } else {
      acc *= std::exp(-std::get<RationalDelay>(f).value() * s);
    }
  }
  return acc;
}

double RatioExpression::eval_scale(Complex s) const {
  double acc = 1.0;
  for (const RatioFactor& f : factors) {
    if (const auto* rf = std::get_if<RationalFunction>(&f)) {
      acc *= rf->eval_scale(s);
    } else if (const auto* qr = std::get_if<QPRatio>(&f)) {
      const double d = std::abs(evaluate(qr->den, s));
      acc *= evaluate_scale(qr->num, s) / std::max(d, 1e-300);
    } else {
      acc *= std::exp(-std::get<RationalDelay>(f).value() * s.real());
    }
  }
  return acc;
}

RatioExpression RatioExpression::times(const RatioExpression& o) const {
  RatioExpression out = *this;
  for (const RatioFactor& f : o.factors) {
    if (const auto* rf = std::get_if<RationalFunction>(&f))
      out.push(*rf);
    else if (const auto* qr = std::get_if<QPRatio>(&f))
      out.push(*qr);
    else
      out.push_delay(std::get<RationalDelay>(f));
  }
  return out;
}

std::string RatioExpression::str(int digits) const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " * ";
    if (const auto* rf = std::get_if<RationalFunction>(&factors[i]))
      os << rf->str(digits);
    else if (const auto* qr = std::get_if<QPRatio>(&factors[i]))
      os << "(" << to_string(qr->num, digits) << ")/(" << to_string(qr->den, digits) << ")";
    else
      os << "e^{-" << std::get<RationalDelay>(factors[i]).str() << " s}";
  }
  return os.str();
}

} // namespace tdsfact
