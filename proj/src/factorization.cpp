#include "tdsfact/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "tdsfact/errors.hpp"
#include "tdsfact/format.hpp"

namespace tdsfact {

namespace {

constexpr double kAxisTol = 1e-8;

void check_axis(const RootSet& rs) {
  for (const Complex& z : rs.roots) {
    if (std::abs(z.real()) <= kAxisTol) {
      throw FactorizationError(
          "right-half-plane zero " + format::sig(z.real(), 6) + (z.imag() < 0 ? "-" : "+") +
          format::sig(std::abs(z.imag()), 6) +
          "j lies on (or within 1e-8 of) the imaginary axis; "
          "the factorization requires zeros strictly inside the right half plane");
    }
  }
}

void check_symmetric(const RootSet& rs) {
  // Every strictly complex zero needs its conjugate with the same
  // multiplicity.
  const std::size_t n = rs.roots.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex& z = rs.roots[i];
    if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z))) continue;
    bool found = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(rs.roots[j] - std::conj(z)) <= 1e-6 * (1.0 + std::abs(z)) &&
          rs.multiplicities[j] == rs.multiplicities[i]) {
        found = true;
        break;
      }
    }
    if (!found)
      throw FactorizationError("zero set is not conjugate-symmetric: no partner for " +
                               format::sig(z.real(), 6) + "+" + format::sig(z.imag(), 6) + "j");
  }
}

QuasiPolynomial qp_of(const Poly& p) { return QuasiPolynomial::from_poly(p); }

// Warn when the denominator's right-half-plane zeros are also zeros of the
// numerator: the factorization is then not coprime there.
void shared_zero_warnings(const PlantDescription& p, const RootSet& den_zeros,
                          std::vector<std::string>* out) {
  for (const Complex& z : den_zeros.roots) {
    const double scale = evaluate_scale(p.num, z);
    if (std::abs(evaluate(p.num, z)) <= 1e-8 * std::max(scale, 1e-300)) {
      out->push_back("numerator and denominator share a right-half-plane zero near " +
                     format::sig(z.real(), 6) + (z.imag() < 0 ? "-" : "+") +
                     format::sig(std::abs(z.imag()), 6) +
                     "j; the factorization is not coprime");
    }
  }
}

}  // namespace

InnerRational blaschke(const RootSet& zeros) {
  InnerRational out;
  out.zeros = zeros;
  out.zeros.canonicalize();
  if (out.zeros.empty()) return out;
  check_axis(out.zeros);
  check_symmetric(out.zeros);
  std::vector<Complex> expanded;
  for (std::size_t i = 0; i < out.zeros.roots.size(); ++i)
    for (int k = 0; k < out.zeros.multiplicities[i]; ++k)
      expanded.push_back(out.zeros.roots[i]);
  Poly num = poly::from_roots(expanded);
  // Mirror across the imaginary axis: for a conjugate-symmetric zero set,
  // prod (s + conj z_i) = (-1)^n num(-s).
  Poly den = poly::negate_argument(num);
  if (expanded.size() % 2 == 1) den = poly::scale(den, -1.0);
  out.value = RationalFunction::from(num, den);
  return out;
}

QpolyFactors factor_qpoly_direct(const QuasiPolynomial& q, const RhpOptions& opts) {
  FinitenessVerdict v = finiteness_rhp(q);
  if (v.kind != Finiteness::Finite) {
    throw FactorizationError(
        std::string("cannot factor directly: the right-half-plane root count is ") +
        (v.kind == Finiteness::Infinite ? "infinite" : "indeterminate") +
        (v.note.empty() ? "" : " (" + v.note + ")"));
  }
  auto [h1, q0] = extract_common_delay(q);
  RhpRootsResult rr = rhp_roots(q0, opts);
  check_axis(rr.roots);

  QpolyFactors out;
  out.bl = blaschke(rr.roots);
  out.rhp_zeros = out.bl.zeros;
  out.box = rr.box;
  out.heuristic_box = rr.heuristic_top;
  if (!out.bl.value.is_one()) out.inner.push(out.bl.value);
  out.inner.push_delay(h1);
  out.outer.push(QPRatio{q0, qp_of(out.bl.value.num)});
  out.outer.push(RationalFunction::from(out.bl.value.den, Poly{1.0}));
  return out;
}

QpolyFactors factor_qpoly_conjugate(const QuasiPolynomial& q, const RhpOptions& opts) {
  FinitenessVerdict v = finiteness_rhp_conjugate(q);
  if (v.kind != Finiteness::Finite) {
    throw FactorizationError(
        std::string("cannot factor through the conjugate: its right-half-plane root count is ") +
        (v.kind == Finiteness::Infinite ? "infinite" : "indeterminate") +
        (v.note.empty() ? "" : " (" + v.note + ")"));
  }
  QuasiPolynomial qc = conjugate(q);
  RhpRootsResult rr = rhp_roots(qc, opts);
  check_axis(rr.roots);

  QpolyFactors out;
  out.bl = blaschke(rr.roots);
  out.rhp_zeros = out.bl.zeros;
  out.box = rr.box;
  out.heuristic_box = rr.heuristic_top;
  if (!out.bl.value.is_one()) out.inner.push(out.bl.value);
  out.inner.push(QPRatio{q, qc});
  out.outer.push(QPRatio{qc, qp_of(out.bl.value.num)});
  out.outer.push(RationalFunction::from(out.bl.value.den, Poly{1.0}));
  return out;
}

PlantClass classify_plant(const PlantDescription& p) {
  const QTerm& n1 = p.num.terms.front();
  const QTerm& d1 = p.den.terms.front();
  if (poly::degree(n1.coeffs) > poly::degree(d1.coeffs))
    throw FactorizationError(
        "plant is not realizable: the leading numerator term has higher degree "
        "than the leading denominator term");
  if (n1.delay < d1.delay)
    throw FactorizationError(
        "plant is not realizable: the numerator acts earlier than the denominator "
        "(leading delay " + n1.delay.str() + " < " + d1.delay.str() + ")");

  PlantClass c;
  c.den_direct = finiteness_rhp(p.den);
  c.num_direct = finiteness_rhp(p.num);
  if (c.den_direct.kind != Finiteness::Finite) {
    c.kind = PlantCase::NotAdmissible;
    c.indeterminate = c.den_direct.kind == Finiteness::Indeterminate;
    c.reason = c.indeterminate
                   ? "denominator finiteness is indeterminate (asymptotic root magnitude "
                     "within 1e-6 of 1)"
                   : "denominator has infinitely many right-half-plane roots";
    return c;
  }
  if (c.num_direct.kind == Finiteness::Finite) {
    c.kind = PlantCase::DirectNumerator;
    return c;
  }
  c.num_conjugate = finiteness_rhp_conjugate(p.num);
  if (c.num_conjugate.kind == Finiteness::Finite) {
    c.kind = PlantCase::ConjugateNumerator;
    return c;
  }
  c.kind = PlantCase::NotAdmissible;
  c.indeterminate = c.num_direct.kind == Finiteness::Indeterminate ||
                    c.num_conjugate.kind == Finiteness::Indeterminate;
  c.reason = c.indeterminate
                 ? "numerator finiteness is indeterminate (asymptotic root magnitude "
                   "within 1e-6 of 1)"
                 : "numerator and its conjugate both have infinitely many "
                   "right-half-plane roots";
  return c;
}

FactoredPlant factor_plant(const PlantDescription& p, const RhpOptions& opts) {
  PlantClass cls = classify_plant(p);
  if (cls.kind == PlantCase::NotAdmissible)
    throw FactorizationError("plant is not admissible: " + cls.reason);

  FactoredPlant f;
  f.kind = cls.kind;
  auto [hd1, qd0] = extract_common_delay(p.den);
  auto [hn1, qn0] = extract_common_delay(p.num);
  f.net_delay = hn1 - hd1;
  f.num_lead = hn1;
  f.den_lead = hd1;
  f.num_shifted = qn0;
  f.den_shifted = qd0;

  RhpRootsResult rd = rhp_roots(qd0, opts);
  check_axis(rd.roots);
  f.bd = blaschke(rd.roots);
  f.den_rhp_zeros = f.bd.zeros;
  f.heuristic_boxes = rd.heuristic_top;
  if (!f.bd.value.is_one()) f.m_d.push(f.bd.value);

  if (f.kind == PlantCase::DirectNumerator) {
    RhpRootsResult rn = rhp_roots(qn0, opts);
    check_axis(rn.roots);
    f.bn = blaschke(rn.roots);
    f.num_rhp_zeros = f.bn.zeros;
    f.heuristic_boxes = f.heuristic_boxes || rn.heuristic_top;
    if (!f.bn.value.is_one()) f.m_n.push(f.bn.value);
    f.m_n.push_delay(f.net_delay);
    f.outer.push(QPRatio{qn0, qp_of(f.bn.value.num)});
    f.outer.push(QPRatio{qp_of(f.bd.value.num), qd0});
    f.outer.push(RationalFunction::from(f.bn.value.den, f.bd.value.den));
  } else {
    f.num_conj = conjugate(p.num);
    RhpRootsResult rn = rhp_roots(f.num_conj, opts);
    check_axis(rn.roots);
    f.bn = blaschke(rn.roots);
    f.num_rhp_zeros = f.bn.zeros;
    f.heuristic_boxes = f.heuristic_boxes || rn.heuristic_top;
    if (!f.bn.value.is_one()) f.m_n.push(f.bn.value);
    // The all-pass ratio carries the net delay implicitly; the numerator is
    // shifted by the denominator's leading delay so the ratio stays causal.
    f.m_n.push(QPRatio{shift_delays_down(p.num, hd1), f.num_conj});
    f.outer.push(QPRatio{f.num_conj, qp_of(f.bn.value.num)});
    f.outer.push(QPRatio{qp_of(f.bd.value.num), qd0});
    f.outer.push(RationalFunction::from(f.bn.value.den, f.bd.value.den));
  }

  shared_zero_warnings(p, f.den_rhp_zeros, &f.warnings);
  return f;
}

double factorization_residual(const PlantDescription& p, const FactoredPlant& f,
                              int samples) {
  // Deterministic sample points; points too close to a pole or zero of any
  // factor are skipped by a scale test on every quasi-polynomial and
  // polynomial denominator involved.
  std::uint64_t state = 0x6d5a3f91c4e2b807ULL;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(state >> 11) / double(1ULL << 53);
  };
  auto safe = [](const QuasiPolynomial& q, Complex s) {
    return std::abs(evaluate(q, s)) > 1e-5 * std::max(evaluate_scale(q, s), 1e-300);
  };
  double worst = 0.0;
  int accepted = 0, attempts = 0;
  while (accepted < samples && attempts < samples * 20) {
    ++attempts;
    Complex s(-2.0 + 5.0 * next(), -6.0 + 12.0 * next());
    if (!safe(p.den, s) || !safe(f.den_shifted, s)) continue;
    bool ok = std::abs(poly::eval(f.bn.value.num, s)) >
                  1e-5 * std::max(poly::eval_scale(f.bn.value.num, s), 1e-300) &&
              std::abs(poly::eval(f.bd.value.den, s)) >
                  1e-5 * std::max(poly::eval_scale(f.bd.value.den, s), 1e-300);
    if (f.kind == PlantCase::ConjugateNumerator)
      ok = ok && safe(f.num_conj, s);
    if (!ok) continue;
    Complex rhs = evaluate(p.num, s) / evaluate(p.den, s);
    Complex lhs;
    try {
      lhs = f.m_n.eval(s) * f.outer.eval(s) / f.m_d.eval(s);
    } catch (const Error&) {
      continue;
    }
    ++accepted;
    worst = std::max(worst,
                     std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
  }
  if (accepted < samples / 2)
    throw NumericalError("factorization residual: too few usable sample points");
  return worst;
}

std::string describe(const FactoredPlant& f, int digits) {
  std::ostringstream os;
  os << "case: "
     << (f.kind == PlantCase::DirectNumerator ? "direct numerator"
                                              : "conjugate numerator")
     << "\n";
  auto list = [&](const char* label, const RootSet& rs) {
    os << label << " (" << rs.total() << "):";
    if (rs.empty()) os << " none";
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      const Complex& z = rs.roots[i];
      os << " " << format::sig(z.real(), digits);
      if (z.imag() != 0.0)
        os << (z.imag() < 0 ? "-" : "+") << format::sig(std::abs(z.imag()), digits)
           << "j";
      if (rs.multiplicities[i] > 1) os << " (x" << rs.multiplicities[i] << ")";
    }
    os << "\n";
  };
  list(f.kind == PlantCase::DirectNumerator
           ? "numerator right-half-plane zeros"
           : "conjugate-numerator right-half-plane zeros",
       f.num_rhp_zeros);
  list("denominator right-half-plane zeros", f.den_rhp_zeros);
  os << "m_n = " << (f.m_n.is_one() ? "1" : f.m_n.str(digits)) << "\n";
  os << "m_d = " << (f.m_d.is_one() ? "1" : f.m_d.str(digits)) << "\n";
  os << "N_o = " << (f.outer.is_one() ? "1" : f.outer.str(digits)) << "\n";
  if (!f.net_delay.is_zero())
    os << "net delay: " << f.net_delay.str() << "\n";
  if (f.heuristic_boxes)
    os << "note: a root-search top edge came from the growth heuristic\n";
  for (const std::string& w : f.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace tdsfact
