#include "tdsfact/controller.hpp"

#include <cmath>
#include <sstream>

#include "tdsfact/errors.hpp"
#include "tdsfact/format.hpp"
#include "tdsfact/qpoly.hpp"
#include "tdsfact/rootfinder.hpp"

namespace tdsfact {
namespace {

constexpr double kAxisTol = 1e-8;

void check_gamma(const SynthesisData& sd) {
  if (!(sd.gamma_opt > 0))
    throw ControllerError("the performance level must be positive");
}

std::string fir_note(const char* channel, const FirCertification& c) {
  return std::string(channel) + " finite-support certification: " + c.str();
}

}  // namespace

ThetaSplit split_theta(const RationalFunction& theta) {
  if (theta.is_zero())
    throw ControllerError("cannot split a zero synthesis product");
  ThetaSplit out;
  out.theta_d = theta;

  RootSet rs = polynomial_roots(theta.num);
  rs.canonicalize();
  RootSet carried;
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    Complex z = rs.roots[i];
    if (z.real() > kAxisTol) {
      carried.add(z, rs.multiplicities[i]);
    } else if (z.real() >= -kAxisTol) {
      throw ControllerError(
          "synthesis product has a zero on the imaginary axis at " +
          format::sig(z.real(), 3) + (z.imag() < 0 ? "-" : "+") +
          format::sig(std::abs(z.imag()), 6) +
          "j; no biproper carrier exists for it");
    }
  }
  if (carried.empty()) return out;
  carried.canonicalize();

  InnerRational carrier = blaschke(carried);
  out.theta_n = carrier.value;
  out.carried = carried;

  auto dv = poly::divide(theta.num, carrier.value.num);
  double scale = std::max(poly::inf_norm(theta.num), 1e-300);
  if (poly::inf_norm(dv.remainder) > 1e-9 * scale)
    throw ControllerError("carrier division left a residual of " +
                          format::sig(poly::inf_norm(dv.remainder) / scale, 3));
  // The carrier's mirror polynomial routinely divides the denominator
  // (the product fed in here usually contains the inner factor whose
  // mirror it is).  Cancel it by exact division when it does: leaving a
  // matched pair above and below the line makes every later product
  // carry a removable near-cancellation that erodes shared zeros.
  auto dd = poly::divide(theta.den, carrier.value.den);
  double den_scale = std::max(poly::inf_norm(theta.den), 1e-300);
  if (poly::inf_norm(dd.remainder) <= 1e-9 * den_scale) {
    out.theta_d = RationalFunction::from(dv.quotient, dd.quotient);
  } else {
    out.theta_d = RationalFunction::from(
        poly::mul(dv.quotient, carrier.value.den), theta.den);
  }
  return out;
}

Complex ControllerForm::eval(Complex s) const {
  Complex num = h_n.eval(s) + f_n.f.eval(s);
  Complex den = h_d.eval(s) + f_d.f.eval(s);
  return num / den;
}

std::string ControllerForm::str(int digits) const {
  std::ostringstream os;
  os << "case: "
     << (kind == PlantCase::DirectNumerator
             ? "direct numerator"
             : kind == PlantCase::ConjugateNumerator ? "conjugate numerator"
                                                     : "not admissible")
     << "\n";
  os << "gamma: " << format::sig(gamma_opt, digits) << "\n";
  os << "theta_n = " << theta.theta_n.str(digits) << "\n";
  os << "theta_d = " << theta.theta_d.str(digits) << "\n";
  os << "H_n = " << h_n.str(digits) << "\n";
  os << "F_n = " << f_n.f.str(digits) << "\n";
  os << "  " << fir_note("numerator", f_n.certification) << "\n";
  os << "H_d = " << h_d.str(digits) << "\n";
  os << "F_d = " << f_d.f.str(digits) << "\n";
  os << "  " << fir_note("denominator", f_d.certification) << "\n";
  for (const std::string& w : warnings) os << "note: " << w << "\n";
  return os.str();
}

namespace {

// Shared by both cases: numerator channel Phi(theta_d * q_d0, B_d),
// delayed by the denominator's leading delay (which the controller
// inherits physically).
void assemble_numerator(const FactoredPlant& fp, const ThetaSplit& split,
                        const AssembleOptions& opts, ControllerForm* out) {
  DelaySum gn = DelaySum::from_qpoly(fp.den_shifted)
                    .times(split.theta_d)
                    .delayed(fp.den_lead);
  PhiResult pn;
  try {
    pn = phi_decompose(gn, fp.bd.value, opts.cert_tol,
                       opts.throw_on_cert_failure, opts.detect_tol,
                       opts.cert_horizon);
  } catch (const PhiError& e) {
    throw ControllerError(std::string("controller numerator: ") + e.what());
  }
  out->h_n = pn.smooth;
  out->f_n = pn.fir;
  for (const std::string& w : pn.warnings)
    out->warnings.push_back("numerator: " + w);
}

void note_failed_certifications(ControllerForm* out) {
  if (!out->f_n.certification.pass)
    out->warnings.push_back(fir_note("numerator", out->f_n.certification));
  if (!out->f_d.certification.pass)
    out->warnings.push_back(fir_note("denominator", out->f_d.certification));
}

}  // namespace

ControllerForm assemble_c1(const FactoredPlant& fp, const SynthesisData& sd,
                           const AssembleOptions& opts) {
  if (fp.kind != PlantCase::DirectNumerator)
    throw ControllerError(
        "assembly form mismatch: the plant is not in the direct-numerator "
        "case");
  check_gamma(sd);

  ControllerForm out;
  out.kind = fp.kind;
  out.gamma_opt = sd.gamma_opt;

  RationalFunction theta = sd.e * sd.f * fp.bd.value * sd.l;
  out.theta = split_theta(theta);
  assemble_numerator(fp, out.theta, opts, &out);

  // Denominator channel: q_n0 * (1 + B_n e^{-h1 s} f l) against
  // theta_n * B_n, with h1 the numerator's full leading delay.
  RationalFunction fl = sd.f * sd.l;
  DelaySum x = DelaySum::from_qpoly(fp.num_shifted);
  DelaySum gd = x + x.times(fp.bn.value * fl).delayed(fp.num_lead);
  RationalFunction g0d = out.theta.theta_n * fp.bn.value;
  PhiResult pd;
  try {
    pd = phi_decompose(gd, g0d, opts.cert_tol, opts.throw_on_cert_failure,
                       opts.detect_tol, opts.cert_horizon);
  } catch (const PhiError& e) {
    throw ControllerError(std::string("controller denominator: ") + e.what());
  }
  out.h_d = pd.smooth;
  out.f_d = pd.fir;
  for (const std::string& w : pd.warnings)
    out.warnings.push_back("denominator: " + w);
  note_failed_certifications(&out);
  return out;
}

ControllerForm assemble_c2(const FactoredPlant& fp, const SynthesisData& sd,
                           const AssembleOptions& opts) {
  if (fp.kind != PlantCase::ConjugateNumerator)
    throw ControllerError(
        "assembly form mismatch: the plant is not in the conjugate-numerator "
        "case");
  check_gamma(sd);

  ControllerForm out;
  out.kind = fp.kind;
  out.gamma_opt = sd.gamma_opt;

  RationalFunction theta = sd.e * sd.f * fp.bd.value * sd.l;
  out.theta = split_theta(theta);
  assemble_numerator(fp, out.theta, opts, &out);

  // Denominator channel: conjugate numerator plus Blaschke * shifted
  // numerator * f * l, against theta_n times the conjugate-side Blaschke
  // factor.
  RationalFunction fl = sd.f * sd.l;
  DelaySum gd = DelaySum::from_qpoly(fp.num_conj) +
                DelaySum::from_qpoly(fp.num_shifted)
                    .times(fp.bn.value * fl)
                    .delayed(fp.net_delay);
  RationalFunction g0d = out.theta.theta_n * fp.bn.value;
  PhiResult pd;
  try {
    pd = phi_decompose(gd, g0d, opts.cert_tol, opts.throw_on_cert_failure,
                       opts.detect_tol, opts.cert_horizon);
  } catch (const PhiError& e) {
    throw ControllerError(std::string("controller denominator: ") + e.what());
  }
  out.h_d = pd.smooth;
  out.f_d = pd.fir;
  for (const std::string& w : pd.warnings)
    out.warnings.push_back("denominator: " + w);
  note_failed_certifications(&out);
  return out;
}

ControllerForm assemble(const FactoredPlant& fp, const SynthesisData& sd,
                        const AssembleOptions& opts) {
  if (fp.kind == PlantCase::DirectNumerator) return assemble_c1(fp, sd, opts);
  if (fp.kind == PlantCase::ConjugateNumerator)
    return assemble_c2(fp, sd, opts);
  throw ControllerError("plant is not admissible");
}

Complex reference_eval(const FactoredPlant& fp, const SynthesisData& sd,
                       Complex s) {
  Complex theta = sd.e.eval(s) * sd.f.eval(s) * fp.bd.value.eval(s) *
                  sd.l.eval(s);
  Complex fl = sd.f.eval(s) * sd.l.eval(s);
  Complex qd0 = evaluate(fp.den_shifted, s);
  Complex qn0 = evaluate(fp.num_shifted, s);
  Complex bn = fp.bn.value.eval(s);
  Complex bd = fp.bd.value.eval(s);
  Complex dlead = std::exp(-s * fp.den_lead.value());
  if (fp.kind == PlantCase::DirectNumerator) {
    Complex inner = bn * std::exp(-s * fp.num_lead.value());
    return theta * dlead * qd0 * bn / (bd * qn0 * (1.0 + inner * fl));
  }
  if (fp.kind == PlantCase::ConjugateNumerator) {
    Complex qc = evaluate(fp.num_conj, s);
    Complex shifted = qn0 * std::exp(-s * fp.net_delay.value());
    return theta * dlead * qd0 * bn / (bd * (qc + bn * shifted * fl));
  }
  throw ControllerError("plant is not admissible");
}

FixtureVerification verify_fixture(const DelaySum& f_n, double support_n,
                                   const DelaySum& f_d, double support_d,
                                   double tol) {
  FixtureVerification out;
  out.numerator = certify_fir(f_n, support_n, tol, 3.0 * support_n);
  out.denominator = certify_fir(f_d, support_d, tol, 3.0 * support_d);
  out.pass = out.numerator.pass && out.denominator.pass;
  return out;
}

double compute_gamma_opt(const PlantDescription& p, const WeightPair& w) {
  (void)p;
  (void)w;
  throw NotSupportedError(
      "the optimal performance level is not computed here: pick the level "
      "externally and pass it in with the synthesis functions");
}

}  // namespace tdsfact
