#pragma once

#include <string>
#include <vector>

#include "tdsfact/factorization.hpp"
#include "tdsfact/lti.hpp"
#include "tdsfact/phi.hpp"

namespace tdsfact {

// Mixed-sensitivity weighting pair; w2 may be zero.
struct WeightPair {
  RationalFunction w1 = RationalFunction::one();
  RationalFunction w2 = RationalFunction::zero();
};

// Externally supplied synthesis functions at a chosen performance level.
// All three are rational; the assembly consumes them as data and never
// derives them. gamma_opt is carried through as metadata and must be
// positive.
struct SynthesisData {
  double gamma_opt = 0;
  RationalFunction e;
  RationalFunction f;
  RationalFunction l;
};

// theta = theta_n * theta_d with theta_n biproper and unit-modulus on
// the imaginary axis, carrying exactly the open-right-half-plane zeros
// of theta; theta_d keeps everything else.
struct ThetaSplit {
  RationalFunction theta_n = RationalFunction::one();
  RationalFunction theta_d = RationalFunction::one();
  RootSet carried;  // zeros moved into theta_n
};

// Throws ControllerError when theta is zero, has a zero within 1e-8 of
// the imaginary axis (no biproper carrier exists for it), or the carrier
// division leaves a residual.
ThetaSplit split_theta(const RationalFunction& theta);

struct AssembleOptions {
  double cert_tol = 1e-8;    // finite-support certification tolerance
  double detect_tol = 1e-6;  // cancellation-detection tolerance
  double cert_horizon = 0;   // tail window, 0 = automatic
  bool throw_on_cert_failure = true;
};

// Controller in split form: numerator and denominator each a smooth part
// plus a certified finite-support part,
// C = (h_n + f_n) / (h_d + f_d).
struct ControllerForm {
  PlantCase kind = PlantCase::NotAdmissible;
  DelaySum h_n, h_d;
  FirBlock f_n, f_d;
  ThetaSplit theta;
  double gamma_opt = 0;
  std::vector<std::string> warnings;

  Complex eval(Complex s) const;
  std::string str(int digits = 6) const;
};

// Assembly for the direct-numerator case: the numerator decomposes
// theta_d times the shifted plant denominator against its Blaschke
// factor, the controller denominator decomposes the shifted plant
// numerator times (1 + inner * f * l) against theta_n times the
// numerator Blaschke factor. A failed finite-support certification is
// the designed detector for inconsistent synthesis data and surfaces as
// ControllerError (unless disabled in the options, in which case the
// failed certificate stays in the result).
ControllerForm assemble_c1(const FactoredPlant& fp, const SynthesisData& sd,
                           const AssembleOptions& opts = {});

// Assembly for the conjugate-numerator case; the controller denominator
// decomposes (conjugate numerator + Blaschke * shifted numerator * f * l)
// against theta_n times the conjugate-side Blaschke factor.
ControllerForm assemble_c2(const FactoredPlant& fp, const SynthesisData& sd,
                           const AssembleOptions& opts = {});

// Dispatch on fp.kind.
ControllerForm assemble(const FactoredPlant& fp, const SynthesisData& sd,
                        const AssembleOptions& opts = {});

// Unsplit reference value of the same controller, evaluated directly
// from the factorization and the synthesis functions without any
// decomposition or carrier split. The assembled form agrees with this
// wherever both are defined.
Complex reference_eval(const FactoredPlant& fp, const SynthesisData& sd,
                       Complex s);

// Certification of externally supplied finite-support blocks (typically
// re-entered from a few printed digits) at fixture tolerance over a tail
// window of three supports each.
struct FixtureVerification {
  FirCertification numerator, denominator;
  bool pass = false;
};
FixtureVerification verify_fixture(const DelaySum& f_n, double support_n,
                                   const DelaySum& f_d, double support_d,
                                   double tol = 1e-2);

// Deliberately not provided: this library assembles and verifies
// controllers from given synthesis data; it does not search for the
// optimal performance level. Always throws NotSupportedError.
double compute_gamma_opt(const PlantDescription& p, const WeightPair& w);

}  // namespace tdsfact
