#pragma once

#include <string>
#include <vector>

#include "tdsfact/lti.hpp"

namespace tdsfact {

// A common right-half-plane zero of a delayed sum G and a biproper
// rational G0, with its order as a zero of G0's numerator and the number
// of successive derivatives of G verified to vanish there.
struct CancellationPoint {
  Complex z;
  int order = 1;
  int observed = 0;
};

struct CancellationSet {
  std::vector<CancellationPoint> points;
  bool empty() const { return points.empty(); }
  int total_order() const;
};

// Zeros of G0 in the open right half plane at which G also vanishes
// (|G(z)| <= rel_tol * term scale). Throws PhiError when G0 is not
// biproper. An empty result is a legal outcome, not an error.
CancellationSet common_rhp_zeros(const DelaySum& G, const RationalFunction& G0,
                                 double rel_tol = 1e-6);

// Joint behavioral + algebraic finite-support certificate.
struct FirCertification {
  bool pass = false;
  bool behavioral_pass = false;
  bool algebraic_pass = false;
  double tol = 0;
  double support = 0;        // claimed support end
  double horizon = 0;        // length of the tail window checked
  double head_max = 0;       // max |f| on [0, support]
  double tail_max = 0;       // max |f| on (support, support + horizon]
  double tail_coeff_max = 0; // worst relative tail coefficient over poles
  std::string str() const;
};

struct FirBlock {
  DelaySum f;               // strictly proper parts
  double support_end = 0;
  CancellationSet poles;
  FirCertification certification;
  bool is_zero() const { return f.is_zero(); }
};

// Certify that f has (numerically) finite support [0, support_end]:
// behaviorally, 512 impulse-response samples on the head and on the tail
// window, passing iff max tail <= tol * max head; algebraically, for every
// pole z and power l the coefficient of t^l e^{zt} in the t > support_end
// response must vanish relative to the size of its contributions. Both
// checks must pass. horizon = 0 picks max(3*support, 1 / min positive
// real part of the poles). Certification failure is an outcome, never an
// exception.
FirCertification certify_fir(const DelaySum& f, double support_end, double tol,
                             double horizon = 0.0);

// Per-input-term split data: the residues of the singular part at the
// prescribed poles, in input term order.
struct PhiTermInfo {
  RationalDelay delay;
  ResidueTable residues;
};

struct PhiResult {
  DelaySum smooth;          // H
  FirBlock fir;             // F
  CancellationSet cancellations;
  std::vector<PhiTermInfo> terms;
  bool degenerate = false;  // no common zeros: plain termwise division
  std::vector<std::string> warnings;
};

// Decompose G/G0 = H + F where F collects the singular parts at the
// common right-half-plane zeros of G and G0 and is certified to have
// finite support [0, h_v(G)]. With no common zeros the quotient is
// returned unsplit (degenerate flag; right-half-plane zeros of G0 that G
// does not share become poles of H and are reported as warnings). Throws
// PhiError on a split failure, or on certification failure when
// throw_on_cert_failure is set (the certificate text rides in the
// message; with the flag clear the failed certificate is in the result).
// detect_tol is the cancellation-detection tolerance: keep the default
// for machine-precision inputs, loosen to ~1e-3 for data entered from a
// few printed digits.
// cert_horizon is forwarded to certify_fir (0 = automatic).
PhiResult phi_decompose(const DelaySum& G, const RationalFunction& G0,
                        double cert_tol = 1e-8,
                        bool throw_on_cert_failure = true,
                        double detect_tol = 1e-6, double cert_horizon = 0.0);

}  // namespace tdsfact
