#pragma once

// 256-bit reference evaluator (MPFR), used only by tests as an
// independent oracle for double-precision evaluation routines.  The
// library core never depends on this header.

#include <mpfr.h>

#include <complex>
#include <cstdint>

#include "tdsfact/lti.hpp"
#include "tdsfact/poly.hpp"
#include "tdsfact/qpoly.hpp"

namespace testsupport {

using tdsfact::Complex;

class MpReal {
 public:
  static constexpr mpfr_prec_t kBits = 256;

  MpReal() { mpfr_init2(v_, kBits); mpfr_set_zero(v_, 1); }
  explicit MpReal(double d) { mpfr_init2(v_, kBits); mpfr_set_d(v_, d, MPFR_RNDN); }
  explicit MpReal(std::int64_t n) {
    mpfr_init2(v_, kBits);
    mpfr_set_si(v_, static_cast<long>(n), MPFR_RNDN);
  }
  MpReal(const MpReal& o) { mpfr_init2(v_, kBits); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal& operator=(const MpReal& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend MpReal operator+(const MpReal& a, const MpReal& b) {
    MpReal r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator-(const MpReal& a, const MpReal& b) {
    MpReal r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator*(const MpReal& a, const MpReal& b) {
    MpReal r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator/(const MpReal& a, const MpReal& b) {
    MpReal r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  MpReal operator-() const {
    MpReal r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  static MpReal exp(const MpReal& a) {
    MpReal r;
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  static MpReal sin(const MpReal& a) {
    MpReal r;
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  static MpReal cos(const MpReal& a) {
    MpReal r;
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

struct MpComplex {
  MpReal re, im;

  static MpComplex from(Complex z) { return {MpReal(z.real()), MpReal(z.imag())}; }
  Complex to_complex() const { return {re.to_double(), im.to_double()}; }

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    MpReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
};

// e^z for complex z.
inline MpComplex mp_exp(const MpComplex& z) {
  MpReal m = MpReal::exp(z.re);
  return {m * MpReal::cos(z.im), m * MpReal::sin(z.im)};
}

// Horner evaluation of a double-coefficient polynomial at 256 bits.
inline MpComplex mp_eval_poly(const tdsfact::Poly& p, const MpComplex& s) {
  MpComplex acc{MpReal(0.0), MpReal(0.0)};
  for (double c : p) acc = acc * s + MpComplex{MpReal(c), MpReal(0.0)};
  return acc;
}

inline Complex mp_eval_qpoly(const tdsfact::QuasiPolynomial& q, Complex s) {
  MpComplex ms = MpComplex::from(s);
  MpComplex acc{MpReal(0.0), MpReal(0.0)};
  for (const auto& t : q.terms) {
    // Delay exactly as a rational: -(num/den) * s.
    MpReal h = MpReal(t.delay.num) / MpReal(t.delay.den);
    MpComplex arg{-(h * ms.re), -(h * ms.im)};
    acc = acc + mp_eval_poly(t.coeffs, ms) * mp_exp(arg);
  }
  return acc.to_complex();
}

inline Complex mp_eval_rational(const tdsfact::RationalFunction& r, Complex s) {
  MpComplex ms = MpComplex::from(s);
  return (mp_eval_poly(r.num, ms) / mp_eval_poly(r.den, ms)).to_complex();
}

inline Complex mp_eval_delaysum(const tdsfact::DelaySum& f, Complex s) {
  MpComplex ms = MpComplex::from(s);
  MpComplex acc{MpReal(0.0), MpReal(0.0)};
  for (const auto& t : f.terms) {
    MpReal h = MpReal(t.delay.num) / MpReal(t.delay.den);
    MpComplex arg{-(h * ms.re), -(h * ms.im)};
    acc = acc + (mp_eval_poly(t.part.num, ms) / mp_eval_poly(t.part.den, ms)) *
                    mp_exp(arg);
  }
  return acc.to_complex();
}

}  // namespace testsupport
