#pragma once

#include <complex>
#include <vector>

namespace tdsfact {

using Complex = std::complex<double>;

// Real polynomial as coefficient list, highest degree first. The empty
// vector is not a valid polynomial; the zero polynomial is {0}.
using Poly = std::vector<double>;
using CPoly = std::vector<Complex>;

namespace poly {

// Removes leading coefficients that are exactly zero, keeping at least one.
Poly trim(Poly p);
bool is_zero(const Poly& p);
int degree(const Poly& p); // -1 for the zero polynomial

double eval(const Poly& p, double s);
Complex eval(const Poly& p, Complex s);
Complex eval(const CPoly& p, Complex s);

// Magnitude scale of the evaluation, sum of |c_j||s|^j. Used for
// relative residual tests.
double eval_scale(const Poly& p, Complex s);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, double k);
Poly derivative(const Poly& p);

// p(-s), sign-adjusted per coefficient.
Poly negate_argument(const Poly& p);

// Long division a = q*b + r. Throws on zero divisor.
struct DivResult {
  Poly quotient;
  Poly remainder;
};
DivResult divide(const Poly& a, const Poly& b);

// Synthetic division of a complex-coefficient polynomial by (s - z).
// Returns the quotient; *remainder receives p(z) if non-null.
CPoly deflate(const CPoly& p, Complex z, Complex* remainder = nullptr);

// Coefficients of p(z0 + u) as a polynomial in u (lowest order first!).
// Standard repeated-synthetic-division Taylor shift.
CPoly taylor_shift(const CPoly& p, Complex z0);

CPoly to_cpoly(const Poly& p);
// Discards imaginary parts; caller checks they are negligible first.
Poly to_real(const CPoly& p);
double max_imag(const CPoly& p);

// Truncated power-series division a/b to `count` terms; inputs are
// lowest-order-first series, b[0] != 0.
CPoly series_divide(const CPoly& a, const CPoly& b, std::size_t count);

// Monic real polynomial with the given conjugate-symmetric root set.
Poly from_roots(const std::vector<Complex>& roots, double pair_tol = 1e-9);

double inf_norm(const Poly& p);

} // namespace poly
} // namespace tdsfact
