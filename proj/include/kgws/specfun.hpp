#pragma once

#include <complex>

#include "kgws/core.hpp"

namespace kgws {

/// Degree and (possibly complex) parameters of P_n^(rho, nu).
struct JacobiParams {
    int n = 0;
    Complex rho = 0.0;
    Complex nu = 0.0;
};

struct Hyp2F1Args {
    Complex a0;
    Complex b0;
    Complex c0;
    Complex z;
};

/// True when z is (numerically) 0, -1, -2, ...
bool is_nonpositive_integer(Complex z);

/// Log-gamma for complex arguments; exp(ln_gamma(z)) == Gamma(z).
/// Lanczos (g = 7) on Re z >= 1/2, reflection below. Throws PoleError at
/// non-positive integers.
Complex ln_gamma(Complex z);

Complex gamma(Complex z);

/// 1/Gamma(z); zero at the poles of Gamma instead of throwing.
Complex rgamma(Complex z);

/// Gamma(x) Gamma(y) / Gamma(x + y). Throws PoleError if any of the three
/// arguments is a pole.
Complex beta(Complex x, Complex y);

/// Gauss hypergeometric 2F1(a0, b0; c0; z).
///
/// Regimes:
///   - terminating series (a0 or b0 a non-positive integer): summed exactly
///   - z == 1: Gauss closed form, requires Re(c0 - a0 - b0) > 0
///   - |z| < 0.9: power series
///   - otherwise: Pfaff transformation z -> z/(z-1), then power series
///
/// Series stop once three consecutive terms fall below 1e-16 of the partial
/// sum; more than 10^4 terms raises DivergenceError. An invalid c0 raises
/// PoleError.
Complex gauss_2f1(const Hyp2F1Args& args);

/// P_n^(rho, nu)(z) as the explicit Pochhammer-product sum in powers of
/// (1 - z)/2, or of (1 + z)/2 when z is nearer -1. Stays accurate when the
/// polynomial is small next to its terms, as happens for large negative
/// parameters.
Complex jacobi_poly(const JacobiParams& p, Complex z);

/// P_n^(rho, nu)(z) by the three-term recurrence. If a recurrence
/// denominator vanishes (degenerate parameter sums) the explicit sum is
/// used instead.
Complex jacobi_recurrence(const JacobiParams& p, Complex z);

/// P_n^(rho, nu)(1 - 2s) as the (1-s)/s double-power sum with explicit
/// q^(n-p) factors. Exact at q = 1; for q != 1 the q factors make it a
/// deformed polynomial (experimental).
Complex jacobi_sum_product_form(const JacobiParams& p, Complex s, Complex q = 1.0);

/// P_n^(rho, nu)(1 - 2s) as the ascending power sum in s with explicit q^r
/// factors. Same q caveat as the product form.
Complex jacobi_sum_ascending_form(const JacobiParams& p, Complex s, Complex q = 1.0);

}  // namespace kgws
