#pragma once

#include <functional>

#include "kgws/core.hpp"

namespace kgws {

struct QuadratureResult {
    Complex value;
    double error_estimate = 0.0;
    /// Integral of |f| (sum of the L1 norms of the real and imaginary parts).
    double l1 = 0.0;
};

/// Integrand on (0, 1) that also receives 1 - s computed without cancellation,
/// so endpoint singularities like s^p (1-s)^r stay resolvable.
using EndpointIntegrand = std::function<Complex(double s, double one_minus_s)>;

/// Double-exponential quadrature over (0, 1). Real and imaginary parts are
/// integrated separately. Throws QuadratureFailure when the estimated
/// relative error exceeds `tol` or the result is not finite.
QuadratureResult integrate_unit_interval(const EndpointIntegrand& f, double tol = 1e-10);

}  // namespace kgws
