#include "kgws/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

// For finite limits [0, 1] the second callback argument is (0 - s) on the left
// half and (1 - s) on the right half.
double complement(double s, double xc) { return xc > 0.0 ? xc : 1.0 - s; }

}  // namespace

QuadratureResult integrate_unit_interval(const EndpointIntegrand& f, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double err_re = 0.0;
    double err_im = 0.0;
    double l1_re = 0.0;
    double l1_im = 0.0;
    // tanh-sinh converges quadratically; asking for a tighter target keeps the
    // reported estimate safely under `tol`.
    const double tol_target = std::max(1e-2 * tol, 4.0 * std::numeric_limits<double>::epsilon());
    double re = 0.0;
    double im = 0.0;
    try {
        re = integrator.integrate(
            [&](double s, double xc) { return f(s, complement(s, xc)).real(); }, 0.0, 1.0,
            tol_target, &err_re, &l1_re);
        im = integrator.integrate(
            [&](double s, double xc) { return f(s, complement(s, xc)).imag(); }, 0.0, 1.0,
            tol_target, &err_im, &l1_im);
    } catch (const std::exception& e) {
        throw QuadratureFailure(std::string("quadrature failed: ") + e.what(),
                                std::numeric_limits<double>::infinity());
    }
    const Complex value(re, im);
    const double err = std::hypot(err_re, err_im);
    if (!std::isfinite(re) || !std::isfinite(im) || !std::isfinite(err)) {
        throw QuadratureFailure("quadrature produced a non-finite value", err);
    }
    const double scale = std::max(std::abs(value), 1e-300);
    if (err > tol * std::max(scale, l1_re + l1_im)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "quadrature error estimate %.3g above tolerance %.3g", err,
                      tol);
        throw QuadratureFailure(buf, err);
    }
    return {value, err, l1_re + l1_im};
}

}  // namespace kgws
