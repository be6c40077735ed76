#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kgws/core.hpp"
#include "kgws/errors.hpp"

using namespace kgws;

namespace {

// Potential obtained by inserting the complexified parameters into the
// real-variant expression without any simplification.
Complex naive_potential(const PotentialParams& p, double x) {
    const auto c = p.complexified();
    const Complex t = std::exp(-c.alpha * x);
    return -c.V0 * t / (1.0 + c.q * t);
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("real potential at the origin and far right") {
    const PotentialParams p(5.0, 1.0, 1.0, 1.0);
    CHECK(potential_value(p, 0.0).real() == doctest::Approx(-2.5).epsilon(1e-15));
    CHECK(std::abs(potential_value(p, 60.0)) < 1e-24);
    CHECK(potential_value(p, -60.0).real() == doctest::Approx(-5.0).epsilon(1e-15));
}

TEST_CASE("pt potential at the origin") {
    const PotentialParams p(3.0, 2.0, 1.0, 1.0, Variant::PTSymmetric);
    const Complex v = potential_value(p, 0.0);
    CHECK(v.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("explicit forms agree with substituted parameters") {
    struct Case {
        Variant v;
        double q;
        double lo;
        double hi;
    };
    const Case cases[] = {
        {Variant::RealHermitian, 1.3, -20.0, 20.0},
        {Variant::RealHermitian, 0.4, -20.0, 20.0},
        {Variant::PTSymmetric, 2.0, -20.0, 20.0},
        {Variant::PTSymmetric, -0.6, -20.0, 20.0},
        {Variant::NonPTNonHermitian, 1.7, -15.0, 15.0},
        {Variant::NonPTNonHermitian, -0.8, -15.0, 15.0},
        {Variant::PseudoHermitian, 0.7, -20.0, 20.0},
        {Variant::PseudoHermitian, -1.9, -20.0, 20.0},
    };
    for (const auto& c : cases) {
        const auto p = PotentialParams::from_alpha(0.9, c.q, 1.1, 1.0, c.v);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = c.lo + (c.hi - c.lo) * i / 999.0;
            worst = std::max(worst, rel(potential_value(p, x), naive_potential(p, x)));
        }
        INFO("variant " << to_string(c.v) << " q=" << c.q);
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("pt potential is conjugate under reflection") {
    const auto p = PotentialParams::from_alpha(1.7, 0.6, 0.8, 1.0, Variant::PTSymmetric);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -12.0 + 24.0 * i / 999.0;
        worst = std::max(worst, std::abs(potential_value(p, x) - std::conj(potential_value(p, -x))));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("pseudo potential is conjugate under x -> pi/alpha - x") {
    const auto p = PotentialParams::from_alpha(1.7, 0.6, 0.8, 1.0, Variant::PseudoHermitian);
    const double c = std::numbers::pi / p.alpha();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -12.0 + 24.0 * i / 999.0;
        worst = std::max(worst, std::abs(potential_value(p, x) - std::conj(potential_value(p, c - x))));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("poles are reported with their location") {
    const PotentialParams p(1.0, -2.0, 0.5, 1.0);
    const double x0 = 0.5 * std::log(2.0);
    try {
        potential_value(p, x0);
        FAIL("expected PoleError");
    } catch (const PoleError& e) {
        CHECK(e.location().real() == doctest::Approx(x0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(map_x_to_s(p, x0), PoleError);
    CHECK_NOTHROW(potential_value(p, x0 + 1e-3));

    const PotentialParams pt(1.0, 1.0, 1.0, 1.0, Variant::PTSymmetric);
    try {
        potential_value(pt, std::numbers::pi);
        FAIL("expected PoleError");
    } catch (const PoleError& e) {
        CHECK(e.location().real() == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    }
    const auto poles = pole_locations(pt, -10.0, 10.0);
    CHECK(poles.size() == 4);
}

TEST_CASE("grid generator drops points near poles") {
    const PotentialParams pt(1.0, 1.0, 1.0, 1.0, Variant::PTSymmetric);
    const auto xs = x_grid(pt, 0.0, 2.0 * std::numbers::pi, 3);
    CHECK(xs.size() == 2);
    for (double x : xs) CHECK_NOTHROW(potential_value(pt, x));
}

TEST_CASE("x to s map for the real variant") {
    const PotentialParams p(1.0, 3.0, 1.0, 1.0);
    CHECK(map_x_to_s(p, 0.0).real() == doctest::Approx(0.25).epsilon(1e-15));
    const PotentialParams p1(1.0, 1.0, 1.0, 1.0);
    CHECK(map_x_to_s(p1, -60.0).real() < 1e-25);
    CHECK(map_x_to_s(p1, 60.0).real() == doctest::Approx(1.0).epsilon(1e-15));

    const auto pq = PotentialParams::from_alpha(1.0, 0.7, 1.3, 1.0);
    double prev = -1.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -15.0 + 30.0 * i / 999.0;
        const double s = map_x_to_s(pq, x).real();
        CHECK(s > 0.0);
        CHECK(s < 1.0);
        CHECK(s > prev);
        prev = s;
        const double h = 1e-5;
        const double ds = (map_x_to_s(pq, x + h).real() - map_x_to_s(pq, x - h).real()) / (2 * h);
        const double expected = pq.alpha() * pq.q() * std::exp(-pq.alpha() * x) * s * s;
        CHECK(ds == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("dimensionless combinations") {
    const PotentialParams p(0.45, 1.0, 1.0, 1.0);
    const auto d = dimensionless_kg(p, 0.5);
    CHECK(d.eps2.real() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(d.beta2.real() == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(d.gamma2.real() == doctest::Approx(0.2025).epsilon(1e-15));
    CHECK(std::abs(dimensionless_kg(p, 1.0).eps2) == 0.0);
    CHECK(std::abs(dimensionless_kg(p, 0.0).beta2) == 0.0);
    CHECK_THROWS_AS(dimensionless_kg(p.with_q(0.0), 0.5), ConditionViolated);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(PotentialParams(1.0, 1.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(PotentialParams(1.0, 1.0, -1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(PotentialParams(1.0, 1.0, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(PotentialParams(NAN, 1.0, 1.0, 1.0), ConfigError);
    const PotentialParams p(1.0, 1.0, 4.0, 1.0);
    CHECK(p.alpha() == 0.25);
    CHECK(p.l() == 0);
    CHECK(p.with_R0(3.0).x_from_r(5.0) == 2.0);
    CHECK(nuclear_radius(1.2, 27.0) == doctest::Approx(3.6).epsilon(1e-14));
    CHECK(variant_from_string("pseudo") == Variant::PseudoHermitian);
    CHECK_THROWS_AS(variant_from_string("bogus"), ConfigError);
    CHECK(substitution_rule(Variant::PTSymmetric) == "alpha -> i*alpha");
}
