#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "kgws/errors.hpp"
#include "kgws/oracle.hpp"

using namespace kgws;

namespace {

ShootingProblem oscillator() {
    ShootingProblem pr;
    pr.Q = [](double x, double E) { return 2.0 * E - x * x; };
    pr.x_min = -10.0;
    pr.x_max = 10.0;
    pr.E_min = 0.0;
    pr.E_max = 5.0;
    return pr;
}

ShootingProblem sech_well(double shift) {
    ShootingProblem pr;
    pr.Q = [shift](double x, double E) {
        const double c = std::cosh(x - shift);
        const double v = -0.8 / (c * c);
        return (E - v) * (E - v) - 1.0;
    };
    pr.x_min = shift - 25.0;
    pr.x_max = shift + 25.0;
    pr.E_min = -1.0;
    pr.E_max = 1.0;
    return pr;
}

}  // namespace

TEST_CASE("shooter reproduces the harmonic oscillator") {
    const auto levels = shoot_eigenvalues(oscillator(), 4001, 0.3, 200, 1e-13);
    REQUIRE(levels.size() == 5);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(levels[n].E - (n + 0.5)) < 1e-7);
}

TEST_CASE("shooter converges at fourth order") {
    const auto coarse = shoot_eigenvalues(oscillator(), 501, 0.3, 200, 1e-14);
    const auto fine = shoot_eigenvalues(oscillator(), 1001, 0.3, 200, 1e-14);
    REQUIRE(coarse.size() == 5);
    REQUIRE(fine.size() == 5);
    for (int n = 0; n < 5; ++n) {
        const double ratio = std::abs(coarse[n].E - (n + 0.5)) / std::abs(fine[n].E - (n + 0.5));
        INFO("n=" << n << " ratio=" << ratio);
        CHECK(ratio >= 12.0);
    }
}

TEST_CASE("Klein-Gordon well levels do not depend on where the well sits") {
    const auto a = shoot_eigenvalues(sech_well(0.0), 8001, 0.0, 400, 1e-13);
    const auto b = shoot_eigenvalues(sech_well(3.7), 8001, 3.7, 400, 1e-13);
    REQUIRE(!a.empty());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].E - b[i].E) < 1e-10);
}

TEST_CASE("free particle has no bound states") {
    const PotentialParams p(0.0, 1.0, 1.0, 1.0);
    const auto report = shoot_real_eigenvalues(p, GridConfig{});
    CHECK(report.found.empty());
    CHECK(report.ok());
}

TEST_CASE("report bookkeeping and JSON") {
    const PotentialParams p(0.4, 1.0, 1.0, 1.0);
    const auto closed = real_spectrum(p, 10);
    const auto report = shoot_real_eigenvalues(p, GridConfig{}, closed);
    CHECK(report.matched.size() + report.unmatched_closed.size() == closed.size());
    CHECK(report.no_bracket == report.found.empty());
    const auto j = nlohmann::json::parse(to_json(report));
    for (const char* key : {"found", "matched", "unmatched_closed", "unmatched_numeric"}) {
        CHECK(j.contains(key));
        CHECK(j[key].is_array());
    }
    CHECK_THROWS_AS(shoot_real_eigenvalues(p.with_q(-1.0), GridConfig{}), ConditionViolated);
    CHECK_THROWS_AS(shoot_real_eigenvalues(p.with_variant(Variant::PTSymmetric), GridConfig{}),
                    ConfigError);
}

TEST_CASE("eigenfunction residuals and perturbation probe") {
    const PotentialParams p(0.4, 1.0, 1.0, 1.0);
    for (const auto& st : real_spectrum(p, 10)) {
        const auto wf = build_wavefunction(p, st);
        CHECK(residual_check(p, st, wf) < 1e-7);
        CHECK(residual_check(p, st, wf, 0.01 * p.m()) > 1e-3);
    }
    const auto pt = PotentialParams::from_alpha(0.7, 1.0, 1.0, 1.0, Variant::PTSymmetric);
    for (int n = 0; n < 3; ++n) {
        CHECK(schrodinger_check(pt, n) < 1e-7);
        CHECK(schrodinger_check(pt, n, 0.01) > 1e-3);
    }
}

TEST_CASE("constant solution of a trivial problem") {
    const auto prob = schrodinger_problem(0.0, 0.0);
    WavefunctionSpec wf;
    wf.A = 0.0;
    wf.B = 0.0;
    wf.jacobi = {0, 0.0, 0.0};
    CHECK(ode_residual(prob, wf) == 0.0);
}

TEST_CASE("stiffness and grid validation") {
    ShootingProblem pr = oscillator();
    pr.Q = [](double, double) { return -1e9; };
    CHECK_THROWS_AS(shooting_mismatch(pr, 1.0, 2001, 0.0), StiffnessError);
    GridConfig g;
    g.n_points = 4000;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g.n_points = 1001;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g.n_points = 2001;
    CHECK_NOTHROW(g.validate());
}
