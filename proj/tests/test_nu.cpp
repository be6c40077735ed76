#include <doctest.h>

#include <cmath>

#include "kgws/core.hpp"
#include "kgws/errors.hpp"
#include "kgws/nu.hpp"
#include "kgws/spectra.hpp"
#include "kgws/wavefn.hpp"

using namespace kgws;

namespace {

const NuBranch* find_branch(const std::vector<NuBranch>& all, Complex pi0, Complex pi1) {
    for (const auto& b : all) {
        if (std::abs(b.pi(0.0) - pi0) < 1e-12 && std::abs(b.pi(1.0) - pi1) < 1e-12) return &b;
    }
    return nullptr;
}

DimensionlessKG dims(Complex eps2, Complex beta2, Complex gamma2) {
    DimensionlessKG d;
    d.eps2 = eps2;
    d.beta2 = beta2;
    d.gamma2 = gamma2;
    return d;
}

}  // namespace

TEST_CASE("k roots of the Woods-Saxon problem") {
    const double eps2 = 0.75, beta2 = 0.45, gamma2 = 0.2025;
    const auto prob = ws_problem(dims(eps2, beta2, gamma2));
    const double eps = std::sqrt(eps2);
    const double b = std::sqrt(eps2 - beta2 - gamma2);
    const auto ks = candidate_ks(prob);
    REQUIRE(ks.size() == 2);
    const double k1 = beta2 - 2 * eps2 + 2 * eps * b;
    const double k2 = beta2 - 2 * eps2 - 2 * eps * b;
    const bool direct = std::abs(ks[0] - k1) < 1e-12 && std::abs(ks[1] - k2) < 1e-12;
    const bool swapped = std::abs(ks[0] - k2) < 1e-12 && std::abs(ks[1] - k1) < 1e-12;
    CHECK((direct || swapped));
    for (const auto& br : all_branches(prob)) CHECK(br.square_defect < 1e-12);
}

TEST_CASE("a vanishing sigma_tilde gives k = 0") {
    const auto prob = ws_problem(dims(0.0, 0.0, 0.0));
    for (Complex k : candidate_ks(prob)) CHECK(std::abs(k) < 1e-15);
}

TEST_CASE("nonrelativistic k root") {
    const double eps2 = 0.9, beta2 = 0.4;
    const double eps = std::sqrt(eps2), c = std::sqrt(eps2 - beta2);
    const auto prob = schrodinger_problem(eps2, beta2);
    bool seen = false;
    for (Complex k : candidate_ks(prob)) seen = seen || std::abs(k + (c + eps) * (c + eps)) < 1e-12;
    CHECK(seen);
    const auto* br = find_branch(all_branches(prob), c, -eps);
    REQUIRE(br != nullptr);
    CHECK(std::abs(br->k + (c + eps) * (c + eps)) < 1e-12);
}

TEST_CASE("pi, tau and lambda on the decaying branch") {
    const double eps2 = 0.75, beta2 = 0.45, gamma2 = 0.2025;
    const double eps = std::sqrt(eps2);
    const double b = std::sqrt(eps2 - beta2 - gamma2);
    const auto prob = ws_problem(dims(eps2, beta2, gamma2));
    const auto all = all_branches(prob);
    CHECK(all.size() == 4);
    const auto* br = find_branch(all, b, -eps);
    REQUIRE(br != nullptr);
    CHECK(std::abs(br->pi.c1 + (b + eps)) < 1e-12);
    CHECK(std::abs(br->pi.c2) == 0.0);
    CHECK(std::abs(br->tau.c0 - (1 + 2 * b)) < 1e-12);
    CHECK(std::abs(br->tau.c1 + 2 * (1 + b + eps)) < 1e-12);
    CHECK(br->accepted);
    CHECK(std::abs(br->lambda - (-gamma2 - (b + eps) * (b + eps + 1))) < 1e-12);
    for (int n = 0; n < 6; ++n) {
        CHECK(std::abs(lambda_n(*br, n) - (n * n + n + 2.0 * n * (eps + b))) < 1e-12);
    }
    CHECK(std::abs(lambda_n(*br, 0)) == 0.0);
    for (const auto& x : all) {
        const Poly2 expect = prob.tau_tilde + 2.0 * x.pi;
        CHECK(std::abs(x.tau.c0 - expect.c0) < 1e-14);
        CHECK(std::abs(x.tau.c1 - expect.c1) < 1e-14);
        CHECK(std::abs(x.tau.c2 - expect.c2) < 1e-14);
    }
}

TEST_CASE("phi and weight exponents") {
    const double eps2 = 0.75, beta2 = 0.45, gamma2 = 0.2025;
    const double eps = std::sqrt(eps2);
    const double b = std::sqrt(eps2 - beta2 - gamma2);
    const auto prob = ws_problem(dims(eps2, beta2, gamma2));
    const auto* br = find_branch(all_branches(prob), b, -eps);
    REQUIRE(br != nullptr);
    const auto pw = phi_and_weight(*br, prob);
    CHECK(std::abs(pw.phi_A - b) < 1e-12);
    CHECK(std::abs(pw.phi_B - eps) < 1e-12);
    CHECK(std::abs(pw.rho_A - 2 * b) < 1e-12);
    CHECK(std::abs(pw.rho_B - 2 * eps) < 1e-12);

    HypergeometricTypeProblem other = prob;
    other.sigma = Poly2{0.0, 1.0, 0.0};
    CHECK_THROWS_AS(phi_and_weight(*br, other), UnsupportedSigmaError);
}

TEST_CASE("problem validation") {
    HypergeometricTypeProblem bad;
    bad.tau_tilde = Poly2{1.0, 0.0, 1.0};
    bad.sigma = Poly2{0.0, 1.0, -1.0};
    CHECK_THROWS_AS(validate(bad), DegenerateError);
    HypergeometricTypeProblem zero_sigma;
    CHECK_THROWS_AS(validate(zero_sigma), DegenerateError);
}

TEST_CASE("Rodrigues polynomials solve the hypergeometric equation exactly") {
    // sigma y'' + tau y' + lambda_n y = 0 with tau = 2A+1 - (2A+2B+2) s and
    // lambda_n = n (n + 2A + 2B + 1); dyadic exponents keep the arithmetic exact
    for (double A : {0.25, 1.5, -0.375}) {
        for (double B : {0.5, 2.125}) {
            for (int n = 0; n <= 4; ++n) {
                const auto c = rodrigues_coefficients(n, A, B);
                REQUIRE(c.size() == static_cast<size_t>(n + 1));
                const Complex t0 = 2 * A + 1, t1 = -(2 * A + 2 * B + 2);
                const Complex lam = n * (n + 2 * A + 2 * B + 1.0);
                // coefficient of s^j in the left-hand side
                double worst = 0.0, scale = 0.0;
                for (int j = 0; j <= n; ++j) {
                    auto at = [&](int i) { return i >= 0 && i <= n ? c[i] : Complex(0.0); };
                    const Complex lhs = double((j + 1) * j) * at(j + 1) - double(j * (j - 1)) * at(j) +
                                        t0 * double(j + 1) * at(j + 1) + t1 * double(j) * at(j) + lam * at(j);
                    worst = std::max(worst, std::abs(lhs));
                    scale = std::max(scale, std::abs(c[j]));
                }
                INFO("A=" << A << " B=" << B << " n=" << n);
                CHECK(worst <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("quantization residual vanishes only at eigenvalues") {
    const PotentialParams p(0.4, 1.0, 1.0, 1.0);
    const auto levels = real_spectrum(p, 5);
    REQUIRE(!levels.empty());
    for (const auto& st : levels) {
        const auto r = ws_residual(p, st.E, st.n);
        CHECK(std::abs(r.residual) / std::max(1.0, std::abs(r.branch.lambda)) < 1e-12);
    }
    const PotentialParams q(0.45, 1.0, 1.0, 1.0);
    CHECK(std::abs(ws_residual(q, 0.5, 0).residual) > 1e-3);
}

TEST_CASE("tau' sign on the quantizing branch of a real level") {
    // The quantizing branch need not be the one with a negative tau'; report
    // what the engine found, and require the flag to be consistent with tau'.
    const PotentialParams p(0.4, 1.0, 1.0, 1.0);
    for (const auto& st : real_spectrum(p, 5)) {
        const auto r = ws_residual(p, st.E, st.n);
        CHECK(r.branch.accepted == (r.branch.tau_prime().real() < 0.0));
        MESSAGE("n=" << st.n << " tau'=" << r.branch.tau_prime());
    }
}
