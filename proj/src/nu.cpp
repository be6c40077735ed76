#include "kgws/nu.hpp"

#include <algorithm>
#include <cmath>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

double scale_of(const Poly2& p) {
    return std::max({std::abs(p.c0), std::abs(p.c1), std::abs(p.c2)});
}

// Under-root quadratic ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma,
// split as base + k * sigma.
Poly2 under_root_base(const HypergeometricTypeProblem& pr) {
    const Complex h1 = (2.0 * pr.sigma.c2 - pr.tau_tilde.c1) / 2.0;
    const Complex h0 = (pr.sigma.c1 - pr.tau_tilde.c0) / 2.0;
    return Poly2{h0 * h0, 2.0 * h0 * h1, h1 * h1} - pr.sigma_tilde;
}

Poly2 half_sigma_minus_tau(const HypergeometricTypeProblem& pr) {
    return Poly2{(pr.sigma.c1 - pr.tau_tilde.c0) / 2.0, (2.0 * pr.sigma.c2 - pr.tau_tilde.c1) / 2.0,
                 0.0};
}

}  // namespace

int Poly2::degree() const {
    if (c2 != Complex(0.0)) return 2;
    if (c1 != Complex(0.0)) return 1;
    return 0;
}

Poly2 operator+(const Poly2& a, const Poly2& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
Poly2 operator-(const Poly2& a, const Poly2& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
Poly2 operator*(Complex k, const Poly2& a) { return {k * a.c0, k * a.c1, k * a.c2}; }

void validate(const HypergeometricTypeProblem& problem) {
    if (problem.tau_tilde.c2 != Complex(0.0)) {
        throw DegenerateError("tau_tilde must have degree <= 1");
    }
    if (scale_of(problem.sigma) == 0.0) throw DegenerateError("sigma must be nonzero");
}

std::vector<Complex> candidate_ks(const HypergeometricTypeProblem& problem) {
    validate(problem);
    const Poly2 a = under_root_base(problem);
    const Poly2& sg = problem.sigma;
    // (a1 + k s1)^2 - 4 (a2 + k s2)(a0 + k s0) = P k^2 + Q k + R
    const Complex P = sg.c1 * sg.c1 - 4.0 * sg.c2 * sg.c0;
    const Complex Q = 2.0 * a.c1 * sg.c1 - 4.0 * (a.c2 * sg.c0 + a.c0 * sg.c2);
    const Complex R = a.c1 * a.c1 - 4.0 * a.c2 * a.c0;
    const double sc = std::max({std::abs(P), std::abs(Q), std::abs(R), 1e-300});

    if (std::abs(P) <= 1e-14 * sc) {
        if (std::abs(Q) <= 1e-14 * sc) {
            if (std::abs(R) <= 1e-14 * sc) {
                throw DegenerateError("perfect-square condition holds for every k");
            }
            throw DegenerateError("perfect-square condition has no solution in k");
        }
        return {-R / Q};
    }
    const Complex root = std::sqrt(Q * Q - 4.0 * P * R);
    // Avoid cancellation: pick the sign that maximises |Q + sign*root|.
    const Complex big = (std::abs(Q + root) >= std::abs(Q - root)) ? Q + root : Q - root;
    if (big == Complex(0.0)) return {0.0, 0.0};
    const Complex k1 = -big / (2.0 * P);
    const Complex k2 = -2.0 * R / big;
    return {k1, k2};
}

std::vector<NuBranch> branches(const HypergeometricTypeProblem& problem, Complex k) {
    validate(problem);
    const Poly2 u = under_root_base(problem) + k * problem.sigma;
    const double sc = std::max(scale_of(u), 1e-300);

    // u = (r1 s + r0)^2
    Complex r1 = std::sqrt(u.c2);
    Complex r0;
    if (std::abs(r1) > 1e-8 * std::sqrt(sc)) {
        r0 = u.c1 / (2.0 * r1);
    } else {
        r1 = 0.0;
        r0 = std::sqrt(u.c0);
    }
    const double defect = std::abs(u.c1 * u.c1 - 4.0 * u.c2 * u.c0) / (sc * sc);

    const Poly2 h = half_sigma_minus_tau(problem);
    const Poly2 root{r0, r1, 0.0};
    std::vector<NuBranch> out;
    for (SignChoice sign : {SignChoice::Plus, SignChoice::Minus}) {
        NuBranch b;
        b.k = k;
        b.sign_choice = sign;
        b.pi = sign == SignChoice::Plus ? h + root : h - root;
        b.tau = problem.tau_tilde + 2.0 * b.pi;
        b.lambda = k + b.pi.c1;
        b.sigma_second = problem.sigma.second();
        b.accepted = b.tau.c1.real() < 0.0;
        b.square_defect = defect;
        out.push_back(b);
    }
    return out;
}

std::vector<NuBranch> all_branches(const HypergeometricTypeProblem& problem) {
    std::vector<NuBranch> out;
    const auto ks = candidate_ks(problem);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        for (auto b : branches(problem, ks[i])) {
            b.k_index = static_cast<int>(i);
            out.push_back(b);
        }
    }
    return out;
}

Complex lambda_n(const NuBranch& branch, int n) {
    const double nd = n;
    return -nd * branch.tau_prime() - nd * (nd - 1.0) * branch.sigma_second / 2.0;
}

QuantizationResult quantization_residual(const ProblemHook& hook, Complex E, int n) {
    const auto bs = all_branches(hook(E));
    QuantizationResult best{bs.front().lambda - lambda_n(bs.front(), n), bs.front()};
    for (const auto& b : bs) {
        const Complex r = b.lambda - lambda_n(b, n);
        if (std::abs(r) < std::abs(best.residual)) best = {r, b};
    }
    return best;
}

PhiWeight phi_and_weight(const NuBranch& branch, const HypergeometricTypeProblem& problem) {
    const Poly2& sg = problem.sigma;
    if (sg.c0 != Complex(0.0) || sg.c1 != Complex(1.0) || sg.c2 != Complex(-1.0)) {
        throw UnsupportedSigmaError("phi and rho are only available for sigma = s - s^2");
    }
    // phi'/phi = pi/sigma, (sigma rho)' = tau rho
    const Complex A = branch.pi(0.0);
    const Complex B = -branch.pi(1.0);
    return {A, B, branch.tau(0.0) - 1.0, -branch.tau(1.0) - 1.0};
}

HypergeometricTypeProblem ws_problem(const DimensionlessKG& d) {
    return {Poly2{1.0, -2.0, 0.0}, Poly2{0.0, 1.0, -1.0},
            Poly2{d.beta2 + d.gamma2 - d.eps2, -(d.beta2 + 2.0 * d.gamma2), d.gamma2}};
}

HypergeometricTypeProblem schrodinger_problem(Complex eps2, Complex beta2) {
    return {Poly2{1.0, -2.0, 0.0}, Poly2{0.0, 1.0, -1.0}, Poly2{beta2 - eps2, -beta2, 0.0}};
}

}  // namespace kgws
