#pragma once

#include <functional>
#include <vector>

#include "kgws/core.hpp"

namespace kgws {

/// c0 + c1 s + c2 s^2.
struct Poly2 {
    Complex c0 = 0.0;
    Complex c1 = 0.0;
    Complex c2 = 0.0;

    Complex operator()(Complex s) const { return c0 + s * (c1 + s * c2); }
    /// First derivative at s.
    Complex prime(Complex s) const { return c1 + 2.0 * c2 * s; }
    /// Constant second derivative.
    Complex second() const { return 2.0 * c2; }
    int degree() const;
};

Poly2 operator+(const Poly2& a, const Poly2& b);
Poly2 operator-(const Poly2& a, const Poly2& b);
Poly2 operator*(Complex k, const Poly2& a);

/// psi'' + (tau_tilde / sigma) psi' + (sigma_tilde / sigma^2) psi = 0.
struct HypergeometricTypeProblem {
    Poly2 tau_tilde;
    Poly2 sigma;
    Poly2 sigma_tilde;
};

/// Throws DegenerateError unless deg tau_tilde <= 1 and sigma is nonzero.
void validate(const HypergeometricTypeProblem& problem);

enum class SignChoice { Plus, Minus };

struct NuBranch {
    Complex k;
    Poly2 pi;     ///< degree <= 1
    Poly2 tau;    ///< tau_tilde + 2 pi
    Complex lambda;
    SignChoice sign_choice = SignChoice::Plus;
    int k_index = 0;          ///< which root of candidate_ks produced this branch
    Complex sigma_second = 0; ///< sigma'' of the parent problem
    bool accepted = false;    ///< Re tau' < 0
    /// |discriminant| of the under-root quadratic after k was inserted.
    double square_defect = 0.0;

    Complex tau_prime() const { return tau.c1; }
};

/// The k values that turn the under-root quadratic into a perfect square.
/// Throws DegenerateError if that condition holds for every k or for none.
std::vector<Complex> candidate_ks(const HypergeometricTypeProblem& problem);

/// The +/- branches for one k, flagged by the negative-tau' rule.
std::vector<NuBranch> branches(const HypergeometricTypeProblem& problem, Complex k);

/// Branches for every candidate k.
std::vector<NuBranch> all_branches(const HypergeometricTypeProblem& problem);

/// lambda_n = -n tau' - n(n-1) sigma'' / 2.
Complex lambda_n(const NuBranch& branch, int n);

/// Builds the problem for a trial energy.
using ProblemHook = std::function<HypergeometricTypeProblem(Complex E)>;

struct QuantizationResult {
    Complex residual;  ///< lambda - lambda_n on `branch`
    NuBranch branch;
};

/// lambda - lambda_n for the problem built at energy E, taken on the branch
/// where it is smallest in modulus. A root in E is an eigenvalue.
QuantizationResult quantization_residual(const ProblemHook& hook, Complex E, int n);

/// phi = s^phi_A (1-s)^phi_B, rho = s^rho_A (1-s)^rho_B.
struct PhiWeight {
    Complex phi_A;
    Complex phi_B;
    Complex rho_A;
    Complex rho_B;
};

/// Only sigma = s - s^2 is supported (UnsupportedSigmaError otherwise).
PhiWeight phi_and_weight(const NuBranch& branch, const HypergeometricTypeProblem& problem);

/// tau_tilde = 1 - 2s, sigma = s - s^2,
/// sigma_tilde = gamma2 s^2 - (beta2 + 2 gamma2) s + beta2 + gamma2 - eps2.
HypergeometricTypeProblem ws_problem(const DimensionlessKG& d);

/// Same sigma and tau_tilde, sigma_tilde = -beta2 s + beta2 - eps2.
HypergeometricTypeProblem schrodinger_problem(Complex eps2, Complex beta2);

}  // namespace kgws
