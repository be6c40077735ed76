#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgws/core.hpp"
#include "kgws/spectra.hpp"
#include "kgws/specfun.hpp"

namespace kgws {

/// psi(s) = N s^A (1-s)^B P_n^(2A, 2B)(1 - 2s).
struct WavefunctionSpec {
    Complex A;
    Complex B;
    JacobiParams jacobi;
    /// Empty when the closed-form constant could not be evaluated;
    /// `norm_note` says why.
    std::optional<Complex> N;
    std::string norm_note;
    /// "norm" for the real variant, "formal norm" otherwise.
    std::string norm_label = "norm";
    Variant variant = Variant::RealHermitian;
    /// Maps x to s with this rule (the Schrodinger case uses the pt map).
    Variant s_map = Variant::RealHermitian;
};

/// Exponents (b_signed, eps) of the state; N from the closed form when it
/// evaluates to a finite nonzero value.
WavefunctionSpec build_wavefunction(const PotentialParams& p, const BoundState& state);

/// Exponents (c, eps) of the nonrelativistic complex-alpha level.
WavefunctionSpec build_schrodinger_wavefunction(const PotentialParams& p,
                                                const SchrodingerState& state);

/// Unnormalized value (N taken as 1).
Complex evaluate_unnormalized(const WavefunctionSpec& wf, Complex s, Complex one_minus_s);
Complex evaluate_unnormalized(const WavefunctionSpec& wf, Complex s);

/// N psi_unnormalized (N = 1 when absent).
Complex evaluate(const WavefunctionSpec& wf, Complex s);

/// s^(-2A) (1-s)^(-2B) d^n/ds^n [s^(n+2A) (1-s)^(n+2B)] by the Leibniz rule.
/// Equals n! P_n^(2A,2B)(1 - 2s). Throws ConfigError for n > 8.
Complex rodrigues_eval(int n, Complex A, Complex B, Complex s);

/// Coefficients (ascending powers of s) of the same Rodrigues polynomial.
std::vector<Complex> rodrigues_coefficients(int n, Complex A, Complex B);

/// N^-2 = sum over the product and ascending Jacobi sums of the moment
/// integrals I(p, r) = 2F1(a0, -p - 2B; a0 + 1; z) / a0 with
/// a0 = n + 2A + r - p + 1.
Complex normalization_inverse_square(int n, Complex A, Complex B, Complex z);

/// Argument of 2F1 in I(p, r) for the variant: i for nonpt and pseudo, 1 otherwise.
Complex moment_argument(Variant v);

/// N from the closed form (principal square root of 1/N^-2).
/// Throws NonNormalizable when the state is flagged normalizable but N^-2
/// is zero or a negative real.
Complex normalization_closed_form(const PotentialParams& p, const BoundState& state);
Complex normalization_closed_form(const PotentialParams& p, const SchrodingerState& state);

/// Integral of |psi_unnormalized|^2 over s in (0, 1). Throws QuadratureFailure
/// if the error estimate exceeds 1e-9 absolute.
double normalization_quadrature(const WavefunctionSpec& wf);
double normalization_quadrature(const PotentialParams& p, const BoundState& state);

struct WavefunctionSample {
    double x;
    Complex s;
    Complex psi;
};

/// Samples over a pole-free x-grid.
std::vector<WavefunctionSample> sample_wavefunction(const PotentialParams& p,
                                                    const WavefunctionSpec& wf, double from,
                                                    double to, int steps);

/// Sign changes of Re psi on `points` interior points of s in (0, 1).
int count_nodes(const WavefunctionSpec& wf, int points = 10000);

}  // namespace kgws
