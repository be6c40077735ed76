#pragma once

#include <string>
#include <vector>

#include "kgws/core.hpp"
#include "kgws/nu.hpp"

namespace kgws {

/// One evaluated level. `eps` and `b_signed` are the exponents of the
/// branch that satisfies the quantization condition, in the complexified
/// parameters of the variant (so for alpha -> i alpha they carry the i).
struct BoundState {
    int n = 0;
    int branch = +1;  ///< sign in front of xi in the energy formula
    Complex E;
    Complex xi;       ///< xi of the variant's energy formula
    Complex eps;      ///< signed exponent of (1 - s)
    Complex b_signed; ///< signed exponent of s
    Complex eps2;
    Complex beta2;
    Complex gamma2;
    /// |lambda - lambda_n| / max(1, |lambda|) on the best branch.
    double residual = 0.0;
    bool gate_ok = false;  ///< existence inequality holds
    bool real_ok = false;  ///< finite and |Im E| < 1e-9 m
    bool physical = false; ///< passed every filter; only these are emitted
    bool normalizable = false;  ///< Re b_signed > 0 and Re eps > 0
    bool limit = false;    ///< produced by the V0 = 0 analytic path
    std::string defect;    ///< non-empty when the gate and reality tests disagree
};

/// Tolerance on the scaled quantization residual.
inline constexpr double kResidualTol = 1e-9;

/// xi for the variant at level n:
///   real, nonpt: sqrt(q^2 alpha^2 - 4 V0^2) - q alpha (2n+1)
///   pt:          sqrt(q^2 alpha^2 + 4 V0^2) - q alpha (2n+1)
///   pseudo:      sqrt(q^2 alpha^2 + 4 V0^2) + q alpha (2n+1)
/// Throws ConditionViolated when q^2 alpha^2 < 4 V0^2 (real, nonpt).
Complex xi(const PotentialParams& p, int n);

/// Largest n with |xi(n)| <= 2 sqrt(4 q^2 m^2 - V0^2), or -1. For q > 0 this
/// is the closed-form critical-coupling bound. Throws ConditionViolated if
/// 4 q^2 m^2 < V0^2 or q^2 alpha^2 < 4 V0^2.
int max_level_index(const PotentialParams& p);

/// |xi(0)| <= 2 sqrt(4 q^2 m^2 - V0^2).
bool has_any_level(const PotentialParams& p);

/// Every evaluated level (both roots for the real variant), with its flags.
/// Nothing is filtered out.
std::vector<BoundState> candidates(const PotentialParams& p, int n_max);

/// Physical levels only. Throw EmptySpectrum when none survive.
std::vector<BoundState> real_spectrum(const PotentialParams& p, int n_max);
std::vector<BoundState> pt_spectrum(const PotentialParams& p, int n_max);
std::vector<BoundState> nonpt_spectrum(const PotentialParams& p, int n_max);
std::vector<BoundState> pseudo_spectrum(const PotentialParams& p, int n_max);

/// Dispatch on the variant.
std::vector<BoundState> spectrum(const PotentialParams& p, int n_max);

/// Gate/reality disagreements among the candidates, one line each.
std::vector<std::string> gate_defects(const PotentialParams& p, int n_max);

/// Quantization residual of energy E at level n for the variant's problem.
QuantizationResult ws_residual(const PotentialParams& p, Complex E, int n);

/// Nonrelativistic problem with alpha -> i alpha.
struct SchrodingerDimensionless {
    Complex eps2;     ///< 2 m E / alpha^2
    Complex beta2;    ///< -2 m V0 / (alpha^2 q)
    Complex c;        ///< sqrt(eps2 - beta2)
    double gamma_nr;  ///< m V0 / (q alpha^2)
};

SchrodingerDimensionless schrodinger_dimensionless(const PotentialParams& p, Complex E);

/// E_n = (alpha^2 / 2m) [(n+1)/2 - gamma/(n+1)]^2.
double schrodinger_complex_spectrum(const PotentialParams& p, int n);

struct SchrodingerState {
    int n = 0;
    double E = 0.0;
    Complex eps;  ///< signed exponent of (1 - s)
    Complex c;    ///< signed exponent of s
    SchrodingerDimensionless dims;
    double residual = 0.0;
};

/// Level n with the exponents of the quantizing branch, c + eps = -(n+1).
SchrodingerState schrodinger_state(const PotentialParams& p, int n);

QuantizationResult schrodinger_residual(const PotentialParams& p, Complex E, int n);

}  // namespace kgws
