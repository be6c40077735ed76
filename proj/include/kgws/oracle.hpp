#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kgws/core.hpp"
#include "kgws/nu.hpp"
#include "kgws/spectra.hpp"
#include "kgws/wavefn.hpp"

namespace kgws {

struct GridConfig {
    double L = 0.0;          ///< half-width; 0 selects 40 / alpha
    int n_points = 8001;     ///< odd, >= 2001
    double match_x = 0.0;
    int e_steps = 400;       ///< bracket scan points
    double tol_e = 1e-10;    ///< in units of m
    double match_rel = 1e-6; ///< acceptance for closed/numeric pairing

    /// Throws ConfigError on an even or too small grid.
    void validate() const;
};

struct FoundLevel {
    double E;
    double residual;  ///< |normalized Wronskian| at the converged energy
};

struct MatchedLevel {
    int n;
    int branch;
    double E_closed;
    double E_numeric;
    double rel_error;
};

struct OracleReport {
    std::vector<FoundLevel> found;
    std::vector<MatchedLevel> matched;
    std::vector<BoundState> unmatched_closed;
    std::vector<FoundLevel> unmatched_numeric;
    /// Bracket scan found no sign change.
    bool no_bracket = false;

    bool ok() const { return unmatched_closed.empty() && unmatched_numeric.empty(); }
};

/// {"found": [...], "matched": [...], "unmatched_closed": [...], "unmatched_numeric": [...]}
std::string to_json(const OracleReport& report);

/// psi'' + Q(x, E) psi = 0 on [x_min, x_max], decaying at both ends.
struct ShootingProblem {
    std::function<double(double x, double E)> Q;
    double x_min;
    double x_max;
    double E_min;
    double E_max;
};

/// Normalized discrete Wronskian of the left and right solutions at the
/// grid point nearest `match_x`. Zero at an eigenvalue. Throws
/// StiffnessError when 1 + h^2 Q / 12 <= 0 or a value is not finite.
double shooting_mismatch(const ShootingProblem& problem, double E, int n_points,
                         double match_x);

/// Sign-change scan over (E_min, E_max) followed by bisection.
std::vector<FoundLevel> shoot_eigenvalues(const ShootingProblem& problem, int n_points,
                                          double match_x, int e_steps, double tol_e);

/// Real variant, q > 0 only. Shoots the Klein-Gordon equation on
/// [R0 - L, R0 + L] (r-space) and pairs the roots with the physical,
/// non-limit closed-form levels.
OracleReport shoot_real_eigenvalues(const PotentialParams& p, const GridConfig& grid,
                                    int n_max = 50);

/// Same, pairing against an explicit closed-form list (test hook).
OracleReport shoot_real_eigenvalues(const PotentialParams& p, const GridConfig& grid,
                                    const std::vector<BoundState>& closed);

/// max |R| / max |psi''| over s in [0.05, 0.95], where R is the transformed
/// ODE residual evaluated with 5-point differences.
double ode_residual(const HypergeometricTypeProblem& problem, const WavefunctionSpec& wf);

/// Residual of wf against the variant's problem at E + e_shift.
double residual_check(const PotentialParams& p, const BoundState& state,
                      const WavefunctionSpec& wf, double e_shift = 0.0);

/// Residual of the nonrelativistic complex-alpha level n.
double schrodinger_check(const PotentialParams& p, int n, double e_shift = 0.0);

}  // namespace kgws
