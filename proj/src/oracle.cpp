#include "kgws/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

constexpr double kRescale = 1e100;

struct Sweep {
    double psi_m;
    double psi_m1;
};

// Numerov from one end towards the matching index. `dir` is +1 (left start)
// or -1 (right start). Returns psi at the matching pair (m, m+1).
Sweep numerov_sweep(const std::vector<double>& f, const std::vector<double>& g, int m,
                    int dir, double kappa_h) {
    const int n = static_cast<int>(f.size());
    const int start = dir > 0 ? 0 : n - 1;
    const int stop = dir > 0 ? m + 1 : m;
    double y0 = 1.0;
    double y1 = std::exp(kappa_h);
    int i = start + dir;
    double ym = 0.0;
    double ym1 = 0.0;
    auto record = [&](int idx, double v) {
        if (idx == m) ym = v;
        if (idx == m + 1) ym1 = v;
    };
    record(start, y0);
    record(i, y1);
    while (i != stop) {
        const int next = i + dir;
        const double y2 = (2.0 * g[i] * y1 - f[i - dir] * y0) / f[next];
        if (!std::isfinite(y2)) throw StiffnessError("Numerov produced a non-finite value");
        y0 = y1;
        y1 = y2;
        i = next;
        if (std::abs(y1) > kRescale) {
            y0 /= kRescale;
            y1 /= kRescale;
            ym /= kRescale;
            ym1 /= kRescale;
        }
        record(i, y1);
    }
    return {ym, ym1};
}

double local_kappa(const ShootingProblem& pr, double x, double E) {
    const double q = pr.Q(x, E);
    return q < 0.0 ? std::sqrt(-q) : 0.0;
}

bool closed_candidate(const BoundState& s) { return s.physical && !s.limit; }

double relative_error(double closed, double numeric, double m) {
    const double ref = closed != 0.0 ? std::abs(closed) : m;
    return std::abs(numeric - closed) / ref;
}

}  // namespace

void GridConfig::validate() const {
    if (n_points < 2001 || n_points % 2 == 0) {
        throw ConfigError("grid needs an odd number of points >= 2001");
    }
    if (e_steps < 2) throw ConfigError("energy scan needs at least 2 steps");
    if (!(tol_e > 0.0)) throw ConfigError("energy tolerance must be > 0");
    if (L < 0.0) throw ConfigError("L must be >= 0");
}

std::string to_json(const OracleReport& report) {
    nlohmann::ordered_json j;
    j["found"] = nlohmann::ordered_json::array();
    for (const auto& f : report.found) j["found"].push_back({{"E", f.E}, {"residual", f.residual}});
    j["matched"] = nlohmann::ordered_json::array();
    for (const auto& m : report.matched) {
        j["matched"].push_back({{"n", m.n},
                                {"branch", m.branch},
                                {"E_closed", m.E_closed},
                                {"E_numeric", m.E_numeric},
                                {"rel_error", m.rel_error}});
    }
    j["unmatched_closed"] = nlohmann::ordered_json::array();
    for (const auto& s : report.unmatched_closed) {
        j["unmatched_closed"].push_back({{"n", s.n}, {"branch", s.branch}, {"E", s.E.real()}});
    }
    j["unmatched_numeric"] = nlohmann::ordered_json::array();
    for (const auto& f : report.unmatched_numeric) {
        j["unmatched_numeric"].push_back({{"E", f.E}, {"residual", f.residual}});
    }
    return j.dump(2);
}

double shooting_mismatch(const ShootingProblem& pr, double E, int n_points, double match_x) {
    const double h = (pr.x_max - pr.x_min) / (n_points - 1);
    const double h2 = h * h / 12.0;
    std::vector<double> f(static_cast<std::size_t>(n_points));
    std::vector<double> g(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double x = pr.x_min + i * h;
        const double q = pr.Q(x, E);
        const double fi = 1.0 + h2 * q;
        if (!(fi > 0.0) || !std::isfinite(q)) {
            throw StiffnessError("Numerov step outside its stability region at x = " +
                                 std::to_string(x));
        }
        f[static_cast<std::size_t>(i)] = fi;
        g[static_cast<std::size_t>(i)] = 1.0 - 5.0 * h2 * q;
    }
    int m = static_cast<int>(std::lround((match_x - pr.x_min) / h));
    m = std::clamp(m, 2, n_points - 3);
    const Sweep left = numerov_sweep(f, g, m, +1, local_kappa(pr, pr.x_min, E) * h);
    const Sweep right = numerov_sweep(f, g, m, -1, local_kappa(pr, pr.x_max, E) * h);
    const double w = left.psi_m * right.psi_m1 - left.psi_m1 * right.psi_m;
    const double norm = std::hypot(left.psi_m, left.psi_m1) * std::hypot(right.psi_m, right.psi_m1);
    return norm > 0.0 ? w / norm : 0.0;
}

std::vector<FoundLevel> shoot_eigenvalues(const ShootingProblem& pr, int n_points,
                                          double match_x, int e_steps, double tol_e) {
    std::vector<FoundLevel> out;
    if (!(pr.E_max > pr.E_min)) return out;
    const double span = pr.E_max - pr.E_min;
    // Open interval: stay clear of the continuum thresholds.
    auto energy = [&](int i) { return pr.E_min + span * (i + 0.5) / e_steps; };
    double e_prev = energy(0);
    double f_prev = shooting_mismatch(pr, e_prev, n_points, match_x);
    for (int i = 1; i < e_steps; ++i) {
        const double e = energy(i);
        const double fe = shooting_mismatch(pr, e, n_points, match_x);
        if (f_prev == 0.0 || (fe > 0.0) != (f_prev > 0.0)) {
            double lo = e_prev;
            double hi = e;
            double flo = f_prev;
            while (hi - lo > tol_e) {
                const double mid = 0.5 * (lo + hi);
                const double fm = shooting_mismatch(pr, mid, n_points, match_x);
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            out.push_back({root, std::abs(shooting_mismatch(pr, root, n_points, match_x))});
        }
        e_prev = e;
        f_prev = fe;
    }
    return out;
}

OracleReport shoot_real_eigenvalues(const PotentialParams& p, const GridConfig& grid,
                                    int n_max) {
    std::vector<BoundState> closed;
    for (const auto& s : candidates(p, n_max)) {
        if (closed_candidate(s)) closed.push_back(s);
    }
    return shoot_real_eigenvalues(p, grid, closed);
}

OracleReport shoot_real_eigenvalues(const PotentialParams& p, const GridConfig& grid,
                                    const std::vector<BoundState>& closed) {
    grid.validate();
    if (p.variant() != Variant::RealHermitian) {
        throw ConfigError("shooting oracle handles the real variant only");
    }
    if (!(p.q() > 0.0)) {
        throw ConditionViolated("q > 0", "the real-variant potential has a pole for q < 0");
    }
    const double m = p.m();
    const double deep = -p.V0() / p.q();  // V at x -> -infinity
    double L = grid.L > 0.0 ? grid.L : 40.0 / p.alpha();
    const double scale = std::max(std::abs(deep), 1e-300);
    for (int i = 0; i < 20; ++i) {
        const double right = std::abs(potential_value(p, L).real());
        const double left = std::abs(potential_value(p, -L).real() - deep);
        if (right < 1e-12 * scale && left < 1e-12 * scale) break;
        L *= 1.5;
    }

    ShootingProblem pr;
    pr.Q = [&p, m](double r, double E) {
        const double v = potential_value(p, p.x_from_r(r)).real();
        return (E - v) * (E - v) - m * m;
    };
    pr.x_min = p.R0() + grid.match_x - L;
    pr.x_max = p.R0() + grid.match_x + L;
    pr.E_min = std::max(-m, -m + deep);
    pr.E_max = std::min(m, m + deep);

    OracleReport report;
    report.found = shoot_eigenvalues(pr, grid.n_points, p.R0() + grid.match_x, grid.e_steps,
                                     grid.tol_e * m);
    report.no_bracket = report.found.empty();

    std::vector<bool> used(report.found.size(), false);
    for (const auto& s : closed) {
        const double ec = s.E.real();
        int best = -1;
        double best_err = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < report.found.size(); ++i) {
            if (used[i]) continue;
            const double err = relative_error(ec, report.found[i].E, m);
            if (err < best_err) {
                best_err = err;
                best = static_cast<int>(i);
            }
        }
        if (best >= 0 && best_err <= grid.match_rel) {
            used[static_cast<std::size_t>(best)] = true;
            report.matched.push_back(
                {s.n, s.branch, ec, report.found[static_cast<std::size_t>(best)].E, best_err});
        } else {
            report.unmatched_closed.push_back(s);
        }
    }
    for (std::size_t i = 0; i < report.found.size(); ++i) {
        if (!used[i]) report.unmatched_numeric.push_back(report.found[i]);
    }
    return report;
}

double ode_residual(const HypergeometricTypeProblem& pr, const WavefunctionSpec& wf) {
    constexpr int kPoints = 181;
    double max_r = 0.0;
    double max_d2 = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double s = 0.05 + 0.9 * i / (kPoints - 1);
        const double h = 2e-3 * std::min(s, 1.0 - s);
        auto psi = [&](int k) {
            const double sk = s + k * h;
            return evaluate_unnormalized(wf, sk, (1.0 - s) - k * h);
        };
        const Complex fm2 = psi(-2), fm1 = psi(-1), f0 = psi(0), fp1 = psi(1), fp2 = psi(2);
        const Complex d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        const Complex d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        const Complex sig = pr.sigma(s);
        const Complex r = d2 + pr.tau_tilde(s) / sig * d1 + pr.sigma_tilde(s) / (sig * sig) * f0;
        max_r = std::max(max_r, std::abs(r));
        max_d2 = std::max(max_d2, std::abs(d2));
    }
    return max_d2 > 0.0 ? max_r / max_d2 : max_r;
}

double residual_check(const PotentialParams& p, const BoundState& state,
                      const WavefunctionSpec& wf, double e_shift) {
    const auto d = dimensionless_kg(p, state.E + e_shift);
    return ode_residual(ws_problem(d), wf);
}

double schrodinger_check(const PotentialParams& p, int n, double e_shift) {
    const auto st = schrodinger_state(p, n);
    const auto wf = build_schrodinger_wavefunction(p, st);
    const auto d = schrodinger_dimensionless(p, st.E + e_shift);
    return ode_residual(schrodinger_problem(d.eps2, d.beta2), wf);
}

}  // namespace kgws
