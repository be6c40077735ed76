#include "kgws/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

constexpr double kFloorSlack = 1e-12;

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

void require_q(const PotentialParams& p) {
    if (p.q() == 0.0) throw ConditionViolated("q != 0", "closed forms divide by q");
}

void require_inner_root(const PotentialParams& p) {
    const double qa = p.q() * p.alpha();
    if (qa * qa < 4.0 * p.V0() * p.V0()) {
        throw ConditionViolated("q^2 alpha^2 >= 4 V0^2",
                                fmt("q^2 alpha^2 = %.17g < 4 V0^2 = %.17g", qa * qa,
                                    4.0 * p.V0() * p.V0()));
    }
}

double level_bound(const PotentialParams& p) {
    const double q = p.q();
    const double m = p.m();
    const double V0 = p.V0();
    if (4.0 * q * q * m * m < V0 * V0) {
        throw ConditionViolated("4 q^2 m^2 >= V0^2",
                                fmt("4 q^2 m^2 = %.17g < V0^2 = %.17g", 4.0 * q * q * m * m,
                                    V0 * V0));
    }
    return 2.0 * std::sqrt(4.0 * q * q * m * m - V0 * V0);
}

// Value of the variant's existence inequality, >= 0 when it holds.
double gate_margin(const PotentialParams& p, double xi_value) {
    const double q = p.q();
    const double m = p.m();
    const double V0 = p.V0();
    const double lhs = 16.0 * q * q * m * m;
    switch (p.variant()) {
        case Variant::RealHermitian:
        case Variant::NonPTNonHermitian: return lhs - 4.0 * V0 * V0 - xi_value * xi_value;
        case Variant::PTSymmetric:
        case Variant::PseudoHermitian: return 4.0 * V0 * V0 - xi_value * xi_value - lhs;
    }
    return 0.0;
}

// Closed-form energy for the variant and sign.
Complex energy_formula(const PotentialParams& p, double xi_value, int sign) {
    const double q = p.q();
    const double m = p.m();
    const double V0 = p.V0();
    const double offset = -V0 / (2.0 * q);
    Complex radicand;
    switch (p.variant()) {
        case Variant::RealHermitian:
        case Variant::NonPTNonHermitian:
            radicand = m * m / (4.0 * V0 * V0 + xi_value * xi_value) - 1.0 / (16.0 * q * q);
            break;
        case Variant::PTSymmetric:
        case Variant::PseudoHermitian:
            radicand = 1.0 / (16.0 * q * q) - m * m / (4.0 * V0 * V0 - xi_value * xi_value);
            break;
    }
    return offset + double(sign) * xi_value * std::sqrt(radicand);
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double scaled_residual(const QuantizationResult& r) {
    return std::abs(r.residual) / std::max(1.0, std::abs(r.branch.lambda));
}

void fill_from_branch(BoundState& st, const QuantizationResult& r) {
    st.residual = scaled_residual(r);
    st.b_signed = r.branch.pi(0.0);
    st.eps = -r.branch.pi(1.0);
    st.normalizable = st.b_signed.real() > 0.0 && st.eps.real() > 0.0;
}

BoundState evaluate_level(const PotentialParams& p, int n, int sign) {
    BoundState st;
    st.n = n;
    st.branch = sign;
    const double x = xi(p, n).real();
    st.xi = x;
    st.E = energy_formula(p, x, sign);
    st.gate_ok = gate_margin(p, x) >= 0.0;
    st.real_ok = is_finite(st.E) && std::abs(st.E.imag()) < 1e-9 * p.m();
    if (!is_finite(st.E)) {
        st.residual = std::numeric_limits<double>::infinity();
        return st;
    }
    const auto d = dimensionless_kg(p, st.E);
    st.eps2 = d.eps2;
    st.beta2 = d.beta2;
    st.gamma2 = d.gamma2;
    fill_from_branch(st, ws_residual(p, st.E, n));

    if (p.variant() == Variant::RealHermitian) {
        const double E = st.E.real();
        const double m = p.m();
        const bool bound = E * E <= m * m * (1.0 + 1e-14);
        const bool beta_pos = d.beta2.real() > 0.0;
        st.physical = st.real_ok && bound && beta_pos && st.residual < kResidualTol;
    } else {
        st.physical = st.gate_ok && st.real_ok && st.residual < kResidualTol;
    }
    if (st.gate_ok != st.real_ok) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "n=%d branch=%+d: existence inequality %s but Im E = %.3g", n, sign,
                      st.gate_ok ? "holds" : "fails", st.E.imag());
        st.defect = buf;
    }
    return st;
}

// V0 = 0: E_n = m sqrt(1 - (alpha n / 2m)^2).
BoundState limit_level(const PotentialParams& p, int n) {
    BoundState st;
    st.n = n;
    st.branch = +1;
    st.limit = true;
    const double r = p.alpha() * n / (2.0 * p.m());
    st.E = p.m() * std::sqrt(std::max(0.0, 1.0 - r * r));
    st.xi = xi(p, n);
    st.gate_ok = true;
    st.real_ok = true;
    const auto d = dimensionless_kg(p, st.E);
    st.eps2 = d.eps2;
    st.beta2 = d.beta2;
    st.gamma2 = d.gamma2;
    fill_from_branch(st, ws_residual(p, st.E, n));
    st.physical = st.residual < kResidualTol;
    return st;
}

int real_level_cap(const PotentialParams& p, int n_max) {
    return std::min(n_max, max_level_index(p));
}

std::vector<BoundState> complex_candidates(const PotentialParams& p, int n_max) {
    std::vector<BoundState> out;
    double prev_margin = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double margin = gate_margin(p, xi(p, n).real());
        out.push_back(evaluate_level(p, n, +1));
        // The margin is concave in n: once it is negative and falling it stays negative.
        if (n > 0 && margin < 0.0 && margin < prev_margin) break;
        prev_margin = margin;
    }
    return out;
}

std::vector<BoundState> physical_only(std::vector<BoundState> all, const char* what) {
    std::vector<BoundState> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [](const BoundState& s) { return s.physical; });
    if (out.empty()) throw EmptySpectrum(std::string("no ") + what + " level passes the filters");
    return out;
}

void require_variant(const PotentialParams& p, Variant v) {
    if (p.variant() != v) {
        throw ConfigError("spectrum requested for '" + std::string(to_string(v)) +
                          "' but parameters are '" + std::string(to_string(p.variant())) + "'");
    }
}

}  // namespace

Complex xi(const PotentialParams& p, int n) {
    require_q(p);
    const double qa = p.q() * p.alpha();
    const double four_v2 = 4.0 * p.V0() * p.V0();
    const double ladder = qa * (2.0 * n + 1.0);
    switch (p.variant()) {
        case Variant::RealHermitian:
        case Variant::NonPTNonHermitian:
            require_inner_root(p);
            return std::sqrt(qa * qa - four_v2) - ladder;
        case Variant::PTSymmetric: return std::sqrt(qa * qa + four_v2) - ladder;
        case Variant::PseudoHermitian: return std::sqrt(qa * qa + four_v2) + ladder;
    }
    return 0.0;
}

int max_level_index(const PotentialParams& p) {
    require_q(p);
    const auto real = p.with_variant(Variant::RealHermitian);
    require_inner_root(real);
    const double bound = level_bound(real);
    const double qa = p.q() * p.alpha();
    if (p.q() > 0.0) {
        const double V0 = p.V0();
        const double rhs = (std::sqrt(4.0 * p.q() * p.q() * p.m() * p.m() - V0 * V0) +
                            std::sqrt(qa * qa / 4.0 - V0 * V0)) /
                               qa -
                           0.5;
        return static_cast<int>(std::floor(rhs + kFloorSlack));
    }
    // q < 0: xi grows with n, so scan until it leaves the band.
    int n = -1;
    while (std::abs(xi(real, n + 1).real()) <= bound * (1.0 + kFloorSlack)) {
        ++n;
        if (n > 1000000) throw ConditionViolated("finite level count", "no upper level found");
    }
    return n;
}

bool has_any_level(const PotentialParams& p) {
    require_q(p);
    const auto real = p.with_variant(Variant::RealHermitian);
    require_inner_root(real);
    const double bound = level_bound(real);
    return std::abs(xi(real, 0).real()) <= bound * (1.0 + kFloorSlack);
}

QuantizationResult ws_residual(const PotentialParams& p, Complex E, int n) {
    const ProblemHook hook = [&p](Complex e) { return ws_problem(dimensionless_kg(p, e)); };
    return quantization_residual(hook, E, n);
}

std::vector<BoundState> candidates(const PotentialParams& p, int n_max) {
    require_q(p);
    std::vector<BoundState> out;
    if (p.variant() != Variant::RealHermitian) return complex_candidates(p, n_max);

    xi(p, 0);  // inner-root condition
    const int cap = real_level_cap(p, n_max);
    for (int n = 0; n <= cap; ++n) {
        if (p.V0() == 0.0) {
            out.push_back(limit_level(p, n));
            continue;
        }
        out.push_back(evaluate_level(p, n, +1));
        out.push_back(evaluate_level(p, n, -1));
    }
    return out;
}

std::vector<BoundState> real_spectrum(const PotentialParams& p, int n_max) {
    require_variant(p, Variant::RealHermitian);
    return physical_only(candidates(p, n_max), "real-variant");
}

std::vector<BoundState> pt_spectrum(const PotentialParams& p, int n_max) {
    require_variant(p, Variant::PTSymmetric);
    return physical_only(candidates(p, n_max), "PT-symmetric");
}

std::vector<BoundState> nonpt_spectrum(const PotentialParams& p, int n_max) {
    require_variant(p, Variant::NonPTNonHermitian);
    return physical_only(candidates(p, n_max), "non-PT");
}

std::vector<BoundState> pseudo_spectrum(const PotentialParams& p, int n_max) {
    require_variant(p, Variant::PseudoHermitian);
    return physical_only(candidates(p, n_max), "pseudo-Hermitian");
}

std::vector<BoundState> spectrum(const PotentialParams& p, int n_max) {
    switch (p.variant()) {
        case Variant::RealHermitian: return real_spectrum(p, n_max);
        case Variant::PTSymmetric: return pt_spectrum(p, n_max);
        case Variant::NonPTNonHermitian: return nonpt_spectrum(p, n_max);
        case Variant::PseudoHermitian: return pseudo_spectrum(p, n_max);
    }
    return {};
}

std::vector<std::string> gate_defects(const PotentialParams& p, int n_max) {
    std::vector<std::string> out;
    if (p.variant() == Variant::RealHermitian) return out;
    for (const auto& st : candidates(p, n_max)) {
        if (!st.defect.empty()) out.push_back(st.defect);
    }
    return out;
}

SchrodingerDimensionless schrodinger_dimensionless(const PotentialParams& p, Complex E) {
    require_q(p);
    const double al2 = p.alpha() * p.alpha();
    const double m = p.m();
    SchrodingerDimensionless d;
    d.eps2 = 2.0 * m * E / al2;
    d.beta2 = -2.0 * m * p.V0() / (al2 * p.q());
    d.c = std::sqrt(d.eps2 - d.beta2);
    d.gamma_nr = m * p.V0() / (p.q() * al2);
    return d;
}

double schrodinger_complex_spectrum(const PotentialParams& p, int n) {
    require_q(p);
    const double al2 = p.alpha() * p.alpha();
    const double gamma_nr = p.m() * p.V0() / (p.q() * al2);
    const double bracket = (n + 1.0) / 2.0 - gamma_nr / (n + 1.0);
    return al2 / (2.0 * p.m()) * bracket * bracket;
}

QuantizationResult schrodinger_residual(const PotentialParams& p, Complex E, int n) {
    const ProblemHook hook = [&p](Complex e) {
        const auto d = schrodinger_dimensionless(p, e);
        return schrodinger_problem(d.eps2, d.beta2);
    };
    return quantization_residual(hook, E, n);
}

SchrodingerState schrodinger_state(const PotentialParams& p, int n) {
    SchrodingerState st;
    st.n = n;
    st.E = schrodinger_complex_spectrum(p, n);
    st.dims = schrodinger_dimensionless(p, st.E);
    const double w = -(n + 1.0);
    st.eps = -((n + 1.0) / 2.0 - st.dims.gamma_nr / (n + 1.0));
    st.c = w - st.eps;
    st.residual = scaled_residual(schrodinger_residual(p, st.E, n));
    return st;
}

}  // namespace kgws
