#include "kgws/wavefn.hpp"

#include <cmath>

#include "kgws/errors.hpp"
#include "kgws/quadrature.hpp"

namespace kgws {

namespace {

constexpr int kMaxRodriguesDegree = 8;

// a (a-1) ... (a-k+1)
Complex falling(Complex a, int k) {
    Complex out = 1.0;
    for (int j = 0; j < k; ++j) out *= a - double(j);
    return out;
}

double binomial(int n, int k) {
    double out = 1.0;
    for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
    return out;
}

bool usable(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z) > 0.0;
}

WavefunctionSpec make_spec(int n, Complex A, Complex B, Variant variant, Variant s_map) {
    WavefunctionSpec wf;
    wf.A = A;
    wf.B = B;
    wf.jacobi = {n, 2.0 * A, 2.0 * B};
    wf.variant = variant;
    wf.s_map = s_map;
    wf.norm_label = variant == Variant::RealHermitian ? "norm" : "formal norm";
    return wf;
}

Complex to_normalization(Complex inv_sq, bool flagged_normalizable) {
    const double scale = std::abs(inv_sq);
    const bool zero = !(scale > 1e-300);
    const bool negative_real =
        inv_sq.real() < 0.0 && std::abs(inv_sq.imag()) <= 1e-12 * std::abs(inv_sq.real());
    if (flagged_normalizable && (zero || negative_real)) {
        throw NonNormalizable("closed-form N^-2 is zero or negative for a normalizable state");
    }
    if (zero) throw NonNormalizable("closed-form N^-2 vanishes");
    return 1.0 / std::sqrt(inv_sq);
}

}  // namespace

Complex moment_argument(Variant v) {
    switch (v) {
        case Variant::NonPTNonHermitian:
        case Variant::PseudoHermitian: return kI;
        default: return 1.0;
    }
}

WavefunctionSpec build_wavefunction(const PotentialParams& p, const BoundState& state) {
    auto wf = make_spec(state.n, state.b_signed, state.eps, p.variant(), p.variant());
    try {
        const Complex N = normalization_closed_form(p, state);
        if (usable(N)) {
            wf.N = N;
        } else {
            wf.norm_note = "closed-form normalization is not finite";
        }
    } catch (const Error& e) {
        wf.norm_note = e.what();
    }
    return wf;
}

WavefunctionSpec build_schrodinger_wavefunction(const PotentialParams& p,
                                                const SchrodingerState& state) {
    auto wf = make_spec(state.n, state.c, state.eps, Variant::PTSymmetric, Variant::PTSymmetric);
    wf.norm_label = "formal norm";
    try {
        const Complex N = normalization_closed_form(p, state);
        if (usable(N)) {
            wf.N = N;
        } else {
            wf.norm_note = "closed-form normalization is not finite";
        }
    } catch (const Error& e) {
        wf.norm_note = e.what();
    }
    return wf;
}

Complex evaluate_unnormalized(const WavefunctionSpec& wf, Complex s, Complex one_minus_s) {
    const Complex poly = jacobi_poly(wf.jacobi, one_minus_s - s);
    return std::pow(s, wf.A) * std::pow(one_minus_s, wf.B) * poly;
}

Complex evaluate_unnormalized(const WavefunctionSpec& wf, Complex s) {
    return evaluate_unnormalized(wf, s, 1.0 - s);
}

Complex evaluate(const WavefunctionSpec& wf, Complex s) {
    return wf.N.value_or(1.0) * evaluate_unnormalized(wf, s);
}

Complex rodrigues_eval(int n, Complex A, Complex B, Complex s) {
    if (n < 0 || n > kMaxRodriguesDegree) {
        throw ConfigError("Rodrigues evaluation supports 0 <= n <= 8");
    }
    Complex sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        sum += binomial(n, k) * falling(double(n) + 2.0 * A, k) * sign *
               falling(double(n) + 2.0 * B, n - k) * std::pow(s, n - k) * std::pow(1.0 - s, k);
    }
    return sum;
}

std::vector<Complex> rodrigues_coefficients(int n, Complex A, Complex B) {
    if (n < 0 || n > kMaxRodriguesDegree) {
        throw ConfigError("Rodrigues evaluation supports 0 <= n <= 8");
    }
    std::vector<Complex> coeffs(static_cast<std::size_t>(n + 1), 0.0);
    for (int k = 0; k <= n; ++k) {
        const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        const Complex c = binomial(n, k) * falling(double(n) + 2.0 * A, k) * sign *
                          falling(double(n) + 2.0 * B, n - k);
        // s^(n-k) (1-s)^k
        for (int j = 0; j <= k; ++j) {
            const double sj = (j % 2 == 0) ? 1.0 : -1.0;
            coeffs[static_cast<std::size_t>(n - k + j)] += c * binomial(k, j) * sj;
        }
    }
    return coeffs;
}

Complex normalization_inverse_square(int n, Complex A, Complex B, Complex z) {
    const double nd = n;
    const Complex two_a = 2.0 * A;
    const Complex two_b = 2.0 * B;
    const Complex log_pre = ln_gamma(nd + two_b + 1.0) + 2.0 * ln_gamma(nd + two_a + 1.0) -
                            ln_gamma(nd + two_b + two_a + 1.0);
    Complex total = 0.0;
    for (int p = 0; p <= n; ++p) {
        const double pd = p;
        const Complex log_p = -ln_gamma(pd + 1.0) - ln_gamma(nd - pd + 1.0) -
                              ln_gamma(pd + two_b + 1.0) - ln_gamma(nd + two_a - pd + 1.0);
        const double sign_p = (p % 2 == 0) ? 1.0 : -1.0;
        for (int r = 0; r <= n; ++r) {
            const double rd = r;
            const Complex log_r = ln_gamma(nd + two_b + two_a + rd + 1.0) - ln_gamma(rd + 1.0) -
                                  ln_gamma(nd - rd + 1.0) - ln_gamma(two_a + rd + 1.0);
            const double sign_r = (r % 2 == 0) ? 1.0 : -1.0;
            const Complex a0 = nd + two_a + rd - pd + 1.0;
            const Complex moment = gauss_2f1({a0, -pd - two_b, a0 + 1.0, z}) / a0;
            total += sign_p * sign_r * std::exp(log_pre + log_p + log_r) * moment;
        }
    }
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    return sign_n * total;
}

Complex normalization_closed_form(const PotentialParams& p, const BoundState& state) {
    const Complex inv_sq = normalization_inverse_square(state.n, state.b_signed, state.eps,
                                                        moment_argument(p.variant()));
    return to_normalization(inv_sq, state.normalizable);
}

Complex normalization_closed_form(const PotentialParams&, const SchrodingerState& state) {
    const Complex inv_sq = normalization_inverse_square(state.n, state.c, state.eps, 1.0);
    const bool flagged = state.c.real() > 0.0 && state.eps.real() > 0.0;
    return to_normalization(inv_sq, flagged);
}

double normalization_quadrature(const WavefunctionSpec& wf) {
    const auto f = [&wf](double s, double one_minus_s) {
        const Complex v = evaluate_unnormalized(wf, s, one_minus_s);
        return Complex(std::norm(v), 0.0);
    };
    const auto r = integrate_unit_interval(f, 1e-9);
    if (r.error_estimate > 1e-9) {
        throw QuadratureFailure("normalization quadrature error estimate above 1e-9",
                                r.error_estimate);
    }
    return r.value.real();
}

double normalization_quadrature(const PotentialParams& p, const BoundState& state) {
    return normalization_quadrature(build_wavefunction(p, state));
}

std::vector<WavefunctionSample> sample_wavefunction(const PotentialParams& p,
                                                    const WavefunctionSpec& wf, double from,
                                                    double to, int steps) {
    const auto mapped = p.with_variant(wf.s_map);
    std::vector<WavefunctionSample> out;
    for (double x : x_grid(mapped, from, to, steps)) {
        const Complex s = map_x_to_s(mapped, x);
        out.push_back({x, s, evaluate(wf, s)});
    }
    return out;
}

int count_nodes(const WavefunctionSpec& wf, int points) {
    int nodes = 0;
    double prev = 0.0;
    for (int i = 1; i <= points; ++i) {
        const double s = double(i) / (points + 1);
        const double v = evaluate_unnormalized(wf, s, 1.0 - s).real();
        if (v == 0.0) continue;
        if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++nodes;
        prev = v;
    }
    return nodes;
}

}  // namespace kgws
