#include "kgws/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

const double kLnSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

std::string to_str(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

Complex series_2f1(Complex a, Complex b, Complex c, Complex z) {
    Complex sum = 1.0;
    Complex term = 1.0;
    int small_run = 0;
    constexpr int kMaxTerms = 10000;
    for (int k = 0; k < kMaxTerms; ++k) {
        term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * z;
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) {
            if (++small_run >= 3) return sum;
        } else {
            small_run = 0;
        }
    }
    throw DivergenceError("2F1 series did not converge within 10^4 terms at z = " + to_str(z));
}

// Explicit sum: P_n = (1/n!) sum_k (-1)^k C(n,k) (n+rho+nu+1)_k (rho+k+1)_{n-k} t^k,
// t = (1 - z)/2. Free of divisions by parameter-dependent quantities.
Complex jacobi_pochhammer_sum(const JacobiParams& p, Complex z) {
    const int n = p.n;
    const Complex t = (1.0 - z) / 2.0;
    Complex sum = 0.0;
    double binom = 1.0;  // C(n, k)
    Complex rising_top = 1.0;  // (n+rho+nu+1)_k
    Complex tk = 1.0;
    for (int k = 0; k <= n; ++k) {
        Complex tail = 1.0;  // (rho+k+1)_{n-k}
        for (int j = 0; j < n - k; ++j) tail *= p.rho + double(k + 1 + j);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * rising_top * tail * tk;
        rising_top *= double(n) + p.rho + p.nu + 1.0 + double(k);
        binom = binom * double(n - k) / double(k + 1);
        tk *= t;
    }
    double nfact = 1.0;
    for (int j = 2; j <= n; ++j) nfact *= j;
    return sum / nfact;
}

void check_degree(const JacobiParams& p) {
    if (p.n < 0) throw ConfigError("Jacobi degree must be >= 0");
}

}  // namespace

bool is_nonpositive_integer(Complex z) {
    const double re = z.real();
    if (re > 0.5) return false;
    const double nearest = std::round(re);
    const double scale = std::max(1.0, std::abs(re));
    return std::abs(z.imag()) <= 1e-14 * scale && std::abs(re - nearest) <= 1e-14 * scale;
}

Complex ln_gamma(Complex z) {
    if (is_nonpositive_integer(z)) throw PoleError("Gamma pole at " + to_str(z), z);
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) -
               ln_gamma(1.0 - z);
    }
    const Complex zm1 = z - 1.0;
    Complex x = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        x += kLanczosCoeffs[i] / (zm1 + double(i));
    }
    const Complex t = zm1 + kLanczosG + 0.5;
    return kLnSqrt2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(x);
}

Complex gamma(Complex z) { return std::exp(ln_gamma(z)); }

Complex rgamma(Complex z) {
    if (is_nonpositive_integer(z)) return 0.0;
    return std::exp(-ln_gamma(z));
}

Complex beta(Complex x, Complex y) {
    return std::exp(ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y));
}

Complex gauss_2f1(const Hyp2F1Args& args) {
    const auto [a, b, c, z] = args;
    if (is_nonpositive_integer(c)) {
        throw PoleError("2F1 undefined: c0 = " + to_str(c) + " is a non-positive integer", c);
    }
    if (z == Complex(0.0)) return 1.0;

    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        // Polynomial: the recurrence hits an exact zero term; sum to the end.
        const int n = static_cast<int>(
            std::round(-(is_nonpositive_integer(a) ? a.real() : b.real())));
        Complex sum = 1.0;
        Complex term = 1.0;
        for (int k = 0; k < n; ++k) {
            term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * z;
            sum += term;
        }
        return sum;
    }

    if (std::abs(z - 1.0) < 1e-14) {
        const Complex s = c - a - b;
        if (!(s.real() > 0.0)) {
            throw DivergenceError("2F1 at z = 1 diverges: Re(c0 - a0 - b0) = " +
                                  std::to_string(s.real()) + " <= 0");
        }
        return std::exp(ln_gamma(c) + ln_gamma(s)) * rgamma(c - a) * rgamma(c - b);
    }

    if (std::abs(z) < 0.9) return series_2f1(a, b, c, z);

    const Complex w = z / (z - 1.0);
    if (std::abs(w) < 0.9) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^{-b} 2F1(c-a, b; c; z/(z-1))
        if (is_nonpositive_integer(c - a)) {
            return std::pow(1.0 - z, -b) * gauss_2f1({c - a, b, c, w});
        }
        return std::pow(1.0 - z, -b) * series_2f1(c - a, b, c, w);
    }
    throw DivergenceError("2F1 argument " + to_str(z) + " outside the supported regime");
}

Complex jacobi_poly(const JacobiParams& p, Complex z) {
    check_degree(p);
    if (p.n == 0) return 1.0;
    // Expand about the nearer endpoint, P_n^(a,b)(-z) = (-1)^n P_n^(b,a)(z).
    if (std::abs(1.0 + z) < std::abs(1.0 - z)) {
        const double sign = (p.n % 2 == 0) ? 1.0 : -1.0;
        return sign * jacobi_pochhammer_sum({p.n, p.nu, p.rho}, -z);
    }
    return jacobi_pochhammer_sum(p, z);
}

Complex jacobi_recurrence(const JacobiParams& p, Complex z) {
    check_degree(p);
    if (p.n == 0) return 1.0;
    const Complex al = p.rho;
    const Complex be = p.nu;
    Complex y0 = 1.0;
    Complex y1 = (al + 1.0) + (al + be + 2.0) * (z - 1.0) / 2.0;
    for (int k = 2; k <= p.n; ++k) {
        const double kd = k;
        const Complex s = 2.0 * kd + al + be;
        const Complex denom = 2.0 * kd * (kd + al + be) * (s - 2.0);
        if (std::abs(denom) < 1e-12 * (1.0 + std::abs(s) * std::abs(s) * kd)) {
            return jacobi_pochhammer_sum(p, z);
        }
        const Complex g1 = (s - 1.0) * (s * (s - 2.0) * z + al * al - be * be);
        const Complex g0 = -2.0 * (kd + al - 1.0) * (kd + be - 1.0) * s;
        const Complex yk = (g1 * y1 + g0 * y0) / denom;
        y0 = y1;
        y1 = yk;
    }
    return y1;
}

Complex jacobi_sum_product_form(const JacobiParams& p, Complex s, Complex q) {
    check_degree(p);
    const int n = p.n;
    const double nd = n;
    const Complex prefactor_log = ln_gamma(nd + p.rho + 1.0) + ln_gamma(nd + p.nu + 1.0);
    Complex sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double kd = k;
        const Complex log_coeff = prefactor_log - ln_gamma(kd + 1.0) - ln_gamma(nd - kd + 1.0) -
                                  ln_gamma(kd + p.nu + 1.0) - ln_gamma(nd + p.rho - kd + 1.0);
        const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(log_coeff) * std::pow(q, n - k) * std::pow(s, n - k) *
               std::pow(1.0 - s, k);
    }
    return sum;
}

Complex jacobi_sum_ascending_form(const JacobiParams& p, Complex s, Complex q) {
    check_degree(p);
    const int n = p.n;
    const double nd = n;
    const Complex ab1 = nd + p.rho + p.nu + 1.0;
    const Complex prefactor_log = ln_gamma(nd + p.rho + 1.0) - ln_gamma(ab1);
    Complex sum = 0.0;
    for (int r = 0; r <= n; ++r) {
        const double rd = r;
        const Complex log_coeff = prefactor_log + ln_gamma(ab1 + rd) - ln_gamma(rd + 1.0) -
                                  ln_gamma(nd - rd + 1.0) - ln_gamma(p.rho + rd + 1.0);
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(log_coeff) * std::pow(q, r) * std::pow(s, r);
    }
    return sum;
}

}  // namespace kgws
