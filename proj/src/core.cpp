#include "kgws/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

constexpr double kPoleTol = 64 * std::numeric_limits<double>::epsilon();

bool unit_modulus(double q) { return std::abs(std::abs(q) - 1.0) < 1e-12; }

// Nearest x to `x` with alpha*x = phase0 + 2*pi*k.
double nearest_periodic(double x, double alpha, double phase0) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double k = std::round((alpha * x - phase0) / two_pi);
    return (phase0 + two_pi * k) / alpha;
}

// Phase of alpha*x at which the periodic denominators vanish (|q| = 1 only).
double periodic_pole_phase(const PotentialParams& p) {
    if (p.variant() == Variant::PTSymmetric) {
        // q^2 + 2q cos(alpha x) + 1 = 0  =>  cos = -sign(q)
        return p.q() > 0 ? std::numbers::pi : 0.0;
    }
    // 1 + 2q sin(alpha x) + q^2 = 0  =>  sin = -sign(q)
    return p.q() > 0 ? -0.5 * std::numbers::pi : 0.5 * std::numbers::pi;
}

[[noreturn]] void throw_pole(const PotentialParams& p, double x_pole) {
    throw PoleError("potential denominator vanishes (" + std::string(to_string(p.variant())) +
                        " variant) at x = " + std::to_string(x_pole),
                    Complex(x_pole, 0.0));
}

}  // namespace

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::RealHermitian: return "real";
        case Variant::PTSymmetric: return "pt";
        case Variant::NonPTNonHermitian: return "nonpt";
        case Variant::PseudoHermitian: return "pseudo";
    }
    return "real";
}

Variant variant_from_string(std::string_view name) {
    if (name == "real") return Variant::RealHermitian;
    if (name == "pt") return Variant::PTSymmetric;
    if (name == "nonpt") return Variant::NonPTNonHermitian;
    if (name == "pseudo") return Variant::PseudoHermitian;
    throw ConfigError("unknown variant '" + std::string(name) +
                      "' (expected real | pt | nonpt | pseudo)");
}

std::string_view substitution_rule(Variant v) {
    switch (v) {
        case Variant::RealHermitian: return "none";
        case Variant::PTSymmetric: return "alpha -> i*alpha";
        case Variant::NonPTNonHermitian: return "V0 -> i*V0, q -> i*q";
        case Variant::PseudoHermitian: return "V0 -> i*V0, alpha -> i*alpha, q -> i*q";
    }
    return "none";
}

PotentialParams::PotentialParams(double V0, double q, double a, double m, Variant variant,
                                 double R0)
    : V0_(V0), q_(q), a_(a), alpha_(1.0 / a), m_(m), R0_(R0), variant_(variant) {
    if (!std::isfinite(V0) || !std::isfinite(q) || !std::isfinite(a) || !std::isfinite(m) ||
        !std::isfinite(R0)) {
        throw ConfigError("potential parameters must be finite");
    }
    if (!(a > 0.0)) throw ConfigError("diffuseness a must be > 0");
    if (!(m > 0.0)) throw ConfigError("mass m must be > 0");
}

PotentialParams PotentialParams::from_alpha(double V0, double q, double alpha, double m,
                                            Variant variant, double R0) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be > 0");
    PotentialParams p(V0, q, 1.0 / alpha, m, variant, R0);
    p.alpha_ = alpha;
    return p;
}

PotentialParams PotentialParams::with_V0(double V0) const {
    auto p = *this;
    if (!std::isfinite(V0)) throw ConfigError("V0 must be finite");
    p.V0_ = V0;
    return p;
}

PotentialParams PotentialParams::with_q(double q) const {
    auto p = *this;
    if (!std::isfinite(q)) throw ConfigError("q must be finite");
    p.q_ = q;
    return p;
}

PotentialParams PotentialParams::with_alpha(double alpha) const {
    return from_alpha(V0_, q_, alpha, m_, variant_, R0_);
}

PotentialParams PotentialParams::with_m(double m) const {
    return PotentialParams(V0_, q_, a_, m, variant_, R0_);
}

PotentialParams PotentialParams::with_R0(double R0) const {
    auto p = *this;
    if (!std::isfinite(R0)) throw ConfigError("R0 must be finite");
    p.R0_ = R0;
    return p;
}

PotentialParams PotentialParams::with_variant(Variant v) const {
    auto p = *this;
    p.variant_ = v;
    return p;
}

ComplexifiedParams PotentialParams::complexified() const {
    switch (variant_) {
        case Variant::RealHermitian: return {V0_, q_, alpha_};
        case Variant::PTSymmetric: return {V0_, q_, kI * alpha_};
        case Variant::NonPTNonHermitian: return {kI * V0_, kI * q_, alpha_};
        case Variant::PseudoHermitian: return {kI * V0_, kI * q_, kI * alpha_};
    }
    return {V0_, q_, alpha_};
}

double nuclear_radius(double r0, double mass_number) { return r0 * std::cbrt(mass_number); }

Complex potential_value(const PotentialParams& p, double x) {
    const double V0 = p.V0();
    const double q = p.q();
    const double al = p.alpha();
    switch (p.variant()) {
        case Variant::RealHermitian: {
            // -V0 t / (1 + q t), t = e^{-alpha x}; divide through by t when t > 1.
            const double ax = al * x;
            if (ax >= 0.0) {
                const double t = std::exp(-ax);
                const double den = 1.0 + q * t;
                if (std::abs(den) <= kPoleTol * (1.0 + std::abs(q * t))) {
                    throw_pole(p, p.a() * std::log(-q));
                }
                return -V0 * t / den;
            }
            const double u = std::exp(ax);
            const double den = u + q;
            if (std::abs(den) <= kPoleTol * (u + std::abs(q))) throw_pole(p, p.a() * std::log(-q));
            return -V0 / den;
        }
        case Variant::PTSymmetric: {
            const double c = std::cos(al * x);
            const double s = std::sin(al * x);
            const double den = q * q + 2.0 * q * c + 1.0;
            if (std::abs(den) <= kPoleTol * (q * q + 2.0 * std::abs(q) + 1.0)) {
                throw_pole(p, nearest_periodic(x, al, periodic_pole_phase(p)));
            }
            return -V0 * Complex(q + c, -s) / den;
        }
        case Variant::NonPTNonHermitian: {
            // -V0 (q t^2 + i t) / (1 + q^2 t^2); never singular for real q.
            const double ax = al * x;
            if (ax >= 0.0) {
                const double t = std::exp(-ax);
                return -V0 * Complex(q * t * t, t) / (1.0 + q * q * t * t);
            }
            const double u = std::exp(ax);  // 1/t
            return -V0 * Complex(q, u) / (u * u + q * q);
        }
        case Variant::PseudoHermitian: {
            const double c = std::cos(al * x);
            const double s = std::sin(al * x);
            const double den = q * q + 2.0 * q * s + 1.0;
            if (std::abs(den) <= kPoleTol * (q * q + 2.0 * std::abs(q) + 1.0)) {
                throw_pole(p, nearest_periodic(x, al, periodic_pole_phase(p)));
            }
            return -V0 * Complex(q + s, c) / den;
        }
    }
    return 0.0;
}

Complex map_x_to_s(const PotentialParams& p, double x) {
    const double q = p.q();
    const double al = p.alpha();
    switch (p.variant()) {
        case Variant::RealHermitian: {
            const double ax = al * x;
            if (ax >= 0.0) {
                const double t = std::exp(-ax);
                const double den = 1.0 + q * t;
                if (std::abs(den) <= kPoleTol * (1.0 + std::abs(q * t))) {
                    throw_pole(p, p.a() * std::log(-q));
                }
                return 1.0 / den;
            }
            const double u = std::exp(ax);
            const double den = u + q;
            if (std::abs(den) <= kPoleTol * (u + std::abs(q))) throw_pole(p, p.a() * std::log(-q));
            return u / den;
        }
        case Variant::NonPTNonHermitian: {
            const double ax = al * x;
            if (ax >= 0.0) return 1.0 / Complex(1.0, q * std::exp(-ax));
            const double u = std::exp(ax);
            return u / Complex(u, q);
        }
        case Variant::PTSymmetric:
        case Variant::PseudoHermitian: {
            const auto c = p.complexified();
            const Complex den = 1.0 + c.q * std::exp(-c.alpha * x);
            if (std::abs(den) <= kPoleTol * (1.0 + std::abs(q))) {
                throw_pole(p, nearest_periodic(x, al, periodic_pole_phase(p)));
            }
            return 1.0 / den;
        }
    }
    return 0.0;
}

DimensionlessKG dimensionless_kg(const PotentialParams& p, Complex E) {
    if (p.q() == 0.0) throw ConditionViolated("q != 0", "closed forms divide by q");
    const auto c = p.complexified();
    const Complex al2 = c.alpha * c.alpha;
    const Complex vt = c.vtilde();
    const double m = p.m();
    return {(m * m - E * E) / al2, 2.0 * E * vt / al2, vt * vt / al2, vt};
}

std::vector<double> pole_locations(const PotentialParams& p, double from, double to) {
    std::vector<double> out;
    if (to < from) std::swap(from, to);
    switch (p.variant()) {
        case Variant::RealHermitian:
            if (p.q() < 0.0) {
                const double x0 = p.a() * std::log(-p.q());
                if (x0 >= from && x0 <= to) out.push_back(x0);
            }
            break;
        case Variant::NonPTNonHermitian: break;
        case Variant::PTSymmetric:
        case Variant::PseudoHermitian: {
            if (!unit_modulus(p.q())) break;
            const double period = 2.0 * std::numbers::pi / p.alpha();
            const double phase = periodic_pole_phase(p) / p.alpha();
            double x = phase + period * std::ceil((from - phase) / period);
            for (; x <= to; x += period) out.push_back(x);
            break;
        }
    }
    return out;
}

std::vector<double> x_grid(const PotentialParams& p, double from, double to, int steps,
                           double guard) {
    if (steps < 1) throw ConfigError("grid needs at least one point");
    const auto poles = pole_locations(p, from - guard, to + guard);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double x = steps == 1 ? from : from + (to - from) * i / (steps - 1);
        const bool near_pole = std::any_of(poles.begin(), poles.end(),
                                           [&](double xp) { return std::abs(x - xp) < guard; });
        if (!near_pole) xs.push_back(x);
    }
    return xs;
}

}  // namespace kgws
