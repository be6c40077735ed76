#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace kgws {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// The four forms of the generalized Woods-Saxon potential. Each complex form
/// is obtained from the real one by a fixed parameter substitution.
enum class Variant {
    RealHermitian,      ///< V0, q, alpha all real
    PTSymmetric,        ///< alpha -> i alpha
    NonPTNonHermitian,  ///< V0 -> i V0, q -> i q
    PseudoHermitian,    ///< V0 -> i V0, alpha -> i alpha, q -> i q
};

/// Short name used by the CLI and the JSON schema: real | pt | nonpt | pseudo.
std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);
/// Human-readable substitution rule, e.g. "alpha -> i*alpha".
std::string_view substitution_rule(Variant v);

/// Parameters after the variant's substitution has been applied.
struct ComplexifiedParams {
    Complex V0;
    Complex q;
    Complex alpha;

    Complex vtilde() const { return V0 / q; }
};

/// One problem instance. Immutable; use the `with_*` helpers to derive
/// neighbouring instances for sweeps. Units: hbar = c = 1.
class PotentialParams {
public:
    /// Throws ConfigError unless a > 0, m > 0 and every value is finite.
    PotentialParams(double V0, double q, double a, double m,
                    Variant variant = Variant::RealHermitian, double R0 = 0.0);

    static PotentialParams from_alpha(double V0, double q, double alpha, double m,
                                      Variant variant = Variant::RealHermitian,
                                      double R0 = 0.0);

    double V0() const noexcept { return V0_; }
    double q() const noexcept { return q_; }
    double a() const noexcept { return a_; }
    double alpha() const noexcept { return alpha_; }
    double m() const noexcept { return m_; }
    double R0() const noexcept { return R0_; }
    /// s-wave only.
    int l() const noexcept { return 0; }
    Variant variant() const noexcept { return variant_; }

    PotentialParams with_V0(double V0) const;
    PotentialParams with_q(double q) const;
    PotentialParams with_alpha(double alpha) const;
    PotentialParams with_m(double m) const;
    PotentialParams with_R0(double R0) const;
    PotentialParams with_variant(Variant v) const;

    ComplexifiedParams complexified() const;

    /// x = r - R0.
    double x_from_r(double r) const noexcept { return r - R0_; }

private:
    double V0_;
    double q_;
    double a_;
    double alpha_;
    double m_;
    double R0_;
    Variant variant_;
};

/// R0 = r0 * A^(1/3).
double nuclear_radius(double r0, double mass_number);

/// Dimensionless Klein-Gordon combinations for a trial energy E.
struct DimensionlessKG {
    Complex eps2;    ///< -(E^2 - m^2) / alpha^2
    Complex beta2;   ///< 2 E Vtilde / alpha^2
    Complex gamma2;  ///< Vtilde^2 / alpha^2
    Complex vtilde;  ///< V0 / q
};

/// Potential value V_q(x) using the variant's explicit closed form. Throws
/// PoleError (carrying the pole abscissa) when the denominator vanishes.
Complex potential_value(const PotentialParams& p, double x);

/// s(x) = 1 / (1 + q e^{-alpha x}) with the variant's complexified q, alpha.
Complex map_x_to_s(const PotentialParams& p, double x);

/// Throws ConditionViolated when q == 0 (alpha > 0 holds by construction).
DimensionlessKG dimensionless_kg(const PotentialParams& p, Complex E);

/// Poles of the potential inside [from, to], ascending.
std::vector<double> pole_locations(const PotentialParams& p, double from, double to);

/// Uniform grid of `steps` points over [from, to] with every point closer
/// than `guard` to a pole removed.
std::vector<double> x_grid(const PotentialParams& p, double from, double to, int steps,
                           double guard = 1e-6);

}  // namespace kgws
