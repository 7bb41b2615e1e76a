#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using Complex = std::complex<double>;

enum class MaterialKind { Drude, Plasma };

/// Local dielectric response of the mirror metal:
///   eps(z) = 1 - omega_p^2 / (z (z + i gamma))
/// The plasma model is the gamma = 0 member of the family; it is a distinct
/// kind because the static conductivity omega_p^2/gamma exists only for gamma > 0.
struct DielectricModel {
    MaterialKind kind;
    double omega_p;  ///< plasma frequency (rad/s)
    double gamma;    ///< damping rate (rad/s); 0 iff kind == Plasma

    static DielectricModel drude(double omega_p, double gamma) {
        if (!(omega_p > 0.0)) throw invalid_configuration("DielectricModel: omega_p must be > 0");
        if (!(gamma > 0.0)) throw invalid_configuration("DielectricModel: Drude requires gamma > 0");
        return {MaterialKind::Drude, omega_p, gamma};
    }
    static DielectricModel plasma(double omega_p) {
        if (!(omega_p > 0.0)) throw invalid_configuration("DielectricModel: omega_p must be > 0");
        return {MaterialKind::Plasma, omega_p, 0.0};
    }

    /// sigma_0 = omega_p^2 / gamma; finite only for the Drude kind.
    double static_conductivity() const {
        if (kind != MaterialKind::Drude)
            throw invalid_configuration("static_conductivity: defined only for the Drude model");
        return omega_p * omega_p / gamma;
    }
};

enum class Polarization { TE, TM };

struct WavevectorPair {
    Complex k_z;  ///< longitudinal wavevector in vacuum (rad/m)
    Complex K_z;  ///< longitudinal wavevector in the medium (rad/m)
};

/// Sentinel for a semi-infinite (bulk) slab.
inline constexpr double semi_infinite = std::numeric_limits<double>::infinity();

namespace detail {

/// Principal square root with the retarded boundary fix: for an argument that is
/// exactly real and negative (which happens only when z sits exactly on an axis),
/// take the limit reached from above the real-z axis. sign_hint is sign(Re z);
/// for Re z == 0 the Re z -> 0+ side is used.
inline Complex retarded_sqrt(Complex w, double sign_hint) {
    if (w.imag() == 0.0) {
        if (w.real() < 0.0) {
            const double s = (sign_hint >= 0.0) ? 1.0 : -1.0;
            return Complex(0.0, -s * std::sqrt(-w.real()));
        }
        return Complex(std::sqrt(w.real()), 0.0);
    }
    return std::sqrt(w);
}

/// eps(z) * z^2 evaluated without forming eps itself, so the z = 0 and z = -i gamma
/// limits stay finite where they should:
///   Drude:  z^2 - omega_p^2 z / (z + i gamma)   (-> 0 as z -> 0)
///   Plasma: z^2 - omega_p^2
inline Complex eps_times_z2(const DielectricModel& m, Complex z) {
    if (m.kind == MaterialKind::Plasma) return z * z - m.omega_p * m.omega_p;
    return z * z - m.omega_p * m.omega_p * z / (z + Complex(0.0, m.gamma));
}

}  // namespace detail

/// Drude/plasma permittivity. Singular at z = 0 and (Drude) z = -i gamma.
inline Complex permittivity(const DielectricModel& m, Complex z) {
    const Complex denom = z * (z + Complex(0.0, m.gamma));
    if (denom == Complex(0.0, 0.0))
        throw singular_evaluation("permittivity: evaluated at a pole of eps", z);
    return 1.0 - m.omega_p * m.omega_p / denom;
}

/// Longitudinal vacuum wavevector k_z(z) = i sqrt(k^2 - z^2/c^2), principal branch,
/// with retarded (limit-from-above) values on the real axis. Analytic across the
/// evanescent segment |Re z| < ck; branch cuts run along the real axis for |Re z| > ck.
/// Sector values: real positive for real z > ck, +i sqrt(k^2 - z^2/c^2) for |z| < ck,
/// i kappa on the imaginary axis, real negative for real z < -ck.
inline Complex vacuum_kz(Complex z, double k) {
    const Complex zc = z / codata.c;
    const Complex w = Complex(k * k, 0.0) - zc * zc;
    const double hint = (z.real() != 0.0) ? z.real() : 1.0;
    return Complex(0.0, 1.0) * detail::retarded_sqrt(w, hint);
}

/// Longitudinal wavevector in the medium, K_z = i sqrt(k^2 - eps z^2/c^2).
/// Branch: Im K_z >= 0 on the real axis approached from above (decaying into the
/// medium), continuous elsewhere except on genuine cuts. Finite at z = 0.
inline Complex medium_Kz(const DielectricModel& m, Complex z, double k) {
    const Complex ez2 = detail::eps_times_z2(m, z) / (codata.c * codata.c);
    const Complex w = Complex(k * k, 0.0) - ez2;
    const double hint = (z.real() != 0.0) ? z.real() : 1.0;
    return Complex(0.0, 1.0) * detail::retarded_sqrt(w, hint);
}

inline WavevectorPair wavevectors(const DielectricModel& m, Complex z, double k) {
    return {vacuum_kz(z, k), medium_Kz(m, z, k)};
}

/// Bulk (semi-infinite mirror) Fresnel amplitude at the vacuum/metal interface.
/// The z = 0 values are the exact limits: r_TM -> 1 for both models,
/// r_TE -> 0 for Drude, r_TE -> (k - sqrt(k^2 + omega_p^2/c^2)) / (k + ...) for plasma.
inline Complex fresnel_reflection(const DielectricModel& m, Complex z, double k,
                                  Polarization pol) {
    if (z == Complex(0.0, 0.0)) {
        if (pol == Polarization::TM) return Complex(1.0, 0.0);
        if (m.kind == MaterialKind::Drude) return Complex(0.0, 0.0);
        const double km = std::hypot(k, m.omega_p / codata.c);
        return Complex((k - km) / (k + km), 0.0);
    }
    const Complex a = vacuum_kz(z, k);
    const Complex b = medium_Kz(m, z, k);
    if (pol == Polarization::TE) {
        const Complex denom = a + b;
        if (denom == Complex(0.0, 0.0))
            throw singular_evaluation("fresnel_reflection: k_z + K_z vanished", z);
        return (a - b) / denom;
    }
    const Complex e = permittivity(m, z);
    const Complex denom = e * a + b;
    if (denom == Complex(0.0, 0.0))
        throw singular_evaluation("fresnel_reflection: eps k_z + K_z vanished", z);
    return (e * a - b) / denom;
}

/// Reflection amplitude of a slab of width d (Fabry-Perot composition of the two
/// interfaces). d = semi_infinite returns the bulk amplitude exactly; the sentinel
/// is kept distinct so no spurious exp(2 i K_z d) is ever formed.
inline Complex slab_reflection(const DielectricModel& m, Complex z, double k, Polarization pol,
                               double d) {
    if (!(d > 0.0)) throw invalid_configuration("slab_reflection: width must be > 0");
    const Complex r = fresnel_reflection(m, z, k, pol);
    if (d == semi_infinite) return r;

    Complex Kz;
    if (z == Complex(0.0, 0.0)) {
        const double q =
            (m.kind == MaterialKind::Plasma) ? std::hypot(k, m.omega_p / codata.c) : k;
        Kz = Complex(0.0, q);
    } else {
        Kz = medium_Kz(m, z, k);
    }
    const Complex phase = std::exp(Complex(0.0, 2.0) * Kz * d);
    const Complex denom = 1.0 - r * r * phase;
    if (denom == Complex(0.0, 0.0))
        throw singular_evaluation("slab_reflection: internal resonance denominator vanished", z);
    return r * (1.0 - phase) / denom;
}

}  // namespace casimir
