#pragma once

#include <cmath>
#include <complex>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"

namespace casimir {

/// Geometry and thermodynamics of the two-mirror cavity. Mirrors are identical.
struct CavityConfig {
    double L;  ///< gap between the mirrors (m), > 0
    double d;  ///< mirror slab width (m), > 0 or semi_infinite
    double T;  ///< temperature (K), strictly > 0
    DielectricModel model;

    CavityConfig(double gap, double width, double temperature, DielectricModel mat)
        : L(gap), d(width), T(temperature), model(mat) {
        if (!(L > 0.0)) throw invalid_configuration("CavityConfig: L must be > 0");
        if (!(d > 0.0)) throw invalid_configuration("CavityConfig: d must be > 0");
        if (!(T > 0.0)) throw invalid_configuration("CavityConfig: T must be strictly positive");
    }
};

/// One field mode: transverse wavenumber, polarization, complex frequency.
struct ModeCoordinate {
    double k;  ///< transverse wavenumber (rad/m), >= 0
    Polarization pol;
    Complex z;  ///< complex frequency (rad/s)
};

/// Open-loop function rho = r^2 exp(2 i k_z L): one cavity round trip.
inline Complex open_loop(const CavityConfig& cfg, const ModeCoordinate& mode) {
    const Complex r = slab_reflection(cfg.model, mode.z, mode.k, mode.pol, cfg.d);
    const Complex phase = std::exp(Complex(0.0, 2.0) * vacuum_kz(mode.z, mode.k) * cfg.L);
    return r * r * phase;
}

/// Closed-loop function f = rho / (1 - rho). Poles of f are the cavity resonances.
inline Complex closed_loop(const CavityConfig& cfg, const ModeCoordinate& mode) {
    const Complex rho = open_loop(cfg, mode);
    const Complex denom = 1.0 - rho;
    if (denom == Complex(0.0, 0.0))
        throw singular_evaluation("closed_loop: evaluated at a cavity resonance (rho = 1)",
                                  mode.z);
    return rho / denom;
}

/// f at exactly z = 0, through the exact limit values of the reflection amplitude.
/// This is the kappa_0 f(0) building block of every n = 0 Matsubara term.
inline double closed_loop_zero(const CavityConfig& cfg, double k, Polarization pol) {
    const Complex r0c = slab_reflection(cfg.model, Complex(0.0, 0.0), k, pol, cfg.d);
    const double r0 = r0c.real();
    const double rho0 = r0 * r0 * std::exp(-2.0 * k * cfg.L);
    return rho0 / (1.0 - rho0);
}

/// Energy-density ratio g = (1 - |rho|^2)/|1 - rho|^2 = 1 + f + f* for real omega.
/// g > 1 at resonance (repulsive contribution), g < 1 out of resonance.
inline double energy_ratio(const CavityConfig& cfg, const ModeCoordinate& mode) {
    if (mode.z.imag() != 0.0)
        throw invalid_configuration("energy_ratio: defined for real frequencies only");
    const Complex rho = open_loop(cfg, mode);
    const Complex one_minus = 1.0 - rho;
    if (one_minus == Complex(0.0, 0.0))
        throw singular_evaluation("energy_ratio: evaluated at a cavity resonance", mode.z);
    return (1.0 - std::norm(rho)) / std::norm(one_minus);
}

namespace detail {

/// coth without overflow: for Re w > 0 use 1 + 2/(e^{2w} - 1), reflect by oddness.
inline Complex coth(Complex w) {
    if (w.real() < 0.0) return -coth(-w);
    if (w.real() > 350.0) return Complex(1.0, 0.0);
    return 1.0 + 2.0 / (std::exp(2.0 * w) - 1.0);
}

}  // namespace detail

/// Photon weight C(z) = coth(hbar z / 2 k_B T) = 1 + 2 n_z. Simple poles at the
/// Matsubara frequencies i xi_n (for every integer n) with residue 2 k_B T / hbar.
inline Complex photon_weight(double T, Complex z) {
    if (!(T > 0.0)) throw invalid_configuration("photon_weight: T must be strictly positive");
    const double xi1 = 2.0 * pi * codata.k_B * T / codata.hbar;
    const double n_guess = std::round(z.imag() / xi1);
    const Complex pole = Complex(0.0, n_guess * xi1);
    const double scale = std::max(std::abs(z), xi1);
    if (std::abs(z - pole) < 1e-13 * scale) {
        throw singular_evaluation("photon_weight: z is at a Matsubara pole", z,
                                  static_cast<int>(n_guess));
    }
    return detail::coth(codata.hbar * z / (2.0 * codata.k_B * T));
}

/// Spectral density of one mode, p = hbar k_z f C. Carries the mirror symmetry
/// p(-z*)* = p(z); Re p is even and Im p odd on the real axis.
inline Complex spectral_density(const CavityConfig& cfg, const ModeCoordinate& mode) {
    return codata.hbar * vacuum_kz(mode.z, mode.k) * closed_loop(cfg, mode) *
           photon_weight(cfg.T, mode.z);
}

}  // namespace casimir
