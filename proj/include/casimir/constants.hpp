#pragma once

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir {

/// CODATA 2018 exact values (SI). Fixed at compile time, never mutated.
struct PhysicalConstants {
    double hbar;  ///< reduced Planck constant (J s)
    double c;     ///< speed of light (m/s)
    double k_B;   ///< Boltzmann constant (J/K)
};

inline constexpr PhysicalConstants codata{1.054571817e-34, 2.99792458e8, 1.380649e-23};

/// Elementary charge (C); equals joules per eV.
inline constexpr double elementary_charge = 1.602176634e-19;

inline constexpr double pi = std::numbers::pi;

/// Reference scale used to nondimensionalize frequencies inside the numerics.
/// Conventionally omega_ref = omega_p of the active material, with c/L as fallback.
struct FrequencyScale {
    double omega_ref;   ///< reference angular frequency (rad/s)
    double length_ref;  ///< c / omega_ref (m)

    explicit FrequencyScale(double omega) : omega_ref(omega), length_ref(codata.c / omega) {
        if (!(omega > 0.0)) throw invalid_configuration("FrequencyScale: omega_ref must be > 0");
    }
};

/// Photon energy in eV -> angular frequency (rad/s).
inline double ev_to_angular(double energy_ev) {
    return energy_ev * elementary_charge / codata.hbar;
}

/// Angular frequency (rad/s) -> photon energy in eV. Inverse of ev_to_angular.
inline double angular_to_ev(double omega) {
    return omega * codata.hbar / elementary_charge;
}

/// Matsubara angular frequency xi_n = n 2 pi k_B T / hbar.
/// Strictly increasing in n; exactly n times xi_1; zero for n = 0.
inline double matsubara_frequency(int n, double temperature) {
    if (!(temperature > 0.0))
        throw invalid_configuration("matsubara_frequency: temperature must be strictly positive");
    if (n < 0) throw invalid_configuration("matsubara_frequency: n must be non-negative");
    return static_cast<double>(n) * (2.0 * pi * codata.k_B * temperature / codata.hbar);
}

namespace units {
inline double nm_to_m(double nm) { return nm * 1e-9; }
inline double m_to_nm(double m) { return m * 1e9; }
}  // namespace units

}  // namespace casimir
