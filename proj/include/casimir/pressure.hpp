#pragma once

#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "casimir/cavity.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/spectral.hpp"

namespace casimir {

enum class PressureFormula { MatsubaraPrimed, MatsubaraDoublePrimed, RealAxis, IdealCasimir };

inline const char* to_string(PressureFormula f) {
    switch (f) {
        case PressureFormula::MatsubaraPrimed: return "primed";
        case PressureFormula::MatsubaraDoublePrimed: return "corrected";
        case PressureFormula::RealAxis: return "real-axis";
        case PressureFormula::IdealCasimir: return "ideal";
    }
    return "?";
}

struct PressureResult {
    double value = 0.0;  ///< Pa; negative = attractive
    PressureFormula formula = PressureFormula::MatsubaraPrimed;
    std::vector<double> terms_te;  ///< k-integrated per-n partial terms (Pa)
    std::vector<double> terms_tm;
    int n_terms = 0;
    double error_estimate = 0.0;
};

/// Ideal-mirror zero-temperature pressure -hbar c pi^2 / (240 L^4).
inline double ideal_casimir(double L) {
    if (!(L > 0.0)) throw invalid_configuration("ideal_casimir: L must be > 0");
    return -codata.hbar * codata.c * pi * pi / (240.0 * L * L * L * L);
}

namespace detail {

/// f(i xi_n) for xi > 0; real, >= 0 on the imaginary axis for passive mirrors.
inline double f_on_axis(const CavityConfig& cfg, double k, Polarization pol, double xi) {
    const Complex f = closed_loop(cfg, ModeCoordinate{k, pol, Complex(0.0, xi)});
    return f.real();
}

}  // namespace detail

/// Per-(k, polarization) Matsubara sum with an explicit n = 0 weight:
///   -2 k_B T [ w0 * kappa_0 f(0) + sum_{n>=1} kappa_n f(i xi_n) ]
/// truncated when the running term drops below 1e-12 of the partial sum.
inline double matsubara_contribution(const CavityConfig& cfg, double k, Polarization pol,
                                     double weight0, int max_terms = 100000) {
    const double xi1 = matsubara_frequency(1, cfg.T);
    double sum = weight0 * k * closed_loop_zero(cfg, k, pol);
    for (int n = 1; n <= max_terms; ++n) {
        const double xi = xi1 * n;
        const double kap = std::hypot(k, xi / codata.c);
        if (2.0 * kap * cfg.L > 700.0) break;
        const double fn = detail::f_on_axis(cfg, k, pol, xi);
        const double term = kap * fn;
        sum += term;
        if (n > 4 && std::abs(term) < 1e-12 * std::abs(sum)) break;
    }
    return -2.0 * codata.k_B * cfg.T * sum;
}

/// Standard primed sum (half-weight n = 0) for a dissipative mirror. The TE n = 0
/// term is computed, not special-cased: its vanishing doubles as a regression test
/// of the branch conventions.
inline double matsubara_contribution_drude(const CavityConfig& cfg, double k, Polarization pol,
                                           int max_terms = 100000) {
    if (!(cfg.model.gamma > 0.0))
        throw invalid_configuration("matsubara_contribution_drude: Drude model required");
    if (pol == Polarization::TE) {
        const double f0 = closed_loop_zero(cfg, k, Polarization::TE);
        assert(std::abs(f0) < 1e-14);
        (void)f0;
    }
    return matsubara_contribution(cfg, k, pol, 0.5, max_terms);
}

/// Corrected (double-primed) sum for the lossless plasma model: the TE sum starts
/// at n = 1, TM keeps the primed weighting.
inline double matsubara_contribution_corrected(const CavityConfig& cfg, double k,
                                               Polarization pol, int max_terms = 100000) {
    if (cfg.model.kind != MaterialKind::Plasma)
        throw invalid_configuration("matsubara_contribution_corrected: plasma model required");
    const double w0 = (pol == Polarization::TE) ? 0.0 : 0.5;
    return matsubara_contribution(cfg, k, pol, w0, max_terms);
}

namespace detail {

/// (1/2 pi) int_0^inf k dk g(k) with u = 2 k L substitution and exponential-tail
/// truncation: panels grow geometrically and stop when negligible.
template <class G>
double k_integral(const CavityConfig& cfg, G&& g, double rel_tol) {
    auto h = [&](double u) {
        const double k = u / (2.0 * cfg.L);
        return k * g(k) / (2.0 * pi) / (2.0 * cfg.L);
    };
    double total = 0.0;
    double a = 0.0, width = 1.0;
    int small_in_a_row = 0;
    for (int panel = 0; panel < 300; ++panel) {
        const double b = a + width;
        const double v = integrate_adaptive(h, a, b, rel_tol, 0.0, 4000).value;
        total += v;
        a = b;
        if (panel >= 4) width *= 1.5;
        const bool small = std::abs(v) < 1e-12 * std::abs(total);
        small_in_a_row = small ? small_in_a_row + 1 : 0;
        if (small_in_a_row >= 2 && a > 30.0) break;
        if (a > 400.0) break;
    }
    return total;
}

}  // namespace detail

/// The standalone TE n = 0 difference term
///   D = k_B T (1/2 pi) int k dk kappa_0 f_TE(0)   (kappa_0 = k),
/// i.e. the exact gap between the primed and double-primed plasma pressures.
inline double te_zero_term_difference(const CavityConfig& cfg, double rel_tol = 1e-10) {
    if (cfg.model.kind != MaterialKind::Plasma)
        throw invalid_configuration("te_zero_term_difference: plasma model required");
    return codata.k_B * cfg.T *
           detail::k_integral(cfg, [&](double k) {
               return k * closed_loop_zero(cfg, k, Polarization::TE);
           }, rel_tol);
}

/// Total Casimir pressure by radial k integration of the per-mode contribution.
/// Matsubara variants are organized per n (breakdown kept in the result); the
/// real-axis variant delegates to the spectral module per mode and is much slower.
inline PressureResult pressure_total(const CavityConfig& cfg, PressureFormula formula,
                                     double rel_tol = 1e-9, int max_terms = 100000) {
    PressureResult out;
    out.formula = formula;

    if (formula == PressureFormula::IdealCasimir) {
        out.value = ideal_casimir(cfg.L);
        out.n_terms = 0;
        return out;
    }
    if (formula == PressureFormula::RealAxis) {
        const double loose = std::max(rel_tol, 1e-5);
        auto permode = [&](Polarization pol) {
            return detail::k_integral(cfg, [&](double k) {
                if (cfg.model.kind == MaterialKind::Plasma)
                    return real_axis_pressure_plasma(cfg, k, pol, loose).total;
                return real_axis_pressure_drude(cfg, k, pol, loose);
            }, 1e-4);
        };
        const double te = permode(Polarization::TE);
        const double tm = permode(Polarization::TM);
        out.terms_te = {te};
        out.terms_tm = {tm};
        out.value = te + tm;
        out.n_terms = 1;
        out.error_estimate = 1e-3 * std::abs(out.value);
        return out;
    }

    if (formula == PressureFormula::MatsubaraDoublePrimed &&
        cfg.model.kind != MaterialKind::Plasma)
        throw invalid_configuration("pressure_total: double-primed sum requires the plasma model");

    const double w0_te = (formula == PressureFormula::MatsubaraDoublePrimed) ? 0.0 : 0.5;
    const double xi1 = matsubara_frequency(1, cfg.T);
    const double pref = -2.0 * codata.k_B * cfg.T;

    auto n_term = [&](int n, Polarization pol, double w0) -> double {
        if (n == 0) {
            if (w0 == 0.0) return 0.0;
            return pref * w0 *
                   detail::k_integral(cfg, [&](double k) {
                       return k * closed_loop_zero(cfg, k, pol);
                   }, rel_tol);
        }
        const double xi = xi1 * n;
        if (2.0 * (xi / codata.c) * cfg.L > 700.0) return 0.0;
        return pref * detail::k_integral(cfg, [&](double k) {
                   const double kap = std::hypot(k, xi / codata.c);
                   return kap * detail::f_on_axis(cfg, k, pol, xi);
               }, rel_tol);
    };

    double total = 0.0;
    for (int n = 0; n <= max_terms; ++n) {
        const double te = n_term(n, Polarization::TE, w0_te);
        const double tm = n_term(n, Polarization::TM, 0.5);
        out.terms_te.push_back(te);
        out.terms_tm.push_back(tm);
        total += te + tm;
        out.n_terms = n + 1;
        if (n > 4 && std::abs(te) + std::abs(tm) < 1e-12 * std::abs(total)) break;
        if (2.0 * (xi1 * (n + 1) / codata.c) * cfg.L > 700.0) break;
    }
    out.value = total;
    out.error_estimate = rel_tol * std::abs(total);
    return out;
}

/// One row of the dissipation-continuity study.
struct GammaStudyRow {
    double gamma;          ///< rad/s
    double p_drude;        ///< primed-sum pressure of the Drude mirror (Pa)
    double gap_corrected;  ///< |P_drude - P_plasma_corrected|
    double gap_primed;     ///< |P_drude - P_plasma_primed|
};

struct GammaStudy {
    std::vector<GammaStudyRow> rows;
    double p_plasma_corrected = 0.0;
    double p_plasma_primed = 0.0;
    double difference_term = 0.0;  ///< independently integrated TE n = 0 term
};

/// Sweep gamma downward and watch the Drude pressure converge to the corrected
/// plasma value while its distance to the primed value plateaus at the TE n = 0
/// difference term.
inline GammaStudy gamma_limit_study(const CavityConfig& cfg_plasma,
                                    const std::vector<double>& gamma_sequence,
                                    double rel_tol = 1e-9) {
    if (cfg_plasma.model.kind != MaterialKind::Plasma)
        throw invalid_configuration("gamma_limit_study: reference config must be plasma");
    for (std::size_t i = 0; i < gamma_sequence.size(); ++i) {
        if (!(gamma_sequence[i] > 0.0))
            throw invalid_configuration("gamma_limit_study: gamma entries must be > 0");
        if (i > 0 && !(gamma_sequence[i] < gamma_sequence[i - 1]))
            throw invalid_configuration("gamma_limit_study: gamma sequence must be descending");
    }
    GammaStudy st;
    st.p_plasma_corrected =
        pressure_total(cfg_plasma, PressureFormula::MatsubaraDoublePrimed, rel_tol).value;
    st.p_plasma_primed =
        pressure_total(cfg_plasma, PressureFormula::MatsubaraPrimed, rel_tol).value;
    st.difference_term = te_zero_term_difference(cfg_plasma);
    for (double g : gamma_sequence) {
        CavityConfig cd(cfg_plasma.L, cfg_plasma.d, cfg_plasma.T,
                        DielectricModel::drude(cfg_plasma.model.omega_p, g));
        const double pd = pressure_total(cd, PressureFormula::MatsubaraPrimed, rel_tol).value;
        st.rows.push_back({g, pd, std::abs(pd - st.p_plasma_corrected),
                           std::abs(pd - st.p_plasma_primed)});
    }
    return st;
}

}  // namespace casimir
