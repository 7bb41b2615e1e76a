#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "casimir/cavity.hpp"
#include "casimir/complexplane.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

enum class SingularityNature {
    OddPole,      ///< 1/(w - w_m) divergence with odd real content: principal value
    DeltaPeak,    ///< Dirac contribution handled through residues, not sampled
    BranchPoint,  ///< square-root behavior absorbed by w = s +- t^2 substitution
};

struct SingularityMarker {
    double position;
    SingularityNature nature;
};

struct PVIntegralResult {
    double principal_value = 0.0;
    double residue_sum = 0.0;
    double total = 0.0;  ///< principal_value + residue_sum by construction
    double error_estimate = 0.0;
};

namespace detail {

/// Adaptive panel with divergence diagnosis: a panel that cannot converge and
/// whose integrand is exploding points at an undeclared singularity.
template <class F>
double checked_panel(F&& fn, double a, double b, double rel_tol, double abs_floor) {
    try {
        return integrate_adaptive(fn, a, b, rel_tol, abs_floor, 4000).value;
    } catch (const quadrature_failure& qf) {
        const double mid = 0.5 * (qf.worst_a + qf.worst_b);
        const double fmid = std::abs(fn(mid));
        const double fa = std::abs(fn(a + 1e-3 * (b - a)));
        if (fmid > 1e6 * (fa + abs_floor / std::max(b - a, 1e-300)))
            throw missing_singularity("pv_integral: undeclared divergence detected", mid);
        throw;
    }
}

/// Integrate fn over [a, b] where `edge` (== a or b) is a declared branch point:
/// substitute w = edge +- t^2 so the sqrt behavior becomes analytic.
template <class F>
double branch_panel(F&& fn, double a, double b, double edge, double rel_tol, double abs_floor) {
    if (edge == a) {
        const double tmax = std::sqrt(b - a);
        return integrate_adaptive([&](double t) { return fn(a + t * t) * 2.0 * t; }, 0.0, tmax,
                                  rel_tol, abs_floor, 4000)
            .value;
    }
    const double tmax = std::sqrt(b - a);
    return integrate_adaptive([&](double t) { return fn(b - t * t) * 2.0 * t; }, 0.0, tmax,
                              rel_tol, abs_floor, 4000)
        .value;
}

}  // namespace detail

/// Cauchy principal value of fn over [a, b] with declared singular structure.
/// OddPole markers get the symmetric-window subtraction
///   PV int phi/(w-c) = int (phi(w) - phi(c))/(w-c)  over a window centered at c,
/// BranchPoint markers the sqrt-absorbing substitution, DeltaPeak markers only
/// split panels (their content belongs to the residue route).
inline double pv_integral(const std::function<double(double)>& fn, double a, double b,
                          std::vector<SingularityMarker> markers, double tol = 1e-8,
                          double abs_floor = 0.0) {
    if (!(b > a)) throw invalid_configuration("pv_integral: empty domain");
    markers.erase(std::remove_if(markers.begin(), markers.end(),
                                 [&](const SingularityMarker& s) {
                                     return s.position <= a || s.position >= b;
                                 }),
                  markers.end());
    std::sort(markers.begin(), markers.end(),
              [](const SingularityMarker& u, const SingularityMarker& v) {
                  return u.position < v.position;
              });

    double total = 0.0;
    double cursor = a;
    const double span = b - a;
    for (std::size_t i = 0; i < markers.size(); ++i) {
        const auto& s = markers[i];
        const double next = (i + 1 < markers.size()) ? markers[i + 1].position : b;
        const double prev_gap = s.position - cursor;
        const double next_gap = next - s.position;

        if (s.nature == SingularityNature::OddPole) {
            const double h = 0.49 * std::min({prev_gap, next_gap, 0.25 * span});
            if (!(h > 0.0)) throw invalid_configuration("pv_integral: coincident markers");
            total += detail::checked_panel(fn, cursor, s.position - h, tol, abs_floor);
            // residue-like coefficient of the declared pole
            const double delta = 1e-4 * h;
            const double phi_c = 0.5 * (fn(s.position + delta) * delta - fn(s.position - delta) * delta);
            auto subtracted = [&](double w) { return fn(w) - phi_c / (w - s.position); };
            total += detail::checked_panel(subtracted, s.position - h, s.position - delta, tol,
                                           abs_floor);
            total += detail::checked_panel(subtracted, s.position + delta, s.position + h, tol,
                                           abs_floor);
            // center sliver: subtracted integrand is smooth, width 2 delta
            total += subtracted(s.position + 0.5 * delta) * delta +
                     subtracted(s.position - 0.5 * delta) * delta;
            cursor = s.position + h;
        } else if (s.nature == SingularityNature::BranchPoint) {
            const double h = 0.49 * std::min({prev_gap, next_gap, 0.25 * span});
            total += detail::checked_panel(fn, cursor, s.position - h, tol, abs_floor);
            total += detail::branch_panel(fn, s.position - h, s.position, s.position, tol, abs_floor);
            total += detail::branch_panel(fn, s.position, s.position + h, s.position, tol, abs_floor);
            cursor = s.position + h;
        } else {  // DeltaPeak: split with a small exclusion, content lives in residues
            const double gap = 1e-9 * std::min(prev_gap + next_gap, span);
            total += detail::checked_panel(fn, cursor, s.position - gap, tol, abs_floor);
            cursor = s.position + gap;
        }
    }
    total += detail::checked_panel(fn, cursor, b, tol, abs_floor);
    return total;
}

// ---------------------------------------------------------------------------
// real-frequency pressure integrands
// ---------------------------------------------------------------------------

namespace detail {

inline double re_p_over_pi(const CavityConfig& cfg, double k, Polarization pol, double w) {
    return spectral_density(cfg, ModeCoordinate{k, pol, Complex(w, 0.0)}).real() / pi;
}

/// Half-period panel walker for the oscillating propagative tail. Starts at w0,
/// advances by round-trip phase pi per panel, stops when the reflection envelope
/// has died (|r|^2 < r2_cutoff) and the last panels are negligible.
template <class G>
double oscillatory_tail(const CavityConfig& cfg, double k, Polarization pol, G&& g, double w0,
                        double rel_tol, double running_scale, double r2_cutoff) {
    const double ck = codata.c * k;
    double total = 0.0;
    double w = w0;
    int small_in_a_row = 0;
    for (int panel = 0; panel < 20000; ++panel) {
        const double kz_now = std::sqrt(std::max(w * w - ck * ck, 0.0)) / codata.c;
        const double target = kz_now * 2.0 * cfg.L + pi;
        const double w_next = codata.c * std::hypot(target / (2.0 * cfg.L), k);
        const double v = integrate_adaptive(g, w, w_next, rel_tol, 0.0, 2000).value;
        total += v;
        w = w_next;
        const Complex r = fresnel_reflection(cfg.model, Complex(w, 0.0), k, pol);
        const bool small = std::abs(v) < 0.02 * rel_tol * (std::abs(total) + running_scale);
        small_in_a_row = small ? small_in_a_row + 1 : 0;
        if (std::norm(r) < r2_cutoff && (small_in_a_row >= 3 || panel > 12000)) break;
    }
    return total;
}

}  // namespace detail

/// Real-frequency-axis Lifshitz contribution for one (k, polarization) mode of a
/// dissipative mirror: (1/pi) int_0^inf Re p(w) dw, equal by parity to the full-line
/// integral with the 1/(2 pi) measure. Declared structure: the gamma-narrow feature
/// near the origin, the branch point at ck, the plasma-edge neighborhood, and the
/// Lorentzian remnants of the lossless mode positions.
inline double real_axis_pressure_drude(const CavityConfig& cfg, double k, Polarization pol,
                                       double tol = 1e-6) {
    if (!(cfg.model.gamma > 0.0))
        throw invalid_configuration("real_axis_pressure_drude: Drude model required");
    const double ck = codata.c * k;
    const double g = cfg.model.gamma;
    const double Om = std::hypot(cfg.model.omega_p, ck);
    const auto iv = foucault_interval(cfg.model, k);

    auto integrand = [&](double w) { return detail::re_p_over_pi(cfg, k, pol, w); };

    // lossless twin seeds split points at the surviving mode positions
    std::vector<double> seeds{1e-3 * iv.gamma_tilde, 0.1 * iv.gamma_tilde, iv.gamma_tilde,
                              10.0 * iv.gamma_tilde, 0.1 * g, g, 10.0 * g, 0.5 * ck, 0.9 * ck};
    {
        CavityConfig twin(cfg.L, cfg.d, cfg.T, DielectricModel::plasma(cfg.model.omega_p));
        for (const auto& rec : locate_real_modes(twin, k, pol, 1e-6)) {
            const double wm = rec.position.real();
            if (wm <= 0.0) continue;
            for (double off : {-30.0 * g, -3.0 * g, 3.0 * g, 30.0 * g}) seeds.push_back(wm + off);
            seeds.push_back(wm);
        }
    }
    seeds.push_back(Om);
    seeds.push_back(0.97 * Om);
    seeds.push_back(1.03 * Om);

    // assemble ordered split points below tail start
    const double tail_start = std::max(1.06 * Om, 1.05 * ck);
    std::vector<double> pts;
    for (double s : seeds)
        if (s > 0.0 && s < tail_start && std::abs(s - ck) > 1e-12 * ck) pts.push_back(s);
    pts.push_back(tail_start);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](double u, double v) { return std::abs(u - v) < 1e-9 * ck; }),
              pts.end());

    double total = 0.0;
    double cursor = 0.0;
    const double scale_guess = codata.k_B * cfg.T * k;  // magnitude of the answer
    const double floor = 1e-3 * tol * scale_guess;
    for (double p : pts) {
        if (p <= cursor) continue;
        if (cursor < ck && p > ck) {
            // branch point inside: sqrt-absorbing substitution on both sides
            total += detail::branch_panel(integrand, cursor, ck, ck, tol, floor);
            total += detail::branch_panel(integrand, ck, p, ck, tol, floor);
        } else {
            total += integrate_adaptive(integrand, cursor, p, tol, floor, 4000).value;
        }
        cursor = p;
    }
    total += detail::oscillatory_tail(cfg, k, pol, integrand, cursor, tol, scale_guess, 1e-10);
    return total;
}

/// Sum of the Sokhotsky residue corrections (1/2) Im p_hat at every real pole of the
/// lossless model, mirror pairs counted once with doubled weight, plus the half-weight
/// origin pole for TE. Residues come from indented semicircles above the axis.
inline double sokhotsky_corrections(const CavityConfig& cfg, double k, Polarization pol) {
    if (cfg.model.kind != MaterialKind::Plasma)
        throw invalid_configuration("sokhotsky_corrections: plasma model required");
    const auto modes = locate_real_modes(cfg, k, pol);
    const double ck = codata.c * k;
    const double Om = std::hypot(cfg.model.omega_p, ck);
    auto p = [&](Complex z) { return spectral_density(cfg, ModeCoordinate{k, pol, z}); };

    double sum = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto& rec = modes[i];
        const double wm = rec.position.real();
        if (rec.kind == PoleKind::Origin) {
            // half weight; residue 2 i k_B T k f_TE(0) is exact
            sum += 0.5 * rec.residue.imag();
            continue;
        }
        double radius = 1e-6 * cfg.model.omega_p;
        double guard = std::min({std::abs(wm - ck), std::abs(Om - wm), wm});
        for (std::size_t j = 0; j < modes.size(); ++j)
            if (j != i)
                guard = std::min(guard, std::abs(wm - modes[j].position.real()));
        radius = std::min(radius, 0.25 * guard);
        const Complex res = real_axis_residue(p, wm, radius);
        sum += res.imag();  // mirror partner contributes equally; pair weight 2 * (1/2)
    }
    return sum;
}

/// Real-axis evaluation of one plasma mode contribution: principal-value integral
/// plus Sokhotsky residue corrections. On (0, ck) the real part of p vanishes
/// identically (nothing but delta peaks lives there), so the PV integral runs over
/// the propagative band and tail, with band-edge substitutions and panels split at
/// the real poles.
inline PVIntegralResult real_axis_pressure_plasma(const CavityConfig& cfg, double k,
                                                  Polarization pol, double tol = 1e-7) {
    if (cfg.model.kind != MaterialKind::Plasma)
        throw invalid_configuration("real_axis_pressure_plasma: plasma model required");
    const double ck = codata.c * k;
    const double Om = std::hypot(cfg.model.omega_p, ck);
    auto integrand = [&](double w) { return detail::re_p_over_pi(cfg, k, pol, w); };

    std::vector<double> splits{ck};
    for (const auto& rec : locate_real_modes(cfg, k, pol))
        if (rec.position.real() > ck && rec.position.real() < Om)
            splits.push_back(rec.position.real());
    splits.push_back(Om);
    std::sort(splits.begin(), splits.end());

    PVIntegralResult out;
    const double scale_guess = codata.k_B * cfg.T * k;
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        const double a = splits[i], b = splits[i + 1];
        const double mid = 0.5 * (a + b);
        // both panel ends are either band edges (sqrt cusps) or pole positions
        // (regular but numerically delicate): the substitution absorbs both
        out.principal_value += detail::branch_panel(integrand, a, mid, a, tol, tol * scale_guess);
        out.principal_value += detail::branch_panel(integrand, mid, b, b, tol, tol * scale_guess);
    }
    out.principal_value +=
        detail::oscillatory_tail(cfg, k, pol, integrand, Om, tol, scale_guess, 1e-14);
    out.residue_sum = sokhotsky_corrections(cfg, k, pol);
    out.total = out.principal_value + out.residue_sum;
    out.error_estimate = tol * (std::abs(out.principal_value) + std::abs(out.residue_sum));
    return out;
}

/// One sample of the dimensionless spectral density (L/hbar) p on the real axis.
struct ProfileSample {
    double omega;
    double re_p;  ///< (L/hbar) Re p
    double im_p;  ///< (L/hbar) Im p
};

/// Tabulate (L/hbar) p(omega) for plotting and scaling tests. gamma > 0 only: the
/// lossless limit concentrates Re p into delta peaks that must not be point-sampled.
inline std::vector<ProfileSample> spectral_density_profile(const CavityConfig& cfg, double k,
                                                           Polarization pol,
                                                           const std::vector<double>& omega_grid) {
    if (!(cfg.model.gamma > 0.0))
        throw invalid_configuration("spectral_density_profile: gamma > 0 required");
    std::vector<ProfileSample> out;
    out.reserve(omega_grid.size());
    const double s = cfg.L / codata.hbar;
    for (double w : omega_grid) {
        const Complex p = spectral_density(cfg, ModeCoordinate{k, pol, Complex(w, 0.0)});
        out.push_back({w, s * p.real(), s * p.imag()});
    }
    return out;
}

}  // namespace casimir
