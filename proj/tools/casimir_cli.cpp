// casimir: batch computations of the thermal Casimir pressure between metallic
// mirrors and of the cavity-mode structure in the complex frequency plane.
//
// Subcommands
//   pressure     total pressure via the primed / corrected Matsubara sums, the
//                real-frequency integral, or the ideal-mirror formula
//   count        argument-principle count N on the standard contours (c1/c2/c3)
//   spectrum     dimensionless spectral density profiles for gamma, gamma/2, gamma/4
//   trajectory   pole/zero trajectories on the Foucault interval vs slab width
//   limit-study  dissipation gamma -> 0 convergence table
//
// Exit codes: 0 success, 2 config error, 3 quadrature failure,
//             4 singular evaluation, 5 ill-conditioned contour.

#include <cstdio>
#include <iostream>
#include <string>
#include <map>
#include <vector>

#include <CLI11.hpp>

#include "casimir/casimir.hpp"

namespace {

using namespace casimir;

struct CliOptions {
    RunConfig cfg;
    std::string preset;
    std::string d_nm_text = "inf";
};

void apply_preset(CliOptions& o) {
    if (o.preset.empty()) return;
    if (o.preset == "gold-drude") {
        o.cfg.material = RunConfig::gold_drude().material;
    } else if (o.preset == "gold-plasma") {
        o.cfg.material = RunConfig::gold_plasma().material;
    } else {
        throw invalid_configuration("unknown preset: " + o.preset);
    }
}

void apply_d(CliOptions& o) {
    if (o.d_nm_text == "inf") {
        o.cfg.geometry.d_nm = -1.0;
    } else {
        try {
            o.cfg.geometry.d_nm = std::stod(o.d_nm_text);
        } catch (...) {
            throw invalid_configuration("geometry.d_nm must be a number or \"inf\"");
        }
    }
}

void add_common(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--preset", o.preset, "parameter preset: gold-drude | gold-plasma");
    cmd->add_option("--material.kind", o.cfg.material.kind, "drude | plasma");
    cmd->add_option("--material.omega_p_ev", o.cfg.material.omega_p_ev, "plasma frequency (eV)");
    cmd->add_option("--material.gamma_ev", o.cfg.material.gamma_ev, "damping rate (eV)");
    cmd->add_option("--geometry.L_nm", o.cfg.geometry.L_nm, "mirror gap (nm)");
    cmd->add_option("--geometry.d_nm", o.d_nm_text, "slab width (nm) or \"inf\"");
    cmd->add_option("--thermal.T_K", o.cfg.thermal.T_K, "temperature (K)");
    cmd->add_option("--numerics.tol", o.cfg.numerics.tol, "relative tolerance");
    cmd->add_option("--numerics.max_terms", o.cfg.numerics.max_terms, "Matsubara term cap");
    cmd->add_option("--output.format", o.cfg.output.format, "csv | json");
    cmd->add_option("-o,--output.path", o.cfg.output.path, "output file (default stdout)");
    cmd->set_config("--config", "", "flat key=value config file with [sections]");
}

void finalize(CliOptions& o) {
    apply_preset(o);
    apply_d(o);
    if (o.cfg.material.kind == "plasma") o.cfg.material.gamma_ev = 0.0;
    o.cfg.validate();
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream f(cfg.output.path, std::ios::binary);
        if (!f) throw invalid_configuration("cannot open output path " + cfg.output.path);
        f << text;
    }
}

double default_k(const RunConfig& cfg) { return 1.0 / (2.0 * units::nm_to_m(cfg.geometry.L_nm)); }

// ---------------------------------------------------------------------------

int cmd_pressure(CliOptions& o, const std::string& formula) {
    finalize(o);
    const CavityConfig cav = o.cfg.cavity();
    PressureFormula f;
    if (formula == "primed") f = PressureFormula::MatsubaraPrimed;
    else if (formula == "corrected") f = PressureFormula::MatsubaraDoublePrimed;
    else if (formula == "real-axis") f = PressureFormula::RealAxis;
    else if (formula == "ideal") f = PressureFormula::IdealCasimir;
    else throw invalid_configuration("unknown formula: " + formula);

    const double rel = std::min(o.cfg.numerics.tol, 1e-8);
    const PressureResult r = pressure_total(cav, f, rel, o.cfg.numerics.max_terms);

    if (o.cfg.output.format == "json") {
        const auto j = pressure_result_json(o.cfg, to_string(f), r.value, r.n_terms,
                                            r.error_estimate);
        emit(o.cfg, j.dump(2) + "\n");
    } else {
        CsvTable t;
        t.header = {"value_pa", "formula", "model", "L_nm", "T_K", "omega_p_ev", "gamma_ev",
                    "n_terms", "error_estimate"};
        t.add_row({format_sci(r.value), to_string(f), o.cfg.material.kind,
                   format_sci(o.cfg.geometry.L_nm), format_sci(o.cfg.thermal.T_K),
                   format_sci(o.cfg.material.omega_p_ev), format_sci(o.cfg.material.gamma_ev),
                   std::to_string(r.n_terms), format_sci(r.error_estimate)});
        emit(o.cfg, t.to_string());
    }
    return 0;
}

int cmd_count(CliOptions& o, const std::string& contour, const std::string& pol_s, double k_in) {
    finalize(o);
    if (o.cfg.material.kind != "drude")
        throw invalid_configuration("count: contours are defined relative to gamma (drude only)");
    const CavityConfig cav = o.cfg.cavity();
    const double k = (k_in > 0.0) ? k_in : default_k(o.cfg);
    const Polarization pol = (pol_s == "tm") ? Polarization::TM : Polarization::TE;
    const auto contours = mode_count_contours(cav.model, k);
    const ContourPath* path = nullptr;
    if (contour == "c1") path = &contours.around_origin;
    else if (contour == "c2") path = &contours.around_interval;
    else if (contour == "c3") path = &contours.around_both;
    else throw invalid_configuration("unknown contour: " + contour);

    auto fn = [&](Complex z) { return spectral_density(cav, {k, pol, z}); };
    const Complex raw = winding_number_raw(fn, *path, 1e-6);
    const int N = winding_number(fn, *path, 1e-4);
    std::printf("N = %d\nraw = %.12f %+.3e i\n", N, raw.real(), raw.imag());
    return 0;
}

int cmd_spectrum(CliOptions& o, double k_in, const std::string& pol_s, double wmax_over_gamma,
                 int n_points) {
    finalize(o);
    if (o.cfg.material.kind != "drude")
        throw invalid_configuration("spectrum: gamma > 0 required");
    if (k_in == 0.0 && o.cfg.geometry.L_nm <= 0.0)
        throw invalid_configuration("spectrum: bad geometry");
    const CavityConfig cav = o.cfg.cavity();
    double k = k_in;
    if (k < 0.0) k = default_k(o.cfg);
    if (k == 0.0)
        throw invalid_configuration("spectrum: k = 0 is a null-measure mode, pick k > 0");
    const Polarization pol = (pol_s == "tm") ? Polarization::TM : Polarization::TE;

    CsvTable t;
    t.header = {"omega_over_gamma", "re_p_dimensionless", "im_p_dimensionless", "gamma_ev",
                "k_rad_per_m", "pol"};
    for (double fac : {1.0, 0.5, 0.25}) {
        const double g = cav.model.gamma * fac;
        CavityConfig cs(cav.L, cav.d, cav.T, DielectricModel::drude(cav.model.omega_p, g));
        std::vector<double> grid;
        grid.reserve(n_points);
        const double lo = 1e-4, hi = wmax_over_gamma;
        for (int i = 0; i < n_points; ++i)
            grid.push_back(g * lo * std::pow(hi / lo, double(i) / (n_points - 1)));
        const auto prof = spectral_density_profile(cs, k, pol, grid);
        for (const auto& s : prof)
            t.add_row({format_sci(s.omega / g), format_sci(s.re_p), format_sci(s.im_p),
                       format_sci(angular_to_ev(g)), format_sci(k),
                       pol == Polarization::TE ? "te" : "tm"});
    }
    emit(o.cfg, t.to_string());
    return 0;
}

int cmd_trajectory(CliOptions& o, double k_in, double d_min_nm, double d_max_nm, int d_count) {
    finalize(o);
    if (o.cfg.material.kind != "drude")
        throw invalid_configuration("trajectory: drude model required");
    const CavityConfig cav = o.cfg.cavity();
    const double k = (k_in > 0.0) ? k_in : default_k(o.cfg);
    std::vector<double> d_grid;
    for (int i = 0; i < d_count; ++i)
        d_grid.push_back(units::nm_to_m(d_min_nm) *
                         std::pow(d_max_nm / d_min_nm, double(i) / std::max(d_count - 1, 1)));

    const auto traj = trajectory_vs_width(cav, k, d_grid);

    // winding census per width (independent count on the interval contour)
    std::map<double, int> census;
    for (double d : d_grid) {
        CavityConfig cd(cav.L, d, cav.T, cav.model);
        const auto contours = mode_count_contours(cd.model, k);
        auto fn = [&](Complex z) { return spectral_density(cd, {k, Polarization::TE, z}); };
        census[d] = winding_number(fn, contours.around_interval, 1e-4);
    }

    CsvTable t;
    t.header = {"d_nm", "k_rad_per_m", "kind", "re_omega", "im_omega", "order", "re_residue",
                "im_residue", "class", "track_id", "unresolved", "interval_winding"};
    for (const auto& p : traj) {
        const char* cls = p.cls == TrajectoryClass::Dot ? "dot"
                          : p.cls == TrajectoryClass::Asterisk ? "asterisk"
                                                               : "cluster";
        const char* kind = p.record.what == SingularityClass::Zero ? "zero"
                           : p.record.what == SingularityClass::Pole ? "foucault"
                                                                     : "cluster";
        t.add_row({format_sci(units::m_to_nm(p.d)), format_sci(k), kind,
                   format_sci(p.record.position.real()), format_sci(p.record.position.imag()),
                   std::to_string(p.record.order), format_sci(p.record.residue.real()),
                   format_sci(p.record.residue.imag()), cls, std::to_string(p.track_id),
                   p.record.unresolved ? "1" : "0", std::to_string(census[p.d])});
    }
    emit(o.cfg, t.to_string());
    return 0;
}

int cmd_limit_study(CliOptions& o, int halvings) {
    finalize(o);
    if (o.cfg.material.kind != "drude")
        throw invalid_configuration("limit-study: needs a gamma > 0 starting point (drude)");
    if (halvings < 0) throw invalid_configuration("limit-study: J must be >= 0");
    const CavityConfig cav = o.cfg.cavity();
    CavityConfig plasma_ref(cav.L, cav.d, cav.T, DielectricModel::plasma(cav.model.omega_p));
    std::vector<double> gammas;
    for (int j = 0; j <= halvings; ++j) gammas.push_back(cav.model.gamma / double(1 << j));

    const auto st = gamma_limit_study(plasma_ref, gammas, 1e-9);

    CsvTable t;
    t.header = {"gamma_ev", "p_drude_pa", "gap_corrected_pa", "gap_primed_pa",
                "p_plasma_corrected_pa", "p_plasma_primed_pa", "difference_term_pa"};
    for (const auto& row : st.rows)
        t.add_row({format_sci(angular_to_ev(row.gamma)), format_sci(row.p_drude),
                   format_sci(row.gap_corrected), format_sci(row.gap_primed),
                   format_sci(st.p_plasma_corrected), format_sci(st.p_plasma_primed),
                   format_sci(st.difference_term)});
    emit(o.cfg, t.to_string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermal Casimir pressure and cavity-mode analysis for metallic mirrors"};
    app.require_subcommand(1);

    CliOptions o;
    std::string formula = "primed", contour = "c2", pol = "te";
    double k = -1.0, wmax_over_gamma = 10.0;
    double d_min_nm = 1.0, d_max_nm = 1e4;
    int d_count = 13, n_points = 400, halvings = 8;

    auto* p = app.add_subcommand("pressure", "total Casimir pressure");
    add_common(p, o);
    p->add_option("--formula", formula, "primed | corrected | real-axis | ideal");

    auto* c = app.add_subcommand("count", "argument-principle count on a standard contour");
    add_common(c, o);
    c->add_option("--contour", contour, "c1 | c2 | c3");
    c->add_option("--pol", pol, "te | tm");
    c->add_option("--k", k, "transverse wavenumber (rad/m); default 1/(2L)");

    auto* s = app.add_subcommand("spectrum", "spectral density profiles (gamma, gamma/2, gamma/4)");
    add_common(s, o);
    s->add_option("--k", k, "transverse wavenumber (rad/m); default 1/(2L)")
        ->default_val(-1.0);
    s->add_option("--pol", pol, "te | tm");
    s->add_option("--omega-max-over-gamma", wmax_over_gamma, "grid upper end in units of gamma");
    s->add_option("--points", n_points, "samples per curve");

    auto* tr = app.add_subcommand("trajectory", "Foucault pole/zero trajectories vs slab width");
    add_common(tr, o);
    tr->add_option("--k", k, "transverse wavenumber (rad/m); default 1/(2L)");
    tr->add_option("--d-min-nm", d_min_nm, "smallest width (nm)");
    tr->add_option("--d-max-nm", d_max_nm, "largest width (nm)");
    tr->add_option("--d-count", d_count, "number of widths (log spaced)");

    auto* ls = app.add_subcommand("limit-study", "gamma -> 0 convergence table");
    add_common(ls, o);
    ls->add_option("--gamma-halvings", halvings, "number J of halvings (rows j = 0..J)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (p->parsed()) return cmd_pressure(o, formula);
        if (c->parsed()) return cmd_count(o, contour, pol, k);
        if (s->parsed()) return cmd_spectrum(o, k, pol, wmax_over_gamma, n_points);
        if (tr->parsed()) return cmd_trajectory(o, k, d_min_nm, d_max_nm, d_count);
        if (ls->parsed()) return cmd_limit_study(o, halvings);
    } catch (const invalid_configuration& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const missing_singularity& e) {
        std::fprintf(stderr, "quadrature error: %s\n", e.what());
        return 3;
    } catch (const quadrature_failure& e) {
        std::fprintf(stderr, "quadrature error: %s\n", e.what());
        return 3;
    } catch (const singular_evaluation& e) {
        std::fprintf(stderr, "singular evaluation: %s\n", e.what());
        return 4;
    } catch (const ill_conditioned_contour& e) {
        std::fprintf(stderr, "ill-conditioned contour: %s\n", e.what());
        return 5;
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
