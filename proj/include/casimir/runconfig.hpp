#pragma once

#include <cmath>
#include <string>

#include "casimir/cavity.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"

#include <json.hpp>

namespace casimir {

/// Validated user-facing configuration. I/O units: energies in eV, lengths in nm,
/// temperature in K, pressure in Pa.
struct RunConfig {
    struct Material {
        std::string kind = "drude";  // "drude" | "plasma"
        double omega_p_ev = 9.0;
        double gamma_ev = 0.035;
    } material;
    struct Geometry {
        double L_nm = 250.0;
        double d_nm = -1.0;  // -1 encodes "inf"
    } geometry;
    struct Thermal {
        double T_K = 300.0;
    } thermal;
    struct Numerics {
        double tol = 1e-6;
        int max_terms = 100000;
    } numerics;
    struct Output {
        std::string format = "csv";  // "csv" | "json"
        std::string path;            // empty = stdout
    } output;

    void validate() const {
        if (material.kind != "drude" && material.kind != "plasma")
            throw invalid_configuration("config: material.kind must be drude or plasma");
        if (!(material.omega_p_ev > 0.0))
            throw invalid_configuration("config: omega_p_ev must be > 0");
        if (material.kind == "plasma" && material.gamma_ev != 0.0)
            throw invalid_configuration("config: plasma kind forces gamma_ev = 0");
        if (material.kind == "drude" && !(material.gamma_ev > 0.0))
            throw invalid_configuration("config: drude kind requires gamma_ev > 0");
        if (!(geometry.L_nm > 0.0)) throw invalid_configuration("config: L_nm must be > 0");
        if (geometry.d_nm != -1.0 && !(geometry.d_nm > 0.0))
            throw invalid_configuration("config: d_nm must be > 0 or \"inf\"");
        if (!(thermal.T_K > 0.0)) throw invalid_configuration("config: T_K must be > 0");
        if (!(numerics.tol > 0.0) || numerics.tol > 1e-1)
            throw invalid_configuration("config: tol out of range");
        if (numerics.max_terms < 1) throw invalid_configuration("config: max_terms must be >= 1");
        if (output.format != "csv" && output.format != "json")
            throw invalid_configuration("config: output.format must be csv or json");
    }

    DielectricModel model() const {
        if (material.kind == "plasma") return DielectricModel::plasma(ev_to_angular(material.omega_p_ev));
        return DielectricModel::drude(ev_to_angular(material.omega_p_ev),
                                      ev_to_angular(material.gamma_ev));
    }

    CavityConfig cavity() const {
        const double d = (geometry.d_nm == -1.0) ? semi_infinite : units::nm_to_m(geometry.d_nm);
        return CavityConfig(units::nm_to_m(geometry.L_nm), d, thermal.T_K, model());
    }

    static RunConfig gold_drude() {
        RunConfig c;
        c.material = {"drude", 9.0, 0.035};
        return c;
    }
    static RunConfig gold_plasma() {
        RunConfig c;
        c.material = {"plasma", 9.0, 0.0};
        return c;
    }
};

/// JSON serialization of a pressure result, schema:
/// value_pa, formula, model, L_nm, T_K, omega_p_ev, gamma_ev, n_terms, error_estimate.
inline nlohmann::ordered_json pressure_result_json(const RunConfig& cfg, const char* formula,
                                                   double value_pa, int n_terms,
                                                   double error_estimate) {
    nlohmann::ordered_json j;
    j["value_pa"] = value_pa;
    j["formula"] = formula;
    j["model"] = cfg.material.kind;
    j["L_nm"] = cfg.geometry.L_nm;
    j["T_K"] = cfg.thermal.T_K;
    j["omega_p_ev"] = cfg.material.omega_p_ev;
    j["gamma_ev"] = cfg.material.gamma_ev;
    j["n_terms"] = n_terms;
    j["error_estimate"] = error_estimate;
    return j;
}

}  // namespace casimir
