#pragma once

// Run reports: a JSON document with a stable schema
//   { config, suites, diagnostics, timings, meta }
// plus CSV refinement tables.  Reports are written atomically (temp file +
// rename) and are bit-identical for identical config and seed apart from the
// timings block and meta.timestamp.

#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "evoreg/maxreg_diagnostics.hpp"
#include "evoreg/scenarios.hpp"
#include "evoreg/suites.hpp"

namespace evoreg {

using ordered_json = nlohmann::ordered_json;

inline ordered_json config_to_json(const ScenarioConfig& sc) {
    ordered_json j;
    j["scenario"] = sc.scenario;
    j["rho"] = sc.rho;
    j["grid"] = {{"n_t", sc.grid.n_t},
                 {"t0", sc.grid.t0},
                 {"t_end", sc.grid.t_end},
                 {"n_x", sc.grid.n_x},
                 {"dim", sc.grid.dim}};
    j["laws"] = {{"m00", sc.m00.preset},
                 {"m00_offset", sc.m00.offset},
                 {"m00_scale", sc.m00.scale},
                 {"n11", sc.n11.preset},
                 {"n11_offset", sc.n11.offset},
                 {"n11_scale", sc.n11.scale},
                 {"n11_center", sc.n11.center},
                 {"n11_width", sc.n11.width}};
    j["data"] = sc.data;
    j["solver"] = {{"scheme", sc.scheme}, {"strict", sc.strict}};
    j["suites"] = sc.suites;
    j["seed"] = sc.seed;
    j["levels"] = sc.levels;
    return j;
}

inline ordered_json rows_to_json(const std::vector<CheckRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"name", r.name},
                       {"measured", r.measured},
                       {"threshold", r.threshold},
                       {"cmp", r.cmp},
                       {"pass", r.pass},
                       {"criterion", r.criterion}});
    }
    return arr;
}

inline ordered_json diagnostics_to_json(const DiagnosticsReport& rep) {
    ordered_json j;
    j["norms"] = {{"u_1", rep.norms.u_1},
                  {"Cu_half", rep.norms.Cu_half},
                  {"Cstarv_0", rep.norms.Cstar_v_0},
                  {"v_half", rep.norms.v_half},
                  {"f_0", rep.norms.f_0},
                  {"g_half", rep.norms.g_half}};
    j["kappa"] = rep.kappa_defined ? ordered_json(rep.kappa) : ordered_json(nullptr);
    ordered_json ladder = ordered_json::array();
    for (const auto& row : rep.refinement) {
        ladder.push_back({{"level", row.level},
                          {"n_t", row.n_t},
                          {"n_x", row.n_x},
                          {"u_1", row.norms.u_1},
                          {"Cu_half", row.norms.Cu_half},
                          {"Cstarv_0", row.norms.Cstar_v_0},
                          {"v_half", row.norms.v_half},
                          {"kappa", row.kappa},
                          {"Cu_1", row.Cu_1}});
    }
    j["refinement"] = ladder;
    ordered_json flags;
    for (const auto& [k, v] : rep.flags) flags[k] = v;
    j["flags"] = flags;
    j["notes"] = rep.notes;
    return j;
}

inline void write_atomically(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw config_error("cannot write to '" + tmp.string() + "'");
        out << contents;
    }
    std::filesystem::rename(tmp, target);
}

// CSV refinement table: level,n_t,n_x,u_1,Cu_half,Cstarv_0,v_half,kappa
inline std::string refinement_csv(const DiagnosticsReport& rep) {
    std::ostringstream out;
    out << "level,n_t,n_x,u_1,Cu_half,Cstarv_0,v_half,kappa\n";
    out.precision(12);
    for (const auto& r : rep.refinement)
        out << r.level << ',' << r.n_t << ',' << r.n_x << ',' << r.norms.u_1 << ','
            << r.norms.Cu_half << ',' << r.norms.Cstar_v_0 << ',' << r.norms.v_half << ','
            << r.kappa << '\n';
    return out.str();
}

}  // namespace evoreg
