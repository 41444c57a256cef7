#pragma once

// Scenario library: heat (divergence form), integro (memory kernel in M00),
// and maxwell (eddy current).  A ScenarioConfig fully determines an
// EvoProblem; data signals are generated deterministically from the seed.
//
//   heat     d(u) + C* N11(t)^{-1} C u = f        grad/div pair, dim 1..3
//   integro  d((1 + T*) u) + C* C u = f           T = kappa e^{-a t}
//   maxwell  d(mu H) + sigma^{-1}-coupled curl pair on the unit cube:
//            u = H on faces (C = -curl), v = E on tangential-zero edges
//
// The tanh/jump/arctan presets for N11 are shifted positive so the
// well-posedness gates hold where the scenario intends them to.

#include "evoreg/config.hpp"
#include "evoreg/evo_solver.hpp"

namespace evoreg {

struct GridSpec {
    int n_t = 512;
    double t0 = -2.0;
    double t_end = 16.0;
    int n_x = 32;
    int dim = 1;
};

struct LawSpec {
    std::string preset = "constant";  // constant | arctan | tanh | jump | exp-kernel
    double offset = 1.0;
    double scale = 0.5;
    double center = 4.0;
    double width = 1.0;
};

struct ScenarioConfig {
    std::string scenario = "heat";  // heat | integro | maxwell | custom
    double rho = 1.0;
    GridSpec grid;
    LawSpec m00;          // heat/maxwell: constant scale; integro: exp-kernel
    LawSpec n11;
    std::string data = "smooth";  // smooth | rough
    std::string scheme = "implicit_euler";
    bool strict = true;
    std::vector<std::string> suites;
    unsigned seed = 12345;
    int levels = 3;

    static ScenarioConfig from_config(const ConfigFile& cfg) {
        ScenarioConfig sc;
        sc.scenario = cfg.get_string("scenario.name", "heat");
        sc.rho = cfg.get_number("scenario.rho", 1.0);
        sc.grid.n_t = cfg.get_int("grid.n_t", 512);
        sc.grid.t0 = cfg.get_number("grid.t0", -2.0);
        sc.grid.t_end = cfg.get_number("grid.t_end", 16.0);
        sc.grid.n_x = cfg.get_int("grid.n_x", 32);
        sc.grid.dim = cfg.get_int("grid.dim", sc.scenario == "maxwell" ? 3 : 1);
        sc.m00.preset = cfg.get_string("laws.m00", "constant");
        sc.m00.offset = cfg.get_number("laws.m00_offset", 1.0);
        sc.m00.scale = cfg.get_number("laws.m00_scale", 0.5);
        sc.m00.center = cfg.get_number("laws.m00_center", 0.0);
        sc.m00.width = cfg.get_number("laws.m00_width", 1.0);
        sc.n11.preset = cfg.get_string("laws.n11", "constant");
        sc.n11.offset = cfg.get_number("laws.n11_offset", 1.0);
        sc.n11.scale = cfg.get_number("laws.n11_scale", 0.5);
        sc.n11.center = cfg.get_number("laws.n11_center", 4.0);
        sc.n11.width = cfg.get_number("laws.n11_width", 1.0);
        sc.data = cfg.get_string("data.kind", "smooth");
        sc.scheme = cfg.get_string("solver.scheme", "implicit_euler");
        sc.strict = cfg.get_bool("solver.strict", true);
        sc.suites = cfg.get_list("suites.run", {});
        sc.seed = static_cast<unsigned>(cfg.get_int("output.seed", 12345));
        sc.levels = cfg.get_int("output.levels", 3);
        cfg.reject_unknown_keys();
        sc.validate();
        return sc;
    }

    void validate() const {
        if (scenario != "heat" && scenario != "integro" && scenario != "maxwell" &&
            scenario != "custom")
            throw config_error("scenario.name: unknown scenario '" + scenario + "'");
        if (!(rho > 0.0)) throw config_error("scenario.rho must be > 0");
        if (grid.n_t < 2) throw config_error("grid.n_t must be >= 2");
        if (!(grid.t_end > grid.t0)) throw config_error("grid.t_end must exceed grid.t0");
        if (grid.n_x < 3) throw config_error("grid.n_x must be >= 3");
        if (scenario == "maxwell" && grid.dim != 3)
            throw config_error("grid.dim must be 3 for the maxwell scenario");
        if (grid.dim < 1 || grid.dim > 3) throw config_error("grid.dim must be 1, 2 or 3");
        if (scheme != "implicit_euler" && scheme != "crank_nicolson")
            throw config_error("solver.scheme must be implicit_euler or crank_nicolson");
        if (data != "smooth" && data != "rough")
            throw config_error("data.kind must be smooth or rough");
    }

    Scheme scheme_enum() const {
        return scheme == "crank_nicolson" ? Scheme::crank_nicolson
                                          : Scheme::implicit_euler;
    }
};

namespace detail {

// Smooth causal scalar envelope: t^2 e^{-1.5 t} from t = 0.
inline double smooth_envelope(double t) {
    return t < 0.0 ? 0.0 : t * t * std::exp(-1.5 * t);
}

inline Signal scenario_f(const ScenarioConfig& sc, const TemporalGrid& g, int m,
                         unsigned seed) {
    if (sc.data == "rough") {
        Signal r = rough_signal(g, m, seed, 0.0);
        for (int k = 0; k < g.n; ++k) {
            const double t = g.t(k);
            r.values.row(k) *= (t < 0.0 ? 0.0 : std::exp(-0.5 * t));
        }
        return Signal(g, r.values, 0.0);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.25, 1.0);
    Eigen::VectorXd profile(m);
    for (int i = 0; i < m; ++i) profile(i) = unif(rng);
    Eigen::MatrixXcd fv = Eigen::MatrixXcd::Zero(g.n, m);
    for (int k = 0; k < g.n; ++k) {
        const double amp = smooth_envelope(g.t(k));
        if (amp == 0.0) continue;
        for (int i = 0; i < m; ++i) fv(k, i) = amp * profile(i);
    }
    return Signal(g, std::move(fv), 0.0);
}

// g data in H^{1/2}: smooth in time by construction.
inline Signal scenario_g(const TemporalGrid& g, int m, unsigned seed) {
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    Eigen::VectorXd profile(m);
    for (int i = 0; i < m; ++i) profile(i) = unif(rng);
    Eigen::MatrixXcd gv = Eigen::MatrixXcd::Zero(g.n, m);
    for (int k = 0; k < g.n; ++k) {
        const double amp = smooth_envelope(g.t(k));
        if (amp == 0.0) continue;
        for (int i = 0; i < m; ++i) gv(k, i) = amp * profile(i);
    }
    return Signal(g, std::move(gv), 0.0);
}

inline MaterialLaw law_from_spec(const LawSpec& spec) {
    if (spec.preset == "constant") return MaterialLaw::constant(spec.offset);
    if (spec.preset == "exp-kernel")
        return MaterialLaw::convolution(
            make_profile("exp-kernel", 0.0, spec.scale, 0.0, spec.width), 0.0,
            spec.offset);
    return MaterialLaw::multiplication(
        make_profile(spec.preset, spec.offset, spec.scale, spec.center, spec.width));
}

}  // namespace detail

// Build the EvoProblem a config describes, with the grid refined by `level`
// dyadic steps in time.
inline EvoProblem build_scenario(const ScenarioConfig& sc, int level = 0) {
    sc.validate();
    EvoProblem p;
    p.grid = TemporalGrid::window(sc.grid.t0, sc.grid.t_end, sc.grid.n_t << level, sc.rho);

    if (sc.scenario == "maxwell") {
        // u = H on faces, v = E on tangential-zero edges: swap the curl pair
        p.complex = swapped_negated(build_curl_pair(sc.grid.n_x));
    } else {
        p.complex = build_grad_pair(sc.grid.n_x, sc.grid.dim,
                                    SpatialComplex::Boundary::dirichlet_on_u);
    }

    if (sc.scenario == "integro") {
        // M00 = 1 + T*, T = scale * e^{-width t}
        p.M00 = MaterialLaw::convolution(
            make_profile("exp-kernel", 0.0, sc.m00.scale, 0.0, sc.m00.width), 0.0, 1.0);
    } else {
        p.M00 = detail::law_from_spec(sc.m00);
    }
    p.N11 = detail::law_from_spec(sc.n11);

    p.f = detail::scenario_f(sc, p.grid, p.complex.m0(), sc.seed);
    p.g = sc.scenario == "maxwell"
              ? detail::scenario_g(p.grid, p.complex.m1(), sc.seed)
              : Signal::zero(p.grid, p.complex.m1());
    p.validate();
    return p;
}

}  // namespace evoreg
