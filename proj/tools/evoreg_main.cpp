// evoreg command line: scenario runner and invariant verifier.
//
//   evoreg run --config heat.cfg --out report.json
//   evoreg verify spectral [--level 2]
//   evoreg convergence --config heat.cfg --levels 4 --out ladder.csv
//
// Exit code 0 iff every asserted invariant passes.

#include <chrono>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "evoreg/evoreg.hpp"

namespace {

using namespace evoreg;

void print_rows(const std::vector<CheckRow>& rows) {
    std::cout << std::left << std::setw(58) << "invariant" << std::setw(14) << "measured"
              << std::setw(5) << "cmp" << std::setw(14) << "threshold"
              << "result\n";
    std::cout << std::string(100, '-') << "\n";
    for (const auto& r : rows) {
        std::cout << std::left << std::setw(58) << r.name.substr(0, 57) << std::setw(14)
                  << std::setprecision(6) << std::scientific << r.measured
                  << std::setw(5) << r.cmp << std::setw(14) << r.threshold
                  << (r.pass ? "pass" : "FAIL") << "\n";
    }
    std::cout.unsetf(std::ios::scientific);
}

int do_run(const std::string& config_path, const std::string& out_path, long seed_override,
           int strict_override) {
    auto t_start = std::chrono::steady_clock::now();
    ConfigFile cfg = ConfigFile::parse_file(config_path);
    ScenarioConfig sc = ScenarioConfig::from_config(cfg);
    if (seed_override >= 0) sc.seed = static_cast<unsigned>(seed_override);
    if (strict_override >= 0) sc.strict = strict_override != 0;

    ordered_json report;
    report["config"] = config_to_json(sc);

    bool all_pass = true;
    ordered_json suites = ordered_json::object();
    std::map<std::string, double> timings;
    for (const auto& name : sc.suites) {
        auto t0 = std::chrono::steady_clock::now();
        auto rows = run_suite(name, sc.seed);
        timings["suite_" + name] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& r : rows) all_pass = all_pass && r.pass;
        suites[name] = rows_to_json(rows);
    }
    report["suites"] = suites;

    // scenario diagnostics: refinement ladder at the configured resolution
    {
        auto t0 = std::chrono::steady_clock::now();
        auto rep = refinement_study(
            [&sc](int lvl) { return build_scenario(sc, lvl); }, sc.levels,
            sc.scheme_enum(), {.strict = sc.strict, .seed = sc.seed});
        timings["diagnostics"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report["diagnostics"] = diagnostics_to_json(rep);
        for (const auto& [key, ok] : rep.flags) all_pass = all_pass && ok;
    }

    ordered_json tj;
    for (const auto& [k, v] : timings) tj[k] = v;
    tj["total"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    report["timings"] = tj;
    report["meta"] = {{"tool", "evoreg"},
                      {"version", "0.1.0"},
                      {"seed", sc.seed},
                      {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(
                                        std::chrono::system_clock::now().time_since_epoch())
                                        .count()}};

    write_atomically(out_path, report.dump(2) + "\n");
    std::cout << "report written to " << out_path << (all_pass ? " (all pass)" : " (FAILURES)")
              << "\n";
    return all_pass ? 0 : 1;
}

int do_verify(const std::string& suite, int level, long seed_override) {
    const unsigned seed = seed_override >= 0 ? static_cast<unsigned>(seed_override) : 12345u;
    auto rows = run_suite(suite, seed, level);
    print_rows(rows);
    bool all = true;
    for (const auto& r : rows) all = all && r.pass;
    std::cout << (all ? "all invariants pass" : "FAILURES present") << "\n";
    return all ? 0 : 1;
}

int do_convergence(const std::string& config_path, int levels, const std::string& out_path,
                   long seed_override, int strict_override) {
    ConfigFile cfg = ConfigFile::parse_file(config_path);
    ScenarioConfig sc = ScenarioConfig::from_config(cfg);
    if (seed_override >= 0) sc.seed = static_cast<unsigned>(seed_override);
    if (strict_override >= 0) sc.strict = strict_override != 0;
    auto rep = refinement_study([&sc](int lvl) { return build_scenario(sc, lvl); },
                                levels, sc.scheme_enum(),
                                {.strict = sc.strict, .seed = sc.seed});
    write_atomically(out_path, refinement_csv(rep));
    std::cout << "refinement table written to " << out_path << "\n";
    return rep.flags.at("kappa_stable_2x") ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator calculus for evolutionary equations on weighted spaces"};
    app.require_subcommand(1);

    long seed = -1;
    int strict = -1;
    app.add_option("--seed", seed, "override the config seed");
    app.add_flag(
        "--strict,!--no-strict",
        [&strict](int64_t count) { strict = count > 0 ? 1 : 0; },
        "force the well-posedness gate on/off");

    std::string run_config, run_out = "report.json";
    auto* run = app.add_subcommand("run", "run a scenario config and write a report");
    run->add_option("--config", run_config, "config file")->required();
    run->add_option("--out", run_out, "report path");

    std::string verify_suite;
    int verify_level = 1;
    auto* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("suite", verify_suite, "suite name")->required();
    verify->add_option("--level", verify_level, "resolution level (1 = desk scale)")
        ->check(CLI::Range(1, 3));

    std::string conv_config, conv_out = "refinement.csv";
    int conv_levels = 3;
    auto* conv = app.add_subcommand("convergence", "refinement study to CSV");
    conv->add_option("--config", conv_config, "config file")->required();
    conv->add_option("--levels", conv_levels, "number of dyadic levels")
        ->check(CLI::Range(3, 6));
    conv->add_option("--out", conv_out, "CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(run_config, run_out, seed, strict);
        if (verify->parsed()) return do_verify(verify_suite, verify_level, seed);
        if (conv->parsed())
            return do_convergence(conv_config, conv_levels, conv_out, seed, strict);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
