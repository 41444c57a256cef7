#include "test_helpers.hpp"

#include "evoreg/report.hpp"

using namespace evoreg;

TEST_CASE("config parsing") {
    SECTION("sections, comments, numbers, lists") {
        auto cfg = ConfigFile::parse_string(
            "# comment\n[scenario]\nname = heat\nrho = 2.5 # trailing\n"
            "[suites]\nrun = spectral, solver\n");
        CHECK(cfg.get_string("scenario.name") == "heat");
        CHECK(cfg.get_number("scenario.rho") == 2.5);
        auto lst = cfg.get_list("suites.run", {});
        REQUIRE(lst.size() == 2);
        CHECK(lst[0] == "spectral");
        CHECK(lst[1] == "solver");
        cfg.reject_unknown_keys();  // everything consumed
    }
    SECTION("missing keys fall back or throw") {
        auto cfg = ConfigFile::parse_string("[a]\nx = 1\n");
        CHECK(cfg.get_number("a.y", 7.0) == 7.0);
        CHECK_THROWS_AS(cfg.get_number("a.z"), config_error);
    }
    SECTION("malformed lines carry the line number") {
        try {
            ConfigFile::parse_string("[a]\nx 1\n", "bad.cfg");
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
        }
    }
    SECTION("duplicate keys are rejected") {
        CHECK_THROWS_AS(ConfigFile::parse_string("[a]\nx = 1\nx = 2\n"), config_error);
    }
    SECTION("non-numeric values are typed errors naming the key") {
        auto cfg = ConfigFile::parse_string("[grid]\nn_t = many\n");
        try {
            cfg.get_number("grid.n_t");
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("grid.n_t") != std::string::npos);
        }
    }
    SECTION("unknown keys are hard errors with the line number") {
        auto cfg = ConfigFile::parse_string("[scenario]\nname = heat\nbogus = 1\n", "x.cfg");
        cfg.get_string("scenario.name");
        try {
            cfg.reject_unknown_keys();
            FAIL("expected config_error");
        } catch (const config_error& e) {
            const std::string msg = e.what();
            CHECK(msg.find("scenario.bogus") != std::string::npos);
            CHECK(msg.find("x.cfg:3") != std::string::npos);
        }
    }
}

TEST_CASE("scenario config validation") {
    auto base = [](const std::string& extra) {
        return ConfigFile::parse_string("[scenario]\nname = heat\n" + extra);
    };
    SECTION("negative rho names the field") {
        try {
            ScenarioConfig::from_config(base("rho = -1\n"));
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("scenario.rho") != std::string::npos);
        }
    }
    SECTION("maxwell demands dim = 3") {
        auto cfg = ConfigFile::parse_string(
            "[scenario]\nname = maxwell\n[grid]\ndim = 2\nn_x = 8\n");
        try {
            ScenarioConfig::from_config(cfg);
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("dim") != std::string::npos);
        }
    }
    SECTION("unknown scenario and scheme are rejected") {
        CHECK_THROWS_AS(ScenarioConfig::from_config(base("name2 = x\n")), config_error);
        auto cfg = ConfigFile::parse_string(
            "[scenario]\nname = heat\n[solver]\nscheme = leapfrog\n");
        CHECK_THROWS_AS(ScenarioConfig::from_config(cfg), config_error);
    }
}

TEST_CASE("scenario presets determine solvable problems") {
    ScenarioConfig sc;
    sc.scenario = "heat";
    sc.grid = {128, -2.0, 16.0, 12, 1};
    auto p = build_scenario(sc);
    CHECK(p.complex.m0() == 11);
    CHECK(p.f.m() == 11);
    auto res = solve_time_stepping(p, sc.scheme_enum());
    CHECK(res.residual < 1e-8);

    SECTION("2d heat also assembles") {
        sc.grid.dim = 2;
        sc.grid.n_x = 6;
        auto p2 = build_scenario(sc);
        CHECK(p2.complex.m0() == 25);
        auto r2 = solve_time_stepping(p2, sc.scheme_enum());
        CHECK(r2.residual < 1e-8);
    }
    SECTION("maxwell assembles on the swapped curl pair") {
        ScenarioConfig mx;
        mx.scenario = "maxwell";
        mx.grid = {64, -2.0, 16.0, 4, 3};
        auto pm = build_scenario(mx);
        CHECK(pm.complex.m0() == 3 * 5 * 16);  // faces
        CHECK(pm.complex.m1() == 3 * 4 * 9);   // tangential-interior edges
        auto rm = solve_time_stepping(pm, mx.scheme_enum());
        CHECK(rm.residual < 1e-8);
    }
}

TEST_CASE("report schema and determinism") {
    ScenarioConfig sc;
    sc.scenario = "heat";
    sc.grid = {128, -2.0, 16.0, 12, 1};
    sc.suites = {"spectral"};

    auto make_report = [&]() {
        ordered_json rep;
        rep["config"] = config_to_json(sc);
        ordered_json suites;
        suites["spectral"] = rows_to_json(run_suite("spectral", sc.seed));
        rep["suites"] = suites;
        auto diag = refinement_study(
            [&](int lvl) { return build_scenario(sc, lvl); }, 3, sc.scheme_enum(),
            {.seed = sc.seed});
        rep["diagnostics"] = diagnostics_to_json(diag);
        return rep;
    };
    auto r1 = make_report();
    SECTION("top-level keys") {
        CHECK(r1.contains("config"));
        CHECK(r1.contains("suites"));
        CHECK(r1.contains("diagnostics"));
        CHECK(r1["diagnostics"].contains("kappa"));
        CHECK(r1["diagnostics"]["refinement"].size() == 3);
    }
    SECTION("identical config and seed give bit-identical reports") {
        auto r2 = make_report();
        CHECK(r1.dump() == r2.dump());
    }
    SECTION("csv table has the stable header") {
        auto diag = refinement_study(
            [&](int lvl) { return build_scenario(sc, lvl); }, 3, sc.scheme_enum(),
            {.seed = sc.seed});
        const std::string csv = refinement_csv(diag);
        CHECK(csv.rfind("level,n_t,n_x,u_1,Cu_half,Cstarv_0,v_half,kappa\n", 0) == 0);
        // one header plus one row per level
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    }
}

TEST_CASE("atomic report writing") {
    const std::string path = "/tmp/evoreg_test_report.json";
    write_atomically(path, "{\"ok\": true}\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "{\"ok\": true}\n");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove(path);
}

TEST_CASE("suite registry") {
    CHECK(suite_names().size() == 5);
    CHECK_THROWS_AS(run_suite("nosuch", 1), config_error);
}
