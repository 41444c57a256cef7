// Acceptance suite: runs every verification row, groups them by criterion,
// and prints one pass/fail line per criterion with its elapsed time against
// the stated runtime budget.  Exit code 0 iff all criteria pass.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>

#include "evoreg/evoreg.hpp"

namespace {

using namespace evoreg;
using clock_type = std::chrono::steady_clock;

struct Criterion {
    std::string label;
    double budget_seconds;
    std::vector<std::string> suites;  // suites contributing rows
};

}  // namespace

int main() {
    const unsigned seed = 12345;

    const std::map<int, Criterion> criteria = {
        {1, {"spectral identities (Parseval, adjoint, semigroup)", 10.0, {"spectral"}}},
        {2, {"oracle equivalence (RL and singular integral vs spectral)", 30.0, {"fractional"}}},
        {3, {"closed-form kernel identity sqrt(rho) - sqrt(rho0)", 5.0, {"commutator"}}},
        {4, {"positivity of the fractional symbol", 5.0, {"fractional"}}},
        {5, {"commutator behavior across law classes", 60.0, {"commutator"}}},
        {6, {"solver correctness (manufactured, residual, causality)", 120.0, {"solver"}}},
        {7, {"maximal regularity at desk scale (4 scenarios)", 300.0, {"maxreg"}}},
        {8, {"regularity phenomenon with rough data", 120.0, {"maxreg"}}},
        {9, {"polynomial root bound (1000 randomized instances)", 5.0, {"maxreg"}}},
        {10, {"admissibility and integro well-posedness growth", 30.0, {"commutator", "solver"}}},
    };

    // run each suite once, attributing its elapsed time to the criteria it
    // feeds (budgets are per criterion and generous; a suite shared between
    // two criteria is charged to both).
    std::map<std::string, std::vector<CheckRow>> suite_rows;
    std::map<std::string, double> suite_elapsed;
    for (const auto& name : suite_names()) {
        const auto t0 = clock_type::now();
        try {
            suite_rows[name] = run_suite(name, seed);
        } catch (const std::exception& e) {
            std::cerr << "suite " << name << " aborted: " << e.what() << "\n";
            suite_rows[name] = {};
        }
        suite_elapsed[name] =
            std::chrono::duration<double>(clock_type::now() - t0).count();
    }

    bool all_pass = true;
    for (const auto& [id, crit] : criteria) {
        bool pass = true;
        int checked = 0;
        double worst_margin = std::numeric_limits<double>::infinity();
        std::string failing;
        double elapsed = 0.0;
        for (const auto& sname : crit.suites) {
            elapsed += suite_elapsed[sname];
            for (const auto& row : suite_rows[sname]) {
                if (row.criterion != id) continue;
                ++checked;
                if (!row.pass) {
                    pass = false;
                    if (failing.empty()) failing = row.name;
                }
            }
        }
        (void)worst_margin;
        if (checked == 0) {
            pass = false;
            failing = "no rows produced";
        }
        const bool in_budget = elapsed < crit.budget_seconds;
        pass = pass && in_budget;
        all_pass = all_pass && pass;
        std::cout << "criterion " << std::setw(2) << id << " ["
                  << (pass ? "PASS" : "FAIL") << "] " << crit.label << " (" << checked
                  << " checks, " << std::fixed << std::setprecision(1) << elapsed
                  << "s of " << crit.budget_seconds << "s budget)";
        if (!pass && !failing.empty()) std::cout << "  first failure: " << failing;
        std::cout << "\n";
    }
    std::cout << (all_pass ? "ACCEPTANCE: all criteria pass"
                           : "ACCEPTANCE: failures present")
              << "\n";
    return all_pass ? 0 : 1;
}
