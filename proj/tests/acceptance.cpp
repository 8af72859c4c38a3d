// One PASS/FAIL line per acceptance criterion. Exit status 1 if any criterion fails.
//   acceptance [--quick] [--only <criterion-key>] [--json <file>]
#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "hsle/checks.hpp"
#include "hsle/mc.hpp"

using namespace hsle;

namespace {

struct Criterion {
    const char* key;
    const char* title;
    double budget_s;  // wall-clock limit
    std::function<std::vector<SuiteReport>(SuiteOptions)> run;
};

std::vector<SuiteReport> one(const char* suite, SuiteOptions o) { return {run_suite(suite, o)}; }

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {"specialfn", "special functions: 2F1 closed form, value at 1, monotone F", 5,
         [](SuiteOptions o) { return one("specialfn", o); }},
        {"pde", "ODE/PDE residuals contract at order step^2", 30, [](SuiteOptions o) { return one("pde", o); }},
        {"cov", "Mobius covariance over 200 random maps", 10, [](SuiteOptions o) { return one("cov", o); }},
        {"asy", "ASY limits for the N=2 patterns", 60, [](SuiteOptions o) { return one("asy", o); }},
        {"crossing", "kappa=4 crossing probability, nu=-4, n=1e4, dt=1e-4", 600,
         [](SuiteOptions o) { return one("crossing", o); }},
        {"avoid", "avoid probability, kappa=6, n=1e4", 900, [](SuiteOptions o) { return one("avoid", o); }},
        {"poisson", "Poisson-kernel martingale identity, kappa=3, nu=0, (1,2)", 900,
         [](SuiteOptions o) { return one("poisson", o); }},
        {"cascade", "cascade: N=2 closed form at n=5000, N=3 k-symmetry and bound", 1800,
         [](SuiteOptions o) {
             SuiteOptions a = o, b = o;
             a.N = 2;
             b.N = 3;
             return std::vector<SuiteReport>{run_suite("cascade", a), run_suite("cascade", b)};
         }},
        {"ising", "Ising: Dobrushin kappa slope at 64x64, FKG, RSW", 1800,
         [](SuiteOptions o) {
             return std::vector<SuiteReport>{run_suite("ising-smoke", o), run_suite("ising", o)};
         }},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    SuiteOptions o;
    o.workers = resolve_workers(0);
    o.seed = default_seed();
    std::string only, json_path;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) {
            o.quick = true;
        } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
            only = argv[++i];
        } else if (!std::strcmp(argv[i], "--json") && i + 1 < argc) {
            json_path = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--quick] [--only key] [--json file]\n";
            return 2;
        }
    }
    std::cout << "seed=" << o.seed << " workers=" << o.workers << (o.quick ? " (quick sizes)" : "") << std::endl;
    bool all_pass = true;
    nlohmann::json report = nlohmann::json::array();
    for (const Criterion& c : criteria()) {
        if (!only.empty() && only != c.key) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<SuiteReport> reps;
        std::string error;
        try {
            reps = c.run(o);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int n = 0, failed = 0;
        for (const auto& r : reps)
            for (const auto& ch : r.checks) {
                ++n;
                failed += !ch.pass;
            }
        const bool in_budget = o.quick || secs <= c.budget_s;
        const bool pass = error.empty() && failed == 0 && n > 0 && in_budget;
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << (n - failed) << "/" << n << " checks, "
                  << secs << " s of " << c.budget_s << " s]" << std::endl;
        if (!error.empty()) std::cout << "      error: " << error << std::endl;
        if (!in_budget) std::cout << "      over the runtime budget" << std::endl;
        for (const auto& r : reps)
            for (const auto& ch : r.checks)
                std::cout << "      " << (ch.pass ? "ok   " : "FAIL ") << ch.name << ": " << ch.value << " (target "
                          << ch.target << ", tol " << ch.tolerance << ")"
                          << (ch.detail.empty() ? "" : "  " + ch.detail) << std::endl;
        nlohmann::json j = {{"criterion", c.key}, {"pass", pass}, {"seconds", secs}, {"budget_s", c.budget_s}};
        j["suites"] = nlohmann::json::array();
        for (const auto& r : reps) j["suites"].push_back(r.to_json());
        if (!error.empty()) j["error"] = error;
        report.push_back(j);
    }
    if (!json_path.empty()) std::ofstream(json_path) << report.dump(2) << '\n';
    return all_pass ? 0 : 1;
}
