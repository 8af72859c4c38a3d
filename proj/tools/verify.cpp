#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "hsle/checks.hpp"
#include "hsle/io.hpp"
#include "hsle/mc.hpp"

namespace hsle::cli {

namespace {

void print_report(const SuiteReport& r) {
    std::cout << "suite " << r.suite << " (" << r.seconds << " s)\n";
    for (const Check& c : r.checks) {
        std::cout << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  value=" << c.value
                  << " target=" << c.target << " tol=" << c.tolerance;
        if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
        std::cout << '\n';
    }
}

}  // namespace

Command add_verify(CLI::App& root) {
    struct Args {
        std::string suite;
        bool quick = false;
        int N = 3;
        std::uint64_t seed = 0;
        int workers = 1;
        std::string json;
    };
    auto a = std::make_shared<Args>();
    a->seed = default_seed();
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    CLI::App* app = root.add_subcommand("verify", "run a property battery; exit 1 on any failed check");
    app->add_option("suite", a->suite, "suite name or 'all'")->required()->check(CLI::IsMember(choices));
    app->add_flag("--quick", a->quick, "reduced sample sizes");
    app->add_option("--N", a->N, "cascade: 2 compares with the closed form, 3 tests k-symmetry")
        ->check(CLI::Range(2, 3));
    app->add_option("--seed", a->seed, "master seed (default HSLE_SEED)");
    app->add_option("--workers", a->workers, "worker threads (0: all cores)");
    app->add_option("--json", a->json, "write the JSON report here ('-' for stdout)");
    return {app, [a]() {
                SuiteOptions o;
                o.quick = a->quick;
                o.N = a->N;
                o.seed = a->seed;
                o.workers = a->workers;
                std::vector<std::string> names;
                if (a->suite == "all")
                    names = suite_names();
                else
                    names.push_back(a->suite);
                nlohmann::json report = {{"version", kToolVersion},
                                         {"seed", a->seed},
                                         {"quick", a->quick},
                                         {"argv", invocation()},
                                         {"suites", nlohmann::json::array()}};
                bool ok = true;
                for (const std::string& n : names) {
                    const SuiteReport r = run_suite(n, o);
                    if (a->json != "-") print_report(r);
                    report["suites"].push_back(r.to_json());
                    ok = ok && r.pass();
                }
                report["pass"] = ok;
                if (a->json == "-") {
                    std::cout << report.dump(2) << '\n';
                } else if (!a->json.empty()) {
                    std::ofstream f(a->json);
                    f << report.dump(2) << '\n';
                }
                return ok ? int(kPass) : int(kStatFail);
            }};
}

}  // namespace hsle::cli
