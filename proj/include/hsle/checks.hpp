#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hsle {

struct Check {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
    void add(Check c) { checks.push_back(std::move(c)); }
    nlohmann::json to_json() const;
};

struct SuiteOptions {
    bool quick = false;
    int N = 3;  // cascade: 2 runs the closed-form agreement, 3 the symmetry test
    std::uint64_t seed = 20240917ULL;
    int workers = 1;
};

// Property batteries shared by `verify` and the acceptance runner.
SuiteReport suite_specialfn(const SuiteOptions& o);
SuiteReport suite_pde(const SuiteOptions& o);
SuiteReport suite_cov(const SuiteOptions& o);
SuiteReport suite_asy(const SuiteOptions& o);
SuiteReport suite_cascade(const SuiteOptions& o);
SuiteReport suite_crossing(const SuiteOptions& o);
SuiteReport suite_avoid(const SuiteOptions& o);
SuiteReport suite_poisson(const SuiteOptions& o);
SuiteReport suite_ising_smoke(const SuiteOptions& o);
SuiteReport suite_ising(const SuiteOptions& o);

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& o);  // Usage error for unknown names

}  // namespace hsle
