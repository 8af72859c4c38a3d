#pragma once

#include <string>
#include <vector>

#include "CLI11.hpp"

namespace hsle::cli {

enum Exit { kPass = 0, kStatFail = 1, kUsage = 2, kInternal = 3 };

// each returns the process exit code once its subcommand has been parsed
struct Command {
    CLI::App* app = nullptr;
    std::function<int()> run;
};

Command add_simulate(CLI::App& root);
Command add_verify(CLI::App& root);
Command add_ising(CLI::App& root);

// the argument vector after the program name, kept in manifests for `rerun`
const std::vector<std::string>& invocation();

}  // namespace hsle::cli
