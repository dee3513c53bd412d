#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace qlab {

// A fully specified, reproducible experiment: every report is a pure
// function of this config.
struct ExperimentConfig {
    std::string command;  // verify-reduction | grover-scan | sampling-tests
    int n = 6;
    std::vector<int> sizes = {4, 8, 16, 32, 64};  // grover-scan only
    std::uint64_t seed = 0;
    bool exact = true;
    long trials = 60000;
    std::string out_path;          // empty writes to stdout
    std::string format = "json";   // json | csv
};

struct CommandResult {
    std::string text;
    bool all_pass = false;
};

CommandResult run_verify_reduction(const ExperimentConfig& cfg);
CommandResult run_grover_scan(const ExperimentConfig& cfg);
CommandResult run_sampling_tests(const ExperimentConfig& cfg);
CommandResult run_command(const ExperimentConfig& cfg);

// Parses flags, runs the subcommand, writes the report. Exit status 0 when
// every bound check passes, 1 when some check fails, 2 on usage errors.
int run_cli(int argc, char** argv);

}  // namespace qlab
