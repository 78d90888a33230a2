#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scatgen/generator.hpp"
#include "scatgen/types.hpp"

namespace scatgen::cli {

struct UsageError : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct CliConfig {
    std::string subcommand;

    std::vector<std::string> target_pairs;    // measure=value
    std::vector<std::string> clone_measures;  // restrict clone targets
    int n_total = 50;
    bool n_total_given = false;
    int n_init = 5;
    double sigma2 = 0.1;
    std::optional<std::uint64_t> seed;  // SCATGEN_SEED env honored when absent
    double t0 = 5230.0;
    double qv = 2.62;
    double qa = -5.0;
    int max_iter = 5000;
    double stop_threshold = 0.0001;

    std::string input;
    std::string output;
    std::string format = "csv";  // csv | json
    std::string plot;
    bool trace = false;

    // bench options
    std::vector<std::string> bench_measures;
    std::vector<double> bench_values{0.0, 0.5, 1.0};
    int replicates = 20;
    int workers = 1;
    std::vector<int> init_points{5, 25, 40};

    bool help_requested = false;
    std::string help_text;
};

// Pure argv -> config translation ("--help" fills help_text instead of
// printing). Throws UsageError naming the offending flag on bad input.
CliConfig parse_cli(const std::vector<std::string>& args);

// measure=value pairs -> validated TargetSpec
TargetSpec parse_targets(const std::vector<std::string>& pairs);

// resolved seed: --seed flag, then SCATGEN_SEED, then 0
std::uint64_t resolve_seed(const CliConfig& config);

GeneratorConfig generator_config(const CliConfig& config);

// executes a parsed command; returns the process exit code
int dispatch(const CliConfig& config);

int run_cli(int argc, const char* const* argv);

}  // namespace scatgen::cli
