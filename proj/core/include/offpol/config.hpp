#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "offpol/experiments.hpp"

namespace offpol {

/// Parsed form of the flat key-value experiment config. A config names a
/// built-in benchmark or describes an MDP inline (states/actions/discount
/// plus repeated trans/reward/target/behavior/feature lines); run settings
/// are optional and fall back to defaults in make_run_config().
struct ExperimentConfig {
    struct Transition {
        int state = 0, action = 0, next = 0;
        double prob = 0.0;
    };
    struct Reward {
        int state = 0, action = 0;
        double value = 0.0;
    };

    std::optional<std::string> benchmark;
    std::optional<std::string> name;
    std::optional<int> states;
    std::optional<int> actions;
    std::optional<double> discount;
    std::vector<Transition> transitions;
    std::vector<Reward> rewards;
    std::vector<Vector> target_rows;
    std::vector<Vector> behavior_rows;
    std::vector<Vector> feature_rows;
    std::optional<Vector> theta0;

    std::optional<std::string> algorithm;
    std::optional<double> eta;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::string> schedule;
    std::optional<double> decay;
    std::optional<std::int64_t> iterations;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> stride;
    std::optional<std::string> out;
};

/// Parses the key-value format. Throws ConfigError with the offending 1-based
/// line number and field name.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Builds the benchmark a config describes: a named one, or an inline MDP.
/// Shape and validation problems become ConfigError; coverage violations stay
/// CoverageError.
Benchmark make_benchmark(const ExperimentConfig& config);

/// Builds run settings from the config, applying defaults for unset fields
/// (algo perturbed, eta 0, constant alpha 0.01, 10^4 iterations, 10 runs,
/// seed 0, stride 100).
RunConfig make_run_config(const ExperimentConfig& config);

/// Emits an inline config describing the benchmark. Values are printed in
/// shortest round-trip form, so parsing the output reproduces the benchmark
/// exactly.
std::string describe(const Benchmark& benchmark);

}  // namespace offpol
