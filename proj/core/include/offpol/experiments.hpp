#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "offpol/learners.hpp"
#include "offpol/linear_arch.hpp"
#include "offpol/mdp.hpp"
#include "offpol/rng.hpp"

namespace offpol {

/// A complete off-policy prediction task: MDP, target/behavior policy pair,
/// features and the initial weights.
struct Benchmark {
    std::string name;
    Mdp mdp;
    Policy target;
    Policy behavior;
    FeatureMap features;
    Vector theta0;
};

/// Shape-checks the pieces and enforces coverage: mu(s,a) > 0 wherever
/// pi(s,a) > 0. Throws CoverageError / std::invalid_argument.
void validate_benchmark(const Benchmark& benchmark);

/// Two-state counterexample: 'left' moves to state 0, 'right' to state 1, all
/// rewards zero, one feature per state (1 and 2), gamma 0.9. Target always
/// moves right, behavior picks uniformly.
Benchmark build_theta_2theta();

/// Baird's 7-star: 'solid' jumps to the hub deterministically, 'dashed' is
/// uniform over the six spokes, rewards zero, gamma 0.99, the classic 8
/// features over 7 states and theta0 = (1,...,1,10,1). Behavior takes dashed
/// with probability 6/7.
Benchmark build_baird();

/// Three-state chain with unit rewards, gamma 0.9, two-dimensional features
/// and mirrored target/behavior policies.
Benchmark build_chain3();

/// Lookup by CLI name: "theta2theta", "baird", "chain3".
std::optional<Benchmark> benchmark_by_name(std::string_view name);
std::vector<std::string> benchmark_names();

struct RunConfig {
    Algorithm algorithm = Algorithm::PerturbedTd;
    double eta = 0.0;
    StepSchedule schedule = StepSchedule::constant(0.01);
    std::optional<double> beta;  ///< TDC secondary step; defaults to the alpha schedule
    std::int64_t iterations = 10000;
    int num_runs = 10;
    std::uint64_t base_seed = 0;
    std::int64_t eval_stride = 100;
};

void validate_run_config(const RunConfig& config);

/// RMSE trajectories of independent runs on a shared evaluation grid, their
/// pointwise mean, per-run divergence flags and final weights, and the
/// mean/standard deviation of the final RMSE.
struct RunLog {
    std::vector<std::int64_t> eval_iterations;
    std::vector<Vector> run_rmse;
    Vector mean_rmse;
    std::vector<bool> diverged;
    std::vector<Vector> final_theta;
    double final_mean = 0.0;
    double final_std = 0.0;

    int num_runs() const { return static_cast<int>(run_rmse.size()); }
    bool any_diverged() const;
};

/// Draws action ~ mu(state, .), then next state ~ p(.|state, action); the two
/// uniform draws are consumed in that fixed order. Reward is the deterministic
/// r(s,a).
TransitionSample sample_transition(const Mdp& mdp, const Policy& behavior, int state,
                                   Rng& rng);

/// Runs `config.num_runs` independent single-trajectory simulations (run k is
/// seeded base_seed + k, starting in state 0) and records the d_mu-weighted
/// RMSE against the exact value function every eval_stride iterations.
///
/// A run is flagged diverged once ||theta||_inf > 1e8, the recorded RMSE
/// exceeds 1e8, or the ETD follow-on trace overflows; it is then truncated
/// with its last RMSE carried forward.
RunLog run_experiment(const Benchmark& benchmark, const RunConfig& config);

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> algorithm_by_name(std::string_view name);

}  // namespace offpol
