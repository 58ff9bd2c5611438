#include "offpol/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <utility>

#include "offpol/analysis.hpp"
#include "offpol/errors.hpp"

namespace offpol {

namespace {

constexpr double kDivergenceCap = 1e8;

struct SingleRun {
    Vector rmse;
    bool diverged = false;
    Vector final_theta;
};

SingleRun simulate_run(const Benchmark& benchmark, const RunConfig& config,
                       std::uint64_t seed, const ValueVector& v_exact,
                       const StateWeights& weights,
                       const std::vector<std::int64_t>& eval_iterations) {
    const Mdp& mdp = benchmark.mdp;
    const FeatureMap& features = benchmark.features;
    const double gamma = mdp.discount();
    const double beta_scale = config.beta.has_value() ? *config.beta : -1.0;

    Rng rng(seed);
    LearnerState learner = make_learner_state(config.algorithm, benchmark.theta0);
    int state = 0;

    SingleRun out;
    out.rmse.reserve(eval_iterations.size());
    out.rmse.push_back(weighted_rmse(v_exact, approx_value(features, learner.theta), weights));

    std::size_t next_eval = 1;  // eval_iterations[0] == 0 already recorded
    bool diverged = false;
    double carried = out.rmse.back();

    for (std::int64_t n = 0; n < config.iterations && !diverged; ++n) {
        const TransitionSample sample = sample_transition(mdp, benchmark.behavior, state, rng);
        const double alpha = config.schedule.at(n);
        switch (config.algorithm) {
            case Algorithm::OffPolicyTd:
                learner = step_offpolicy_td(std::move(learner), sample, features,
                                            benchmark.target, benchmark.behavior, gamma, alpha);
                break;
            case Algorithm::PerturbedTd:
                learner = step_perturbed_td(std::move(learner), sample, features,
                                            benchmark.target, benchmark.behavior, gamma,
                                            config.eta, alpha);
                break;
            case Algorithm::Etd:
                learner = step_etd(std::move(learner), sample, features, benchmark.target,
                                   benchmark.behavior, gamma, alpha);
                // flag before the next step would trip the overflow guard
                if (std::get<EtdTrace>(learner.aux).followon > kFollowOnCap) diverged = true;
                break;
            case Algorithm::Tdc:
                learner = step_tdc(std::move(learner), sample, features, benchmark.target,
                                   benchmark.behavior, gamma, alpha,
                                   beta_scale > 0.0 ? beta_scale : alpha);
                break;
        }
        state = sample.next_state;

        if (!diverged && inf_norm(learner.theta) > kDivergenceCap) diverged = true;
        if (diverged) {
            const double rmse =
                weighted_rmse(v_exact, approx_value(features, learner.theta), weights);
            if (std::isfinite(rmse)) carried = rmse;
            break;
        }

        if (next_eval < eval_iterations.size() && n + 1 == eval_iterations[next_eval]) {
            const double rmse =
                weighted_rmse(v_exact, approx_value(features, learner.theta), weights);
            if (!std::isfinite(rmse)) {
                diverged = true;
            } else {
                carried = rmse;
                out.rmse.push_back(rmse);
                ++next_eval;
                if (rmse > kDivergenceCap) diverged = true;
            }
        }
    }

    while (out.rmse.size() < eval_iterations.size()) out.rmse.push_back(carried);
    out.diverged = diverged;
    out.final_theta = std::move(learner.theta);
    return out;
}

}  // namespace

void validate_benchmark(const Benchmark& benchmark) {
    const Mdp& mdp = benchmark.mdp;
    if (benchmark.target.num_states() != mdp.num_states() ||
        benchmark.target.num_actions() != mdp.num_actions())
        throw std::invalid_argument("benchmark: target policy shape does not match MDP");
    if (benchmark.behavior.num_states() != mdp.num_states() ||
        benchmark.behavior.num_actions() != mdp.num_actions())
        throw std::invalid_argument("benchmark: behavior policy shape does not match MDP");
    if (benchmark.features.num_states() != mdp.num_states())
        throw std::invalid_argument("benchmark: feature rows do not match state count");
    if (benchmark.theta0.size() != static_cast<std::size_t>(benchmark.features.dim()))
        throw std::invalid_argument("benchmark: theta0 length does not match feature dimension");
    for (int s = 0; s < mdp.num_states(); ++s)
        for (int a = 0; a < mdp.num_actions(); ++a)
            if (benchmark.target.prob(s, a) > 0.0 && !(benchmark.behavior.prob(s, a) > 0.0))
                throw CoverageError("benchmark: behavior policy does not cover target action " +
                                    std::to_string(a) + " in state " + std::to_string(s));
}

Benchmark build_theta_2theta() {
    // actions: 0 = left, 1 = right
    MdpBuilder mdp(2, 2);
    for (int s = 0; s < 2; ++s) {
        mdp.transition(s, 0, 0, 1.0);
        mdp.transition(s, 1, 1, 1.0);
    }
    mdp.discount(0.9);

    Matrix target(2, 2), behavior(2, 2), phi(2, 1);
    for (int s = 0; s < 2; ++s) {
        target(s, 1) = 1.0;
        behavior(s, 0) = 0.5;
        behavior(s, 1) = 0.5;
    }
    phi(0, 0) = 1.0;
    phi(1, 0) = 2.0;

    Benchmark b{"theta2theta", mdp.build(), Policy(target), Policy(behavior), FeatureMap(phi),
                Vector{1.0}};
    validate_benchmark(b);
    return b;
}

Benchmark build_baird() {
    // actions: 0 = dashed (uniform over the six spokes), 1 = solid (to the hub)
    constexpr int kStates = 7;
    MdpBuilder mdp(kStates, 2);
    for (int s = 0; s < kStates; ++s) {
        for (int spoke = 0; spoke < 6; ++spoke) mdp.transition(s, 0, spoke, 1.0 / 6.0);
        mdp.transition(s, 1, kStates - 1, 1.0);
    }
    mdp.discount(0.99);

    Matrix target(kStates, 2), behavior(kStates, 2), phi(kStates, 8);
    for (int s = 0; s < kStates; ++s) {
        target(s, 1) = 1.0;
        behavior(s, 0) = 6.0 / 7.0;
        behavior(s, 1) = 1.0 / 7.0;
    }
    for (int s = 0; s < 6; ++s) {
        phi(s, s) = 2.0;
        phi(s, 7) = 1.0;
    }
    phi(6, 6) = 1.0;
    phi(6, 7) = 2.0;

    Vector theta0(8, 1.0);
    theta0[6] = 10.0;

    Benchmark b{"baird", mdp.build(), Policy(target), Policy(behavior), FeatureMap(phi),
                std::move(theta0)};
    validate_benchmark(b);
    return b;
}

Benchmark build_chain3() {
    // actions: 0 = left, 1 = right
    MdpBuilder mdp(3, 2);
    mdp.transition(0, 0, 0, 1.0);  // left keeps/returns toward state 0
    mdp.transition(1, 0, 0, 1.0);
    mdp.transition(2, 0, 1, 1.0);
    mdp.transition(0, 1, 1, 1.0);  // right advances toward state 2
    mdp.transition(1, 1, 2, 1.0);
    mdp.transition(2, 1, 2, 1.0);
    for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 2; ++a) mdp.reward(s, a, 1.0);
    mdp.discount(0.9);

    Matrix target(3, 2), behavior(3, 2), phi(3, 2);
    target(0, 1) = 1.0;
    target(1, 0) = 0.5;
    target(1, 1) = 0.5;
    target(2, 0) = 1.0;
    behavior(0, 0) = 0.9;
    behavior(0, 1) = 0.1;
    behavior(1, 0) = 0.5;
    behavior(1, 1) = 0.5;
    behavior(2, 0) = 0.1;
    behavior(2, 1) = 0.9;
    phi(0, 0) = 1.0;
    phi(1, 0) = 1.0;
    phi(1, 1) = 1.0;
    phi(2, 1) = 1.0;

    Benchmark b{"chain3", mdp.build(), Policy(target), Policy(behavior), FeatureMap(phi),
                Vector{0.0, 0.0}};
    validate_benchmark(b);
    return b;
}

std::optional<Benchmark> benchmark_by_name(std::string_view name) {
    if (name == "theta2theta") return build_theta_2theta();
    if (name == "baird") return build_baird();
    if (name == "chain3") return build_chain3();
    return std::nullopt;
}

std::vector<std::string> benchmark_names() { return {"theta2theta", "baird", "chain3"}; }

void validate_run_config(const RunConfig& config) {
    if (config.iterations < 1)
        throw std::invalid_argument("run config: iterations must be >= 1");
    if (config.num_runs < 1) throw std::invalid_argument("run config: runs must be >= 1");
    if (config.eval_stride < 1) throw std::invalid_argument("run config: stride must be >= 1");
    if (config.eta < 0.0) throw std::invalid_argument("run config: eta must be >= 0");
    if (config.beta.has_value() && !(*config.beta > 0.0))
        throw std::invalid_argument("run config: beta must be > 0");
    if (!(config.schedule.alpha0 > 0.0))
        throw std::invalid_argument("run config: alpha must be > 0");
}

bool RunLog::any_diverged() const {
    return std::any_of(diverged.begin(), diverged.end(), [](bool d) { return d; });
}

TransitionSample sample_transition(const Mdp& mdp, const Policy& behavior, int state,
                                   Rng& rng) {
    if (state < 0 || state >= mdp.num_states())
        throw std::invalid_argument("sample_transition: state out of range");
    const int action = sample_categorical(rng, mdp.num_actions(),
                                          [&](int a) { return behavior.prob(state, a); });
    const int next = sample_categorical(rng, mdp.num_states(),
                                        [&](int j) { return mdp.transition(state, action, j); });
    return TransitionSample{state, action, mdp.reward(state, action), next};
}

RunLog run_experiment(const Benchmark& benchmark, const RunConfig& config) {
    validate_benchmark(benchmark);
    validate_run_config(config);

    const ValueVector v_exact = exact_value(benchmark.mdp, benchmark.target);
    const StateWeights weights(
        stationary_distribution(policy_kernel(benchmark.mdp, benchmark.behavior)));

    RunLog log;
    log.eval_iterations.push_back(0);
    for (std::int64_t it = config.eval_stride; it <= config.iterations;
         it += config.eval_stride)
        log.eval_iterations.push_back(it);
    if (log.eval_iterations.back() != config.iterations)
        log.eval_iterations.push_back(config.iterations);

    // independent runs in parallel, collected in run order; bounded batches
    // keep the thread count sane for large run counts
    const int batch = std::max(4, 2 * static_cast<int>(std::thread::hardware_concurrency()));
    for (int first = 0; first < config.num_runs; first += batch) {
        const int last = std::min(first + batch, config.num_runs);
        std::vector<std::future<SingleRun>> futures;
        futures.reserve(static_cast<std::size_t>(last - first));
        for (int k = first; k < last; ++k) {
            const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(k);
            futures.push_back(std::async(std::launch::async, [&, seed] {
                return simulate_run(benchmark, config, seed, v_exact, weights,
                                    log.eval_iterations);
            }));
        }
        for (auto& f : futures) {
            SingleRun run = f.get();
            log.run_rmse.push_back(std::move(run.rmse));
            log.diverged.push_back(run.diverged);
            log.final_theta.push_back(std::move(run.final_theta));
        }
    }

    const std::size_t points = log.eval_iterations.size();
    log.mean_rmse.assign(points, 0.0);
    for (const Vector& series : log.run_rmse)
        for (std::size_t i = 0; i < points; ++i) log.mean_rmse[i] += series[i];
    for (double& m : log.mean_rmse) m /= static_cast<double>(config.num_runs);

    log.final_mean = log.mean_rmse.back();
    if (config.num_runs > 1) {
        double ss = 0.0;
        for (const Vector& series : log.run_rmse) {
            const double dev = series.back() - log.final_mean;
            ss += dev * dev;
        }
        log.final_std = std::sqrt(ss / static_cast<double>(config.num_runs - 1));
    }
    return log;
}

std::string_view algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::OffPolicyTd: return "td0";
        case Algorithm::PerturbedTd: return "perturbed";
        case Algorithm::Etd: return "etd";
        case Algorithm::Tdc: return "tdc";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_by_name(std::string_view name) {
    if (name == "td0") return Algorithm::OffPolicyTd;
    if (name == "perturbed") return Algorithm::PerturbedTd;
    if (name == "etd") return Algorithm::Etd;
    if (name == "tdc") return Algorithm::Tdc;
    return std::nullopt;
}

}  // namespace offpol
