#include <benchmark/benchmark.h>

#include "offpol/analysis.hpp"
#include "offpol/experiments.hpp"

using namespace offpol;

namespace {

void BM_PerturbedStep(benchmark::State& state) {
    const Benchmark b = build_baird();  // d = 8, the largest built-in feature space
    Rng rng(1);
    LearnerState learner = make_learner_state(Algorithm::PerturbedTd, b.theta0);
    int s = 0;
    for (auto _ : state) {
        const TransitionSample sample = sample_transition(b.mdp, b.behavior, s, rng);
        learner = step_perturbed_td(std::move(learner), sample, b.features, b.target,
                                    b.behavior, b.mdp.discount(), 6.5, 1e-4);
        s = sample.next_state;
    }
    benchmark::DoNotOptimize(learner.theta.data());
}
BENCHMARK(BM_PerturbedStep);

void BM_TdcStep(benchmark::State& state) {
    const Benchmark b = build_baird();
    Rng rng(1);
    LearnerState learner = make_learner_state(Algorithm::Tdc, b.theta0);
    int s = 0;
    for (auto _ : state) {
        const TransitionSample sample = sample_transition(b.mdp, b.behavior, s, rng);
        learner = step_tdc(std::move(learner), sample, b.features, b.target, b.behavior,
                           b.mdp.discount(), 1e-4, 1e-4);
        s = sample.next_state;
    }
    benchmark::DoNotOptimize(learner.theta.data());
}
BENCHMARK(BM_TdcStep);

void BM_RunExperimentChain3(benchmark::State& state) {
    const Benchmark b = build_chain3();
    RunConfig config;
    config.algorithm = Algorithm::PerturbedTd;
    config.eta = 0.5;
    config.schedule = StepSchedule::constant(1e-4);
    config.iterations = state.range(0);
    config.num_runs = 1;
    config.eval_stride = 1000;
    for (auto _ : state) {
        const RunLog log = run_experiment(b, config);
        benchmark::DoNotOptimize(log.final_mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExperimentChain3)->Arg(10000)->Arg(100000);

void BM_ExpectedSystem(benchmark::State& state) {
    const Benchmark b = build_baird();
    for (auto _ : state) {
        const ExpectedSystem s =
            expected_system(b.mdp, b.target, b.behavior, b.features, 6.5);
        benchmark::DoNotOptimize(s.min_sym_eigenvalue);
    }
}
BENCHMARK(BM_ExpectedSystem);

}  // namespace

BENCHMARK_MAIN();
