#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "offpol/analysis.hpp"
#include "offpol/errors.hpp"
#include "offpol/experiments.hpp"
#include "support/generators.hpp"

using namespace offpol;

TEST_CASE("built-in benchmarks match their defining constants") {
    const Benchmark t2t = build_theta_2theta();
    CHECK(t2t.mdp.num_states() == 2);
    CHECK(t2t.mdp.discount() == 0.9);
    CHECK(t2t.features.phi()(1, 0) == 2.0);
    CHECK(t2t.theta0 == Vector{1.0});
    CHECK(eta_lower_bound(t2t.mdp, t2t.target, t2t.behavior) == doctest::Approx(0.8));

    const Benchmark baird = build_baird();
    CHECK(baird.mdp.num_states() == 7);
    CHECK(baird.mdp.discount() == 0.99);
    CHECK(baird.features.dim() == 8);
    CHECK(approx_value(baird.features, baird.theta0)[6] == doctest::Approx(12.0));
    for (double v : exact_value(baird.mdp, baird.target)) CHECK(v == doctest::Approx(0.0));
    CHECK_FALSE(is_positive_definite(
        expected_system(baird.mdp, baird.target, baird.behavior, baird.features, 0.0)));

    const Benchmark chain = build_chain3();
    const Vector d = stationary_distribution(policy_kernel(chain.mdp, chain.behavior));
    CHECK(d[1] == doctest::Approx(1.0 / 11.0).epsilon(1e-10));
    const StateWeights w(d);
    const double best =
        weighted_rmse(exact_value(chain.mdp, chain.target),
                      project(chain.features, w, exact_value(chain.mdp, chain.target)).values,
                      w);
    CHECK(best == doctest::Approx(2.548).epsilon(1e-3));
}

TEST_CASE("all three benchmark behavior chains admit positive stationary distributions") {
    for (const std::string& name : benchmark_names()) {
        const Benchmark b = *benchmark_by_name(name);
        CHECK_NOTHROW(validate_benchmark(b));
        const Vector d = stationary_distribution(policy_kernel(b.mdp, b.behavior));
        for (double x : d) CHECK(x > 0.0);
    }
}

TEST_CASE("validate_benchmark rejects missing coverage") {
    Benchmark b = build_theta_2theta();
    Matrix no_right(2, 2);
    no_right(0, 0) = 1.0;
    no_right(1, 0) = 1.0;
    b.behavior = Policy(no_right);
    CHECK_THROWS_AS(validate_benchmark(b), CoverageError);
}

TEST_CASE("sample_transition follows deterministic rows") {
    const Benchmark t2t = build_theta_2theta();
    Rng rng(9);
    Matrix always_right(2, 2);
    always_right(0, 1) = 1.0;
    always_right(1, 1) = 1.0;
    const Policy det(always_right);
    for (int i = 0; i < 50; ++i) {
        const TransitionSample s = sample_transition(t2t.mdp, det, 0, rng);
        CHECK(s.action == 1);
        CHECK(s.next_state == 1);
        CHECK(s.reward == 0.0);
    }
}

TEST_CASE("sample_transition frequencies match the behavior policy") {
    const Benchmark chain = build_chain3();
    Rng rng(123);
    const int draws = 100000;
    int counts[2] = {0, 0};
    for (int i = 0; i < draws; ++i) {
        const TransitionSample s = sample_transition(chain.mdp, chain.behavior, 0, rng);
        ++counts[s.action];
    }
    // state 0 behavior row is (0.9, 0.1); allow 3 sigma binomial slack
    const double p = 0.9;
    const double sigma = std::sqrt(p * (1.0 - p) * draws);
    CHECK(std::abs(counts[0] - p * draws) <= 3.0 * sigma);
}

TEST_CASE("run_experiment is deterministic and seed-order independent") {
    const Benchmark chain = build_chain3();
    RunConfig config;
    config.algorithm = Algorithm::PerturbedTd;
    config.eta = 0.5;
    config.schedule = StepSchedule::constant(0.001);
    config.iterations = 5000;
    config.num_runs = 3;
    config.base_seed = 42;
    config.eval_stride = 100;

    const RunLog a = run_experiment(chain, config);
    const RunLog b = run_experiment(chain, config);
    CHECK(a.mean_rmse == b.mean_rmse);
    CHECK(a.run_rmse == b.run_rmse);
    CHECK(a.final_theta == b.final_theta);

    // the mean is the plain average of the three single-seed runs
    for (std::size_t i = 0; i < a.mean_rmse.size(); ++i) {
        double sum = 0.0;
        for (int k = 0; k < 3; ++k) sum += a.run_rmse[k][i];
        CHECK(a.mean_rmse[i] == sum / 3.0);
    }
    for (int k = 0; k < 3; ++k) {
        RunConfig single = config;
        single.num_runs = 1;
        single.base_seed = config.base_seed + static_cast<std::uint64_t>(k);
        const RunLog solo = run_experiment(chain, single);
        CHECK(solo.run_rmse[0] == a.run_rmse[k]);
    }
}

TEST_CASE("initial RMSE entries use the analytic value function and weighting") {
    const Benchmark t2t = build_theta_2theta();
    RunConfig config;
    config.algorithm = Algorithm::PerturbedTd;
    config.eta = 1.0;
    config.iterations = 100;
    config.num_runs = 1;
    const RunLog log = run_experiment(t2t, config);
    CHECK(log.eval_iterations.front() == 0);
    CHECK(log.run_rmse[0].front() == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));

    const Benchmark chain = build_chain3();
    const RunLog chain_log = run_experiment(chain, config);
    CHECK(chain_log.run_rmse[0].front() == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("evaluation grid covers a final partial stride") {
    const Benchmark t2t = build_theta_2theta();
    RunConfig config;
    config.iterations = 250;
    config.num_runs = 1;
    config.eval_stride = 100;
    const RunLog log = run_experiment(t2t, config);
    CHECK(log.eval_iterations == std::vector<std::int64_t>{0, 100, 200, 250});
    CHECK(log.run_rmse[0].size() == 4);
}

TEST_CASE("divergent off-policy TD runs are flagged and truncated") {
    const Benchmark t2t = build_theta_2theta();
    RunConfig config;
    config.algorithm = Algorithm::OffPolicyTd;
    config.schedule = StepSchedule::constant(0.01);
    config.iterations = 20000;
    config.num_runs = 5;
    config.base_seed = 7;
    const RunLog log = run_experiment(t2t, config);
    CHECK(log.any_diverged());
    for (int k = 0; k < log.num_runs(); ++k) {
        CHECK(log.diverged[k]);
        const Vector& series = log.run_rmse[k];
        // carried-forward tail after truncation
        const double last = series.back();
        for (std::size_t i = series.size() - 20; i < series.size(); ++i)
            CHECK(series[i] == last);
        CHECK(last > 1e6);
    }
}

TEST_CASE("perturbed TD converges to its fixed-point RMSE for eta above the bound") {
    struct Case {
        Benchmark benchmark;
        double eta;
    };
    const std::vector<Case> cases = {{build_chain3(), 8.1}, {build_theta_2theta(), 0.9}};
    for (const Case& c : cases) {
        const double bound = eta_lower_bound(c.benchmark.mdp, c.benchmark.target,
                                             c.benchmark.behavior);
        REQUIRE(c.eta > bound);
        const ExpectedSystem system = expected_system(c.benchmark.mdp, c.benchmark.target,
                                                      c.benchmark.behavior,
                                                      c.benchmark.features, c.eta);
        const Vector theta_star = fixed_point(system);
        const StateWeights w(
            stationary_distribution(policy_kernel(c.benchmark.mdp, c.benchmark.behavior)));
        const double target_rmse =
            weighted_rmse(exact_value(c.benchmark.mdp, c.benchmark.target),
                          approx_value(c.benchmark.features, theta_star), w);

        RunConfig config;
        config.algorithm = Algorithm::PerturbedTd;
        config.eta = c.eta;
        config.schedule = StepSchedule::constant(1e-4);
        config.iterations = 1000000;
        config.num_runs = 3;
        config.base_seed = 11;
        const RunLog log = run_experiment(c.benchmark, config);
        CHECK_FALSE(log.any_diverged());
        CHECK(std::abs(log.final_mean - target_rmse) <= 0.1 * target_rmse + 1e-6);
    }
}

TEST_CASE("ETD runs on Baird complete with well-formed logs") {
    const Benchmark baird = build_baird();
    RunConfig config;
    config.algorithm = Algorithm::Etd;
    config.schedule = StepSchedule::constant(1e-4);
    config.iterations = 20000;
    config.num_runs = 2;
    config.base_seed = 3;
    const RunLog log = run_experiment(baird, config);
    CHECK(log.run_rmse.size() == 2);
    for (const Vector& series : log.run_rmse) CHECK(series.size() == log.eval_iterations.size());
    for (double m : log.mean_rmse) CHECK(std::isfinite(m));
}

TEST_CASE("run config validation") {
    const Benchmark t2t = build_theta_2theta();
    RunConfig config;
    config.iterations = 0;
    CHECK_THROWS_AS(run_experiment(t2t, config), std::invalid_argument);
    config.iterations = 10;
    config.num_runs = 0;
    CHECK_THROWS_AS(run_experiment(t2t, config), std::invalid_argument);
    config.num_runs = 1;
    config.eta = -1.0;
    CHECK_THROWS_AS(run_experiment(t2t, config), std::invalid_argument);
}

TEST_CASE("algorithm names round trip") {
    for (Algorithm algo : {Algorithm::OffPolicyTd, Algorithm::PerturbedTd, Algorithm::Etd,
                           Algorithm::Tdc})
        CHECK(algorithm_by_name(algorithm_name(algo)) == algo);
    CHECK_FALSE(algorithm_by_name("sarsa").has_value());
}
