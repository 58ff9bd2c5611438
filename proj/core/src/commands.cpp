#include "offpol/commands.hpp"

#include <fstream>

#include "offpol/analysis.hpp"
#include "offpol/errors.hpp"

namespace offpol {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps line endings byte-stable
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

EtaAnalysis analyze_eta(const Benchmark& benchmark, const StateWeights& weights,
                        const ValueVector& v_exact, double eta) {
    EtaAnalysis entry;
    entry.system = expected_system(benchmark.mdp, benchmark.target, benchmark.behavior,
                                   benchmark.features, eta);
    try {
        entry.theta_star = fixed_point(entry.system);
        entry.fixed_point_rmse =
            weighted_rmse(v_exact, approx_value(benchmark.features, *entry.theta_star), weights);
    } catch (const NumericError& e) {
        entry.fixed_point_error = e.what();
    }
    return entry;
}

}  // namespace

RunOutput cmd_run(const Benchmark& benchmark, const RunConfig& config,
                  const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    RunOutput output;
    output.log = run_experiment(benchmark, config);
    output.trajectory_csv = out_dir / "trajectory.csv";
    output.summary_txt = out_dir / "summary.txt";
    {
        std::ofstream csv = open_output(output.trajectory_csv);
        write_trajectory_csv(csv, output.log);
    }
    {
        std::ofstream summary = open_output(output.summary_txt);
        write_summary(summary, benchmark.name, config, output.log);
    }
    return output;
}

AnalysisReport cmd_analyze(const Benchmark& benchmark, const std::vector<double>& etas) {
    validate_benchmark(benchmark);
    AnalysisReport report;
    report.benchmark_name = benchmark.name;
    report.eta_bound = eta_lower_bound(benchmark.mdp, benchmark.target, benchmark.behavior);

    const StateWeights weights(
        stationary_distribution(policy_kernel(benchmark.mdp, benchmark.behavior)));
    const ValueVector v_exact = exact_value(benchmark.mdp, benchmark.target);
    try {
        report.best_rmse =
            weighted_rmse(v_exact, project(benchmark.features, weights, v_exact).values, weights);
    } catch (const RankError& e) {
        report.best_rmse_error = e.what();
    }
    for (double eta : etas) report.entries.push_back(analyze_eta(benchmark, weights, v_exact, eta));
    return report;
}

SweepOutput cmd_sweep(const Benchmark& benchmark, const RunConfig& base_config,
                      const std::vector<double>& etas, const std::filesystem::path& out_dir) {
    validate_benchmark(benchmark);
    const StateWeights weights(
        stationary_distribution(policy_kernel(benchmark.mdp, benchmark.behavior)));
    const ValueVector v_exact = exact_value(benchmark.mdp, benchmark.target);

    SweepOutput output;
    for (double eta : etas) {
        const EtaAnalysis entry = analyze_eta(benchmark, weights, v_exact, eta);
        RunConfig config = base_config;
        config.algorithm = Algorithm::PerturbedTd;
        config.eta = eta;
        const RunLog log = run_experiment(benchmark, config);
        output.rows.push_back(SweepRow{eta, is_positive_definite(entry.system),
                                       entry.system.min_sym_eigenvalue, entry.fixed_point_rmse,
                                       log.final_mean});
    }

    std::filesystem::create_directories(out_dir);
    output.sweep_csv = out_dir / "sweep.csv";
    std::ofstream csv = open_output(output.sweep_csv);
    write_sweep_csv(csv, output.rows);
    return output;
}

}  // namespace offpol
