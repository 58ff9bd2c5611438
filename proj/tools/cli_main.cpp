#include "cli_main.hpp"

#include <CLI11.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "offpol/commands.hpp"
#include "offpol/errors.hpp"

namespace offpol {

namespace {

struct Flags {
    std::optional<std::string> config_path;
    std::optional<std::string> env;
    std::optional<std::string> algo;
    std::optional<std::string> eta;  // single value for run, comma list for analyze/sweep
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::string> schedule;
    std::optional<double> decay;
    std::optional<std::int64_t> iters;
    std::optional<int> runs;
    std::optional<std::int64_t> seed;
    std::optional<std::int64_t> stride;
    std::optional<std::string> out;
};

void add_common_flags(CLI::App& cmd, Flags& flags) {
    cmd.add_option("--config", flags.config_path, "experiment config file");
    cmd.add_option("--env", flags.env, "built-in benchmark name (theta2theta, baird, chain3)");
}

void add_run_flags(CLI::App& cmd, Flags& flags) {
    cmd.add_option("--algo", flags.algo, "algorithm: td0, perturbed, etd, tdc");
    cmd.add_option("--alpha", flags.alpha, "step size");
    cmd.add_option("--beta", flags.beta, "TDC secondary step size (defaults to alpha)");
    cmd.add_option("--schedule", flags.schedule, "step schedule: constant or polynomial");
    cmd.add_option("--decay", flags.decay, "polynomial decay exponent in (0.5, 1]");
    cmd.add_option("--iters", flags.iters, "iterations per run");
    cmd.add_option("--runs", flags.runs, "number of independent runs");
    cmd.add_option("--seed", flags.seed, "base seed; run k uses seed + k");
    cmd.add_option("--stride", flags.stride, "record RMSE every this many iterations");
    cmd.add_option("--out", flags.out, "output directory");
}

double parse_eta_value(const std::string& text) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("eta: expected a number, got '" + text + "'");
    }
}

std::vector<double> parse_eta_list(const std::string& text) {
    std::vector<double> etas;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) etas.push_back(parse_eta_value(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (etas.empty()) throw ConfigError("eta: expected a comma-separated list of numbers");
    return etas;
}

ExperimentConfig merge(const Flags& flags, bool eta_is_scalar) {
    ExperimentConfig config;
    if (flags.config_path) config = parse_config_file(*flags.config_path);
    if (flags.env) config.benchmark = flags.env;
    if (flags.algo) config.algorithm = flags.algo;
    if (flags.eta && eta_is_scalar) config.eta = parse_eta_value(*flags.eta);
    if (flags.alpha) config.alpha = flags.alpha;
    if (flags.beta) config.beta = flags.beta;
    if (flags.schedule) config.schedule = flags.schedule;
    if (flags.decay) config.decay = flags.decay;
    if (flags.iters) config.iterations = flags.iters;
    if (flags.runs) config.runs = flags.runs;
    if (flags.seed) config.seed = static_cast<std::uint64_t>(*flags.seed);
    if (flags.stride) config.stride = flags.stride;
    if (flags.out) config.out = flags.out;
    return config;
}

std::vector<double> etas_for_report(const Flags& flags, const ExperimentConfig& config,
                                    bool required) {
    if (flags.eta) return parse_eta_list(*flags.eta);
    if (config.eta) return {*config.eta};
    if (required) throw ConfigError("eta: a list of eta values is required");
    return {};
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Off-policy TD prediction toolkit"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* run = app.add_subcommand("run", "simulate a learner and write trajectory.csv");
    add_common_flags(*run, flags);
    run->add_option("--eta", flags.eta, "perturbation parameter");
    add_run_flags(*run, flags);

    CLI::App* analyze =
        app.add_subcommand("analyze", "report the expected update system per eta");
    add_common_flags(*analyze, flags);
    analyze->add_option("--eta", flags.eta, "comma-separated eta values");

    CLI::App* sweep = app.add_subcommand("sweep", "eta study; writes sweep.csv");
    add_common_flags(*sweep, flags);
    sweep->add_option("--eta", flags.eta, "comma-separated eta values");
    add_run_flags(*sweep, flags);

    CLI::App* describe = app.add_subcommand("describe", "print a benchmark as an inline config");
    add_common_flags(*describe, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) {
        const ExperimentConfig config = merge(flags, /*eta_is_scalar=*/true);
        const Benchmark benchmark = make_benchmark(config);
        const RunConfig run_config = make_run_config(config);
        const RunOutput output = cmd_run(benchmark, run_config, config.out.value_or("."));
        write_summary(out, benchmark.name, run_config, output.log);
        out << "wrote " << output.trajectory_csv.string() << " and "
            << output.summary_txt.string() << '\n';
    } else if (analyze->parsed()) {
        const ExperimentConfig config = merge(flags, /*eta_is_scalar=*/false);
        const Benchmark benchmark = make_benchmark(config);
        print_analysis(out, cmd_analyze(benchmark, etas_for_report(flags, config, false)));
    } else if (sweep->parsed()) {
        const ExperimentConfig config = merge(flags, /*eta_is_scalar=*/false);
        const Benchmark benchmark = make_benchmark(config);
        const RunConfig run_config = make_run_config(config);
        const SweepOutput output = cmd_sweep(benchmark, run_config,
                                             etas_for_report(flags, config, true),
                                             config.out.value_or("."));
        out << "wrote " << output.sweep_csv.string() << '\n';
    } else if (describe->parsed()) {
        const ExperimentConfig config = merge(flags, /*eta_is_scalar=*/false);
        out << offpol::describe(make_benchmark(config));
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(argc, argv, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const CoverageError& e) {
        err << "coverage violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace offpol
