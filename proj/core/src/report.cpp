#include "offpol/report.hpp"

#include <charconv>
#include <ostream>

namespace offpol {

std::string format_full(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_sig(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, const RunLog& log) {
    out << "iteration,run,rmse\n";
    for (int run = 0; run < log.num_runs(); ++run)
        for (std::size_t i = 0; i < log.eval_iterations.size(); ++i)
            out << log.eval_iterations[i] << ',' << run << ',' << format_sig(log.run_rmse[run][i])
                << '\n';
    for (std::size_t i = 0; i < log.eval_iterations.size(); ++i)
        out << log.eval_iterations[i] << ",mean," << format_sig(log.mean_rmse[i]) << '\n';
}

void write_summary(std::ostream& out, const std::string& benchmark_name,
                   const RunConfig& config, const RunLog& log) {
    out << "benchmark: " << benchmark_name << '\n';
    out << "algorithm: " << algorithm_name(config.algorithm) << '\n';
    out << "eta: " << format_sig(config.eta) << '\n';
    out << "alpha: " << format_sig(config.schedule.alpha0);
    if (config.schedule.kind == StepSchedule::Kind::Polynomial)
        out << " (polynomial, decay " << format_sig(config.schedule.exponent) << ")";
    else
        out << " (constant)";
    out << '\n';
    if (config.algorithm == Algorithm::Tdc)
        out << "beta: "
            << (config.beta ? format_sig(*config.beta) : std::string("alpha")) << '\n';
    out << "iterations: " << config.iterations << '\n';
    out << "runs: " << config.num_runs << '\n';
    out << "seed: " << config.base_seed << '\n';
    out << "final RMSE: " << format_sig(log.final_mean) << " +/- " << format_sig(log.final_std)
        << '\n';

    int diverged = 0;
    for (bool d : log.diverged) diverged += d ? 1 : 0;
    out << "diverged runs: " << diverged << '/' << log.num_runs();
    if (diverged > 0) {
        out << " (";
        bool first = true;
        for (int k = 0; k < log.num_runs(); ++k) {
            if (!log.diverged[k]) continue;
            if (!first) out << ' ';
            out << k;
            first = false;
        }
        out << ')';
    }
    out << '\n';
}

namespace {

void print_matrix(std::ostream& out, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << "    [";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0) out << ", ";
            out << format_sig(m(r, c));
        }
        out << "]\n";
    }
}

const char* pd_label(const ExpectedSystem& system) {
    if (system.min_sym_eigenvalue > kPdTolerance) return "positive definite";
    if (system.min_sym_eigenvalue >= -kPdTolerance) return "indeterminate";
    return "not positive definite";
}

}  // namespace

void print_analysis(std::ostream& out, const AnalysisReport& report) {
    out << "benchmark: " << report.benchmark_name << '\n';
    out << "eta lower bound: " << format_sig(report.eta_bound) << '\n';
    if (report.best_rmse)
        out << "best achievable RMSE: " << format_sig(*report.best_rmse) << '\n';
    else
        out << "best achievable RMSE: unavailable (" << report.best_rmse_error << ")\n";
    for (const EtaAnalysis& entry : report.entries) {
        const ExpectedSystem& system = entry.system;
        out << "\neta = " << format_sig(system.eta) << '\n';
        out << "  A =\n";
        print_matrix(out, system.a);
        out << "  b = [";
        for (std::size_t i = 0; i < system.b.size(); ++i) {
            if (i > 0) out << ", ";
            out << format_sig(system.b[i]);
        }
        out << "]\n";
        out << "  min eigenvalue of A + A^T: " << format_sig(system.min_sym_eigenvalue) << '\n';
        out << "  verdict: " << pd_label(system) << '\n';
        if (entry.theta_star) {
            out << "  theta* = [";
            for (std::size_t i = 0; i < entry.theta_star->size(); ++i) {
                if (i > 0) out << ", ";
                out << format_sig((*entry.theta_star)[i]);
            }
            out << "]\n";
            out << "  RMSE at theta*: " << format_sig(*entry.fixed_point_rmse) << '\n';
        } else {
            out << "  theta*: unavailable (" << entry.fixed_point_error << ")\n";
        }
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "eta,pd,min_sym_eig,fixed_point_rmse,final_mean_rmse\n";
    for (const SweepRow& row : rows) {
        out << format_sig(row.eta) << ',' << (row.positive_definite ? "true" : "false") << ','
            << format_sig(row.min_sym_eigenvalue) << ',';
        if (row.fixed_point_rmse) out << format_sig(*row.fixed_point_rmse);
        out << ',' << format_sig(row.final_mean_rmse) << '\n';
    }
}

}  // namespace offpol
