#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "offpol/analysis.hpp"
#include "offpol/experiments.hpp"

namespace offpol {

/// Shortest decimal form that parses back to exactly the same double.
/// Locale-independent.
std::string format_full(double x);

/// 12 significant digits, locale-independent; used for all report output.
std::string format_sig(double x);

/// `iteration,run,rmse` rows per run, then the mean series with run = "mean".
void write_trajectory_csv(std::ostream& out, const RunLog& log);

void write_summary(std::ostream& out, const std::string& benchmark_name,
                   const RunConfig& config, const RunLog& log);

/// Per-eta analysis of the expected update system.
struct EtaAnalysis {
    ExpectedSystem system;
    std::optional<Vector> theta_star;
    std::optional<double> fixed_point_rmse;
    std::string fixed_point_error;  ///< nonempty when theta* is unavailable
};

struct AnalysisReport {
    std::string benchmark_name;
    double eta_bound = 0.0;
    std::optional<double> best_rmse;  ///< projection of V onto span(Phi); absent if rank-deficient
    std::string best_rmse_error;
    std::vector<EtaAnalysis> entries;
};

void print_analysis(std::ostream& out, const AnalysisReport& report);

struct SweepRow {
    double eta = 0.0;
    bool positive_definite = false;
    double min_sym_eigenvalue = 0.0;
    std::optional<double> fixed_point_rmse;
    double final_mean_rmse = 0.0;
};

/// `eta,pd,min_sym_eig,fixed_point_rmse,final_mean_rmse`; the fixed-point
/// column is blank when A is singular.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace offpol
