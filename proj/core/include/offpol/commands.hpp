#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "offpol/config.hpp"
#include "offpol/report.hpp"

namespace offpol {

/// Runs the configured experiment and writes trajectory.csv and summary.txt
/// under out_dir (created if missing).
struct RunOutput {
    std::filesystem::path trajectory_csv;
    std::filesystem::path summary_txt;
    RunLog log;
};

RunOutput cmd_run(const Benchmark& benchmark, const RunConfig& config,
                  const std::filesystem::path& out_dir);

/// Expected-system analysis for each eta. Rank and solve failures are recorded
/// per item, never thrown.
AnalysisReport cmd_analyze(const Benchmark& benchmark, const std::vector<double>& etas);

/// Perturbed-TD eta study: PD verdict, fixed-point RMSE and simulated final
/// mean RMSE per eta; writes sweep.csv under out_dir.
struct SweepOutput {
    std::filesystem::path sweep_csv;
    std::vector<SweepRow> rows;
};

SweepOutput cmd_sweep(const Benchmark& benchmark, const RunConfig& base_config,
                      const std::vector<double>& etas, const std::filesystem::path& out_dir);

}  // namespace offpol
