#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cci/io.hpp"

namespace cci::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kTruncated = 2 };

inline const std::vector<double> kDefaultEpsilons{0.01, 0.05, 0.1, 0.15, 0.2};

/// Solves one problem file. Writes the result document to `output_path`
/// (or `out` when the path is empty) and diagnostics to `err`.
int cmd_solve(const std::string& input_path, const SolverConfig& config, const std::string& output_path,
              std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<double> epsilons = kDefaultEpsilons;
  bool include_baseline = true;
  SolverConfig base;  // mode/epsilon are overridden per column
  int jobs = 0;       // 0: one task per file
};

/// Squares-examined table over every *.json file in `input_dir`, one row per
/// problem ordered by file name.
int cmd_bench(const std::string& input_dir, const BenchOptions& options, std::ostream& table,
              std::ostream& err);

/// Writes <prefix>_curves.csv (curve_id,t,x,y,z) and
/// <prefix>_intersections.csv (u,v,x,y,z).
int cmd_plot_data(const std::string& input_path, int samples, const SolverConfig& config,
                  const std::string& prefix, std::ostream& err);

/// Logger level from CCI_LOG_LEVEL (error, info, debug, trace); default error.
void configure_logging_from_env();

}  // namespace cci::cli
