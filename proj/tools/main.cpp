#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_solver_options(CLI::App& cmd, cci::SolverConfig& cfg, double& zero_tol) {
  static const std::map<std::string, cci::AlphaMode> modes{{"adaptive", cci::AlphaMode::adaptive},
                                                           {"fixed", cci::AlphaMode::fixed}};
  cmd.add_option("--mode", cfg.mode, "adaptive (AKTS-CC) or fixed (KTS-CC)")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
      ->capture_default_str();
  cmd.add_option("--epsilon", cfg.epsilon, "adaptive test-domain step")->capture_default_str();
  cmd.add_option("--fixed-alpha", cfg.fixed_alpha, "test-domain multiplier in fixed mode")->capture_default_str();
  cmd.add_option("--newton-tol", cfg.newton_tol, "Newton step-size tolerance")->capture_default_str();
  cmd.add_option("--max-depth", cfg.max_depth, "subdivision depth limit")->capture_default_str();
  cmd.add_option("--clip-explored-region", cfg.clip_explored_region,
                 "intersect explored regions with their test domain")
      ->capture_default_str();
  cmd.add_option("--zero-tol", zero_tol, "residual accepted as an intersection (default scale-aware)");
}

}  // namespace

int main(int argc, char** argv) {
  cci::cli::configure_logging_from_env();

  CLI::App app{"Curve/curve intersection by Kantorovich-test subdivision"};
  app.require_subcommand(1);

  cci::SolverConfig cfg;
  double zero_tol = 0.0;

  std::string input, output;
  auto* solve = app.add_subcommand("solve", "find all intersections of the two curves in a problem file");
  solve->add_option("input", input, "problem JSON file")->required();
  solve->add_option("-o,--output", output, "result JSON file (default: stdout)");
  add_solver_options(*solve, cfg, zero_tol);

  std::string dir;
  cci::cli::BenchOptions bench_opts;
  bool no_baseline = false;
  auto* bench = app.add_subcommand("bench", "squares-examined table over a directory of problems");
  bench->add_option("dir", dir, "directory of problem JSON files")->required();
  bench->add_option("--epsilons", bench_opts.epsilons, "adaptive epsilon columns")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_flag("--no-baseline", no_baseline, "omit the fixed-alpha column");
  bench->add_option("--jobs", bench_opts.jobs, "1 for sequential; otherwise one task per file");
  bench->add_option("-o,--output", output, "CSV file (default: stdout)");
  add_solver_options(*bench, cfg, zero_tol);

  int samples = 200;
  std::string prefix = "plot";
  auto* plot = app.add_subcommand("plot-data", "sampled curves and intersections as CSV");
  plot->add_option("input", input, "problem JSON file")->required();
  plot->add_option("--samples", samples, "samples per curve")->capture_default_str();
  plot->add_option("--prefix", prefix, "output path prefix")->capture_default_str();
  add_solver_options(*plot, cfg, zero_tol);

  CLI11_PARSE(app, argc, argv);
  if (zero_tol > 0.0) cfg.zero_tol = zero_tol;

  if (*solve) return cci::cli::cmd_solve(input, cfg, output, std::cout, std::cerr);
  if (*bench) {
    bench_opts.base = cfg;
    bench_opts.include_baseline = !no_baseline;
    if (output.empty()) return cci::cli::cmd_bench(dir, bench_opts, std::cout, std::cerr);
    std::ofstream f(output);
    if (!f) {
      std::cerr << "error: cannot write " << output << "\n";
      return cci::cli::kInputError;
    }
    return cci::cli::cmd_bench(dir, bench_opts, f, std::cerr);
  }
  return cci::cli::cmd_plot_data(input, samples, cfg, prefix, std::cerr);
}
