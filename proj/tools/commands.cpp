#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace cci::cli {

namespace {

std::string fmt_alphas(const std::array<double, 3>& a) {
  std::ostringstream os;
  os << std::setprecision(6) << "(" << a[0] << ", " << a[1] << ", " << a[2] << ")";
  return os.str();
}

/// Observer that traces every queue pop at trace level.
SolveObserver tracing_observer() {
  if (!spdlog::should_log(spdlog::level::trace)) return {};
  return [](const SquareEvent& e) {
    const Square& s = e.square;
    const char* kind = e.kind == SquareEvent::Kind::pruned     ? "pruned"
                       : e.kind == SquareEvent::Kind::excluded ? "excluded"
                                                                : "tested";
    std::ostringstream os;
    os << std::setprecision(10) << "pop depth=" << s.depth << " center=(" << s.center[0] << ", "
       << s.center[1] << ") r=" << s.half_width << " alphas=" << fmt_alphas(s.alphas) << " " << kind;
    if (e.outcome) {
      for (const auto& t : e.outcome->pairs)
        os << " f" << pair_name(t.pair) << "=" << to_string(t.status) << "[eta=" << t.eta
           << " omega=" << t.omega_hat << " h=" << t.h << "]";
      os << " child_alphas=" << fmt_alphas(e.child_alphas);
    }
    if (e.newton) os << " newton_iters=" << e.newton->iterations << (e.recorded ? " recorded" : "");
    spdlog::trace("{}", os.str());
  };
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string short_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

void configure_logging_from_env() {
  static const bool once = [] {
    auto logger = spdlog::stderr_color_mt("cci");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    return true;
  }();
  (void)once;
  spdlog::level::level_enum level = spdlog::level::err;
  if (const char* env = std::getenv("CCI_LOG_LEVEL")) {
    const std::string v = env;
    if (v == "error") level = spdlog::level::err;
    else if (v == "info") level = spdlog::level::info;
    else if (v == "debug") level = spdlog::level::debug;
    else if (v == "trace") level = spdlog::level::trace;
  }
  spdlog::set_level(level);
}

int cmd_solve(const std::string& input_path, const SolverConfig& config, const std::string& output_path,
              std::ostream& out, std::ostream& err) {
  Problem problem;
  try {
    problem = load_problem(input_path);
    config.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const SolveReport report = solve(problem.curve1, problem.curve2, config, tracing_observer());
  spdlog::info("{}: {} intersection(s), {} squares examined{}", problem.name, report.intersections.size(),
               report.squares_examined, report.truncated ? " (truncated at max depth)" : "");
  for (const auto& x : report.intersections)
    spdlog::debug("intersection u={} v={} residual={}", x.u, x.v, x.residual);

  const std::string doc = result_to_json(problem, config, report).dump(2);
  if (output_path.empty()) {
    out << doc << "\n";
  } else {
    std::ofstream f(output_path);
    if (!f) {
      err << "error: cannot write " << output_path << "\n";
      return kInputError;
    }
    f << doc << "\n";
  }
  if (report.truncated) {
    err << "warning: subdivision reached max depth " << config.max_depth
        << "; tangential or degenerate intersection suspected\n";
    return kTruncated;
  }
  return kOk;
}

int cmd_bench(const std::string& input_dir, const BenchOptions& options, std::ostream& table,
              std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(input_dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  if (ec) {
    err << "error: cannot read directory " << input_dir << ": " << ec.message() << "\n";
    return kInputError;
  }
  std::sort(files.begin(), files.end());

  struct Row {
    std::string name;
    int m = 0, n = 0;
    std::vector<long> counts;
    bool truncated = false;
    std::string error;
  };

  auto run = [&](const fs::path& path) {
    Row row;
    try {
      const Problem p = load_problem(path.string());
      row.name = p.name;
      row.m = p.curve1.degree();
      row.n = p.curve2.degree();
      for (double eps : options.epsilons) {
        SolverConfig c = options.base;
        c.mode = AlphaMode::adaptive;
        c.epsilon = eps;
        const auto r = solve(p.curve1, p.curve2, c);
        row.counts.push_back(r.squares_examined);
        row.truncated = row.truncated || r.truncated;
      }
      if (options.include_baseline) {
        SolverConfig c = options.base;
        c.mode = AlphaMode::fixed;
        const auto r = solve(p.curve1, p.curve2, c);
        row.counts.push_back(r.squares_examined);
        row.truncated = row.truncated || r.truncated;
      }
    } catch (const std::exception& e) {
      row.name = path.stem().string();
      row.error = e.what();
    }
    return row;
  };

  std::vector<Row> rows;
  if (options.jobs == 1) {
    for (const auto& f : files) rows.push_back(run(f));
  } else {
    std::vector<std::future<Row>> futures;
    for (const auto& f : files) futures.push_back(std::async(std::launch::async, run, f));
    for (auto& fu : futures) rows.push_back(fu.get());
  }

  table << "problem,degree_m,degree_n";
  for (double eps : options.epsilons) table << ",akts_eps_" << short_double(eps);
  if (options.include_baseline) table << ",kts_cc";
  table << ",truncated\n";
  int status = kOk;
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      err << "error: " << row.error << "\n";
      status = kInputError;
      continue;
    }
    table << row.name << "," << row.m << "," << row.n;
    for (long c : row.counts) table << "," << c;
    table << "," << (row.truncated ? "yes" : "no") << "\n";
  }
  return status;
}

int cmd_plot_data(const std::string& input_path, int samples, const SolverConfig& config,
                  const std::string& prefix, std::ostream& err) {
  Problem problem;
  try {
    problem = load_problem(input_path);
    config.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (samples < 2) {
    err << "error: --samples must be at least 2\n";
    return kInputError;
  }
  std::ofstream curves(prefix + "_curves.csv");
  std::ofstream points(prefix + "_intersections.csv");
  if (!curves || !points) {
    err << "error: cannot write files with prefix " << prefix << "\n";
    return kInputError;
  }
  curves << "curve_id,t,x,y,z\n";
  int id = 1;
  for (const BezierCurve* c : {&problem.curve1, &problem.curve2}) {
    for (int k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) / (samples - 1);
      const Vec3 p = eval_curve(*c, t);
      curves << id << "," << format_double(t) << "," << format_double(p[0]) << "," << format_double(p[1])
             << "," << format_double(p[2]) << "\n";
    }
    ++id;
  }
  const SolveReport report = solve(problem.curve1, problem.curve2, config, tracing_observer());
  points << "u,v,x,y,z\n";
  for (const auto& x : report.intersections)
    points << format_double(x.u) << "," << format_double(x.v) << "," << format_double(x.point[0]) << ","
           << format_double(x.point[1]) << "," << format_double(x.point[2]) << "\n";
  return report.truncated ? kTruncated : kOk;
}

}  // namespace cci::cli
