#pragma once

// Problem and result documents (JSON).
//
// Problem:
//   {"name": "...",
//    "curve1": {"degree": m, "control_points": [[x,y,z], ...]},
//    "curve2": {"degree": n, "control_points": [[x,y,z], ...]}}

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cci/solver.hpp"

namespace cci {

struct Problem {
  std::string name;
  BezierCurve curve1;
  BezierCurve curve2;
};

/// Bad problem input; what() carries the location.
class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// 1-based line of the first occurrence of `"key"` in `text`, or 0.
inline int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

inline BezierCurve parse_curve(const nlohmann::json& doc, const std::string& key, const std::string& text,
                               const std::string& origin) {
  const int line = line_of_key(text, key);
  const std::string where = origin + ":" + std::to_string(line) + ": " + key;
  if (!doc.contains(key) || !doc[key].is_object()) throw ProblemError(where + ": missing curve object");
  const auto& c = doc[key];
  if (!c.contains("degree") || !c["degree"].is_number_integer())
    throw ProblemError(where + ": 'degree' must be an integer");
  const long degree = c["degree"].get<long>();
  if (degree < 0) throw ProblemError(where + ": 'degree' must be nonnegative");
  if (!c.contains("control_points") || !c["control_points"].is_array())
    throw ProblemError(where + ": 'control_points' must be an array");
  const auto& pts = c["control_points"];
  if (pts.size() != static_cast<std::size_t>(degree + 1))
    throw ProblemError(where + ": degree " + std::to_string(degree) + " needs " +
                       std::to_string(degree + 1) + " control points, got " + std::to_string(pts.size()));
  std::vector<Vec3> points;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number())
      throw ProblemError(where + ": control point " + std::to_string(k) + " is not [x, y, z]");
    Vec3 v{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    if (!all_finite(v)) throw ProblemError(where + ": control point " + std::to_string(k) + " is not finite");
    points.push_back(v);
  }
  return BezierCurve(std::move(points));
}

}  // namespace detail

inline Problem parse_problem(const std::string& text, const std::string& origin = "<input>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProblemError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ProblemError(origin + ":1: top level must be an object");
  Problem p;
  p.name = doc.value("name", std::string{});
  p.curve1 = detail::parse_curve(doc, "curve1", text, origin);
  p.curve2 = detail::parse_curve(doc, "curve2", text, origin);
  return p;
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  Problem p = parse_problem(ss.str(), path);
  if (p.name.empty()) {
    const auto slash = path.find_last_of('/');
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    p.name = stem.substr(0, stem.rfind(".json"));
  }
  return p;
}

inline nlohmann::json curve_to_json(const BezierCurve& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.control_points()) pts.push_back({p[0], p[1], p[2]});
  return {{"degree", c.degree()}, {"control_points", pts}};
}

inline nlohmann::json problem_to_json(const Problem& p) {
  return {{"name", p.name}, {"curve1", curve_to_json(p.curve1)}, {"curve2", curve_to_json(p.curve2)}};
}

inline nlohmann::json config_to_json(const SolverConfig& c) {
  nlohmann::json j = {{"mode", c.mode == AlphaMode::adaptive ? "adaptive" : "fixed"},
                      {"epsilon", c.epsilon},
                      {"fixed_alpha", c.fixed_alpha},
                      {"initial_alpha", c.initial_alpha},
                      {"newton_tol", c.newton_tol},
                      {"newton_max_iter", c.newton_max_iter},
                      {"max_depth", c.max_depth},
                      {"clip_explored_region", c.clip_explored_region},
                      {"exclusion_tol", c.exclusion_tol}};
  j["zero_tol"] = c.zero_tol ? nlohmann::json(*c.zero_tol) : nlohmann::json(nullptr);
  return j;
}

/// Result document. nlohmann/json writes doubles in shortest round-trip
/// form (at most 17 significant digits) and counters as integers.
inline nlohmann::json result_to_json(const Problem& p, const SolverConfig& cfg, const SolveReport& r) {
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& x : r.intersections)
    xs.push_back({{"u", x.u},
                  {"v", x.v},
                  {"point", {x.point[0], x.point[1], x.point[2]}},
                  {"residual", x.residual},
                  {"pair", pair_name(x.pair)}});
  return {{"problem", p.name},
          {"degrees", {p.curve1.degree(), p.curve2.degree()}},
          {"config", config_to_json(cfg)},
          {"report",
           {{"squares_examined", r.squares_examined},
            {"subdivisions", r.subdivisions},
            {"exclusion_passes", r.exclusion_passes},
            {"kantorovich_passes", r.kantorovich_passes},
            {"newton_calls", r.newton_calls},
            {"max_depth_reached", r.max_depth_reached},
            {"truncated", r.truncated},
            {"zero_tol", r.zero_tol}}},
          {"intersections", xs}};
}

}  // namespace cci
