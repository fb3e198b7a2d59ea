#pragma once

// Subdivision driver for curve/curve intersection. Squares of the (u,v)
// parameter domain are processed first-in-first-out; each square is either
// pruned by an explored region, discarded by the exclusion test, or tested
// with the Kantorovich test and then split in four. In adaptive mode the
// test-domain multipliers of the children follow the parent's outcome.

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cci/bezier.hpp"
#include "cci/exclusion.hpp"
#include "cci/kantorovich.hpp"
#include "cci/newton.hpp"

namespace cci {

enum class AlphaMode { adaptive, fixed };

struct SolverConfig {
  AlphaMode mode = AlphaMode::adaptive;
  double epsilon = 0.05;
  double fixed_alpha = 1.5;
  // The root square [0,1]^2 starts with test domains [-0.25,1.25]^2.
  double initial_alpha = 1.5;
  double newton_tol = 1e-7;
  int newton_max_iter = 50;
  std::optional<double> zero_tol;  // default: 1e-6 * (1 + max |b_ij|_inf)
  int max_depth = 40;
  bool clip_explored_region = true;
  double exclusion_tol = kExclusionTolerance;

  void validate() const {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
    if (!(fixed_alpha >= 1.0)) throw std::invalid_argument("fixed_alpha must be at least 1");
    if (!(initial_alpha >= 1.0)) throw std::invalid_argument("initial_alpha must be at least 1");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be positive");
    if (max_depth < 0) throw std::invalid_argument("max_depth must be nonnegative");
    if (zero_tol && !(*zero_tol > 0.0)) throw std::invalid_argument("zero_tol must be positive");
  }
};

struct Square {
  Vec2 center{0.5, 0.5};
  double half_width = 0.5;
  std::array<double, 3> alphas{1.5, 1.5, 1.5};
  int depth = 0;

  Rect rect() const { return Rect::ball(center, half_width); }

  std::array<Square, 4> children(const std::array<double, 3>& child_alphas) const {
    const double r = half_width / 2.0;
    std::array<Square, 4> out;
    const std::array<Vec2, 4> offsets{{{-r, -r}, {r, -r}, {-r, r}, {r, r}}};
    for (std::size_t k = 0; k < 4; ++k)
      out[k] = Square{center + offsets[k], r, child_alphas, depth + 1};
    return out;
  }
};

struct IntersectionRecord {
  double u = 0.0;
  double v = 0.0;
  Vec3 point{};       // c1(u)
  double residual = 0.0;  // |c1(u) - c2(v)|_inf
  Square source;
  Pair pair{0, 1};
};

struct SolveReport {
  std::vector<IntersectionRecord> intersections;
  std::vector<ExploredRegion> explored;
  long squares_examined = 0;
  long subdivisions = 0;
  long exclusion_passes = 0;
  long kantorovich_passes = 0;
  long newton_calls = 0;
  int max_depth_reached = 0;
  bool truncated = false;
  double zero_tol = 0.0;
};

/// Children's test-domain multipliers. A pass keeps the parent's values for
/// every pair; otherwise each pair moves on its own: too-small domain grows
/// by epsilon, too-large (h > 1/4) shrinks by epsilon but not below 1, and a
/// singular Jacobian leaves it alone.
inline std::array<double, 3> update_alphas(const KantorovichOutcome& parent,
                                           const std::array<double, 3>& alphas, double epsilon) {
  if (parent.passed()) return alphas;
  std::array<double, 3> out = alphas;
  for (std::size_t k = 0; k < 3; ++k) {
    switch (parent.pairs[k].status) {
      case PairStatus::fail_containment: out[k] = alphas[k] + epsilon; break;
      case PairStatus::fail_h: out[k] = std::max(1.0, alphas[k] - epsilon); break;
      case PairStatus::singular_jacobian:
      case PairStatus::pass: break;
    }
  }
  return out;
}

inline bool region_prunes_square(std::span<const ExploredRegion> regions, const Square& x) {
  const Rect r = x.rect();
  return std::any_of(regions.begin(), regions.end(),
                     [&](const ExploredRegion& e) { return e.contains(r); });
}

inline bool point_is_known(std::span<const ExploredRegion> regions, const Vec2& p) {
  return std::any_of(regions.begin(), regions.end(),
                     [&](const ExploredRegion& e) { return e.contains(p); });
}

/// What happened to one dequeued square; passed to the solve observer.
struct SquareEvent {
  enum class Kind { pruned, excluded, tested };

  const Square& square;
  Kind kind;
  const KantorovichOutcome* outcome = nullptr;  // tested only
  const NewtonResult* newton = nullptr;         // tested and passed only
  bool recorded = false;                        // a new intersection was recorded
  bool subdivided = false;
  std::array<double, 3> child_alphas{};
};

using SolveObserver = std::function<void(const SquareEvent&)>;

inline double default_zero_tol(const Net3& f) { return 1e-6 * (1.0 + f.max_abs_coeff()); }

inline SolveReport solve(const BezierCurve& c1, const BezierCurve& c2, const SolverConfig& config = {},
                         const SolveObserver& observer = {}) {
  config.validate();
  const SystemDerivatives sys(difference_net(c1, c2));
  const double zero_tol = config.zero_tol.value_or(default_zero_tol(sys.f));
  const bool fixed = config.mode == AlphaMode::fixed;

  SolveReport report;
  report.zero_tol = zero_tol;

  std::deque<Square> queue;
  {
    Square root;
    root.alphas.fill(fixed ? config.fixed_alpha : config.initial_alpha);
    queue.push_back(root);
  }

  auto notify = [&](const SquareEvent& e) {
    if (observer) observer(e);
  };

  while (!queue.empty()) {
    const Square x = queue.front();
    queue.pop_front();
    ++report.squares_examined;
    report.max_depth_reached = std::max(report.max_depth_reached, x.depth);

    if (region_prunes_square(report.explored, x)) {
      notify({x, SquareEvent::Kind::pruned});
      continue;
    }
    if (exclusion_test(reparametrize(sys.f, x.rect()), config.exclusion_tol)) {
      ++report.exclusion_passes;
      notify({x, SquareEvent::Kind::excluded});
      continue;
    }

    const KantorovichOutcome outcome = kantorovich_test(sys, x.center, x.half_width, x.alphas);
    std::optional<NewtonResult> newton;
    bool recorded = false;
    if (outcome.passed()) {
      ++report.kantorovich_passes;
      ++report.newton_calls;
      const PairTest& t = outcome.passing_test();
      newton = newton_solve(extract_pair(sys.f, t.pair), x.center, config.newton_tol,
                            config.newton_max_iter);
      if (newton->converged) {
        const Vec2 z = newton->x_star;
        const Vec3 fz = eval_net(sys.f, z[0], z[1]);
        const double residual = norm_inf(fz);
        const bool in_domain =
            z[0] >= -1e-9 && z[0] <= 1.0 + 1e-9 && z[1] >= -1e-9 && z[1] <= 1.0 + 1e-9;
        const bool duplicate =
            std::any_of(report.intersections.begin(), report.intersections.end(),
                        [&](const IntersectionRecord& r) { return norm_inf(Vec2{r.u, r.v} - z) <= 1e-9; });
        if (residual <= zero_tol && in_domain && !point_is_known(report.explored, z) && !duplicate) {
          report.intersections.push_back(
              {z[0], z[1], eval_curve(c1, z[0]), residual, x, t.pair});
          report.explored.push_back(explored_region(
              x.center, t.rho_minus, t.rho_plus, t.pair,
              config.clip_explored_region ? std::optional<Rect>(t.domain) : std::nullopt, z));
          recorded = true;
        }
      }
    }

    const std::array<double, 3> child_alphas =
        fixed ? std::array<double, 3>{config.fixed_alpha, config.fixed_alpha, config.fixed_alpha}
              : update_alphas(outcome, x.alphas, config.epsilon);
    bool subdivided = false;
    if (x.depth + 1 > config.max_depth) {
      report.truncated = true;
    } else {
      ++report.subdivisions;
      for (const Square& child : x.children(child_alphas)) queue.push_back(child);
      subdivided = true;
    }
    notify({x, SquareEvent::Kind::tested, &outcome, newton ? &*newton : nullptr, recorded, subdivided,
            child_alphas});
  }
  return report;
}

}  // namespace cci
