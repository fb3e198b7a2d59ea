#pragma once

// Brute-force intersection finder used as an independent check on the
// subdivision solver. It knows nothing about Kantorovich tests, hulls or
// reparametrization: sample |c1(u) - c2(v)|_inf on a grid, take the local
// minima that are small enough to hide a zero, polish each with damped
// Gauss-Newton on the least-squares objective, keep the ones that converge
// to a zero. May miss near-tangential intersections.

#include <algorithm>
#include <cmath>
#include <vector>

#include "cci/bezier.hpp"

namespace cci {

struct OracleConfig {
  int grid_n = 400;
  double refine_tol = 1e-13;
  double accept_residual = 1e-9;  // relative to 1 + max |b_ij|
  double dedup = 1e-6;
};

namespace detail {

/// Hodograph of a curve evaluated by the monomial-free derivative formula.
inline Vec3 curve_tangent(const BezierCurve& c, double t) {
  const auto& p = c.control_points();
  if (p.size() < 2) return {0.0, 0.0, 0.0};
  std::vector<Vec3> d;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) d.push_back(static_cast<double>(c.degree()) * (p[i + 1] - p[i]));
  return de_casteljau(d, t);
}

inline double max_speed(const BezierCurve& c) {
  double s = 0.0;
  const auto& p = c.control_points();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) s = std::max(s, norm_inf(p[i + 1] - p[i]));
  return s * c.degree();
}

/// Levenberg-Marquardt on |c1(u) - c2(v)|^2 over the box [0,1]^2 (slightly
/// padded so boundary zeros are reachable).
inline Vec2 polish(const BezierCurve& c1, const BezierCurve& c2, Vec2 x, double tol) {
  double lambda = 1e-3;
  auto residual = [&](const Vec2& p) { return eval_curve(c1, p[0]) - eval_curve(c2, p[1]); };
  auto sq = [](const Vec3& r) { return r[0] * r[0] + r[1] * r[1] + r[2] * r[2]; };
  Vec3 r = residual(x);
  for (int it = 0; it < 200; ++it) {
    const Vec3 ju = curve_tangent(c1, x[0]);
    const Vec3 jv = -1.0 * curve_tangent(c2, x[1]);
    const double a = sq(ju), b = ju[0] * jv[0] + ju[1] * jv[1] + ju[2] * jv[2], d = sq(jv);
    const double gu = ju[0] * r[0] + ju[1] * r[1] + ju[2] * r[2];
    const double gv = jv[0] * r[0] + jv[1] * r[1] + jv[2] * r[2];
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      const double a2 = a * (1.0 + lambda), d2 = d * (1.0 + lambda);
      const double det = a2 * d2 - b * b;
      if (det == 0.0) {
        lambda *= 10.0;
        continue;
      }
      const Vec2 step{(d2 * gu - b * gv) / det, (a2 * gv - b * gu) / det};
      Vec2 trial = x - step;
      trial[0] = std::clamp(trial[0], -0.01, 1.01);
      trial[1] = std::clamp(trial[1], -0.01, 1.01);
      const Vec3 rt = residual(trial);
      if (sq(rt) <= sq(r)) {
        const double moved = norm_inf(trial - x);
        x = trial;
        r = rt;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (moved <= tol) return x;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  return x;
}

}  // namespace detail

inline std::vector<Vec2> brute_force_intersections(const BezierCurve& c1, const BezierCurve& c2,
                                                   const OracleConfig& cfg = {}) {
  const int n = std::max(cfg.grid_n, 2);
  const double step = 1.0 / (n - 1);
  std::vector<double> g(static_cast<std::size_t>(n * n));
  std::vector<Vec3> p1(n), p2(n);
  for (int k = 0; k < n; ++k) {
    p1[k] = eval_curve(c1, k * step);
    p2[k] = eval_curve(c2, k * step);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i * n + j] = norm_inf(p1[i] - p2[j]);

  // A zero inside a cell is within half a cell diagonal of a grid node.
  const double threshold = (detail::max_speed(c1) + detail::max_speed(c2)) * step;
  double scale = 0.0;
  for (const auto& a : c1.control_points())
    for (const auto& b : c2.control_points()) scale = std::max(scale, norm_inf(a - b));
  const double accept = cfg.accept_residual * (1.0 + scale);

  std::vector<Vec2> found;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double here = g[i * n + j];
      if (here > threshold) continue;
      bool local_min = true;
      for (int di = -1; di <= 1 && local_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int a = i + di, b = j + dj;
          if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= n || b >= n) continue;
          if (g[a * n + b] < here) {
            local_min = false;
            break;
          }
        }
      if (!local_min) continue;
      const Vec2 z = detail::polish(c1, c2, {i * step, j * step}, cfg.refine_tol);
      if (z[0] < -1e-9 || z[0] > 1.0 + 1e-9 || z[1] < -1e-9 || z[1] > 1.0 + 1e-9) continue;
      if (norm_inf(eval_curve(c1, z[0]) - eval_curve(c2, z[1])) > accept) continue;
      const bool dup = std::any_of(found.begin(), found.end(),
                                   [&](const Vec2& f) { return norm_inf(f - z) <= cfg.dedup; });
      if (!dup) found.push_back(z);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace cci
