#pragma once

// Exclusion test: does the convex hull of a net's coefficients exclude the
// origin? Answered with a Gilbert/GJK minimum-norm-point iteration that keeps
// a certified lower bound (a separating plane) and upper bound (a hull point).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "cci/bezier.hpp"

namespace cci {

namespace detail {

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Solves the k x k system g * x = r in place (partial pivoting).
/// Returns false when a pivot is negligible relative to the matrix scale.
template <std::size_t K>
bool solve_small(std::array<std::array<double, K>, K> g, std::array<double, K>& r, std::size_t k) {
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(g[i][i]));
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < k; ++row)
      if (std::abs(g[row][col]) > std::abs(g[piv][col])) piv = row;
    if (std::abs(g[piv][col]) <= 1e-13 * scale) return false;
    std::swap(g[piv], g[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t row = col + 1; row < k; ++row) {
      const double f = g[row][col] / g[col][col];
      for (std::size_t c = col; c < k; ++c) g[row][c] -= f * g[col][c];
      r[row] -= f * r[col];
    }
  }
  for (std::size_t col = k; col-- > 0;) {
    for (std::size_t c = col + 1; c < k; ++c) r[col] -= g[col][c] * r[c];
    r[col] /= g[col][col];
  }
  return true;
}

/// Closest point to the origin on the simplex spanned by `pts` (1 to 4
/// points). Enumerates every face, keeps the nearest one whose affine
/// projection has positive barycentric weights, and shrinks `pts` to the
/// supporting vertices.
inline Vec3 closest_on_simplex(std::vector<Vec3>& pts) {
  const std::size_t n = pts.size();
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_point{};
  unsigned best_mask = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::array<std::size_t, 4> idx{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx[k++] = i;
    // Minimise |p0 + sum_t lambda_t (p_t - p0)|^2 over the face's affine hull.
    std::array<double, 4> lambda{};
    if (k > 1) {
      std::array<std::array<double, 3>, 3> g{};
      std::array<double, 3> r{};
      const Vec3& p0 = pts[idx[0]];
      for (std::size_t a = 1; a < k; ++a) {
        const Vec3 ea = pts[idx[a]] - p0;
        r[a - 1] = -dot3(ea, p0);
        for (std::size_t b = 1; b < k; ++b) g[a - 1][b - 1] = dot3(ea, pts[idx[b]] - p0);
      }
      if (!solve_small<3>(g, r, k - 1)) continue;
      double sum = 0.0;
      bool inside = true;
      for (std::size_t a = 1; a < k; ++a) {
        lambda[a] = r[a - 1];
        sum += lambda[a];
        if (!(lambda[a] > 0.0)) inside = false;
      }
      lambda[0] = 1.0 - sum;
      if (!inside || !(lambda[0] > 0.0)) continue;
    } else {
      lambda[0] = 1.0;
    }
    Vec3 p{};
    for (std::size_t a = 0; a < k; ++a) p = p + lambda[a] * pts[idx[a]];
    const double d = dot3(p, p);
    if (d < best) {
      best = d;
      best_point = p;
      best_mask = mask;
    }
  }
  std::vector<Vec3> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (best_mask & (1u << i)) kept.push_back(pts[i]);
  pts = std::move(kept);
  return best_point;
}

}  // namespace detail

/// Bounds on the distance from the origin to conv(points).
struct HullDistance {
  double lower = 0.0;  // certified by a separating plane
  double upper = 0.0;  // norm of a point in the hull
};

inline HullDistance origin_hull_distance(std::span<const Vec3> points, double tol,
                                         int max_iter = 100) {
  using detail::dot3;
  if (points.empty()) return {std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};
  std::vector<Vec3> simplex{points.front()};
  for (const auto& p : points)
    if (dot3(p, p) < dot3(simplex.front(), simplex.front())) simplex.front() = p;
  Vec3 v = simplex.front();
  HullDistance out{0.0, std::sqrt(dot3(v, v))};
  for (int iter = 0; iter < max_iter; ++iter) {
    const double vv = dot3(v, v);
    const double vnorm = std::sqrt(vv);
    out.upper = std::min(out.upper, vnorm);
    if (vnorm <= tol) break;
    // Support point in direction -v.
    const Vec3* w = &points.front();
    double wv = dot3(*w, v);
    for (const auto& p : points) {
      const double pv = dot3(p, v);
      if (pv < wv) {
        wv = pv;
        w = &p;
      }
    }
    out.lower = std::max(out.lower, wv / vnorm);
    if (out.lower > tol) break;
    if (vv - wv <= 1e-15 * vv) break;  // no further progress possible
    if (std::find(simplex.begin(), simplex.end(), *w) != simplex.end()) break;
    simplex.push_back(*w);
    v = detail::closest_on_simplex(simplex);
    if (simplex.size() == 4) {  // origin enclosed by a full-dimensional tetrahedron
      out.upper = 0.0;
      break;
    }
  }
  return out;
}

inline constexpr double kExclusionTolerance = 1e-12;

/// Passes iff the origin is certifiably farther than `tol` from the hull of
/// the net's coefficients; anything undecided fails.
inline bool exclusion_test(const Net3& net, double tol = kExclusionTolerance) {
  return origin_hull_distance(net.coeffs(), tol).lower > tol;
}

}  // namespace cci
