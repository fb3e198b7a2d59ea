// Intersects a cubic with a quadratic in the z = 0 plane and prints the
// crossings found by the adaptive and the fixed-domain solver.

#include <cstdio>

#include "cci/solver.hpp"

int main() {
  const cci::BezierCurve wave({{0.0, 0.0, 0.0}, {0.33, 1.2, 0.0}, {0.66, -1.2, 0.0}, {1.0, 0.0, 0.0}});
  const cci::BezierCurve arch({{0.0, 0.1, 0.0}, {0.5, -0.3, 0.0}, {1.0, 0.1, 0.0}});

  for (auto mode : {cci::AlphaMode::adaptive, cci::AlphaMode::fixed}) {
    cci::SolverConfig cfg;
    cfg.mode = mode;
    const auto report = cci::solve(wave, arch, cfg);
    std::printf("%s: %zu intersection(s), %ld squares examined\n",
                mode == cci::AlphaMode::adaptive ? "adaptive" : "fixed", report.intersections.size(),
                report.squares_examined);
    for (const auto& x : report.intersections)
      std::printf("  u=%.12f v=%.12f at (%.6f, %.6f, %.6f)\n", x.u, x.v, x.point[0], x.point[1], x.point[2]);
  }
}
