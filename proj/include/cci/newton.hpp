#pragma once

#include <string>
#include <vector>

#include "cci/bezier.hpp"
#include "cci/kantorovich.hpp"

namespace cci {

struct NewtonResult {
  bool converged = false;
  Vec2 x_star{};
  int iterations = 0;
  double final_step_norm = 0.0;
  double final_residual_norm = 0.0;
  std::vector<Vec2> iterates;  // x^0, x^1, ..., last iterate
  std::string failure;         // empty when converged
};

/// Undamped Newton iteration on a 2x2 sub-system; stops once the infinity
/// norm of a step drops to `tol`.
inline NewtonResult newton_solve(const Net2& pair_net, const Vec2& x0, double tol = 1e-7,
                                 int max_iter = 50) {
  const Net2 du = derivative_net(pair_net, Axis::u);
  const Net2 dv = derivative_net(pair_net, Axis::v);
  NewtonResult res;
  Vec2 x = x0;
  res.iterates.push_back(x);
  for (int k = 0; k < max_iter; ++k) {
    const Vec2 fx = eval_net(pair_net, x[0], x[1]);
    const auto inv = invert(from_columns(eval_net(du, x[0], x[1]), eval_net(dv, x[0], x[1])));
    if (!inv) {
      res.final_residual_norm = norm_inf(fx);
      res.failure = "singular Jacobian at iterate " + std::to_string(k);
      res.x_star = x;
      return res;
    }
    const Vec2 step = *inv * fx;
    x = x - step;
    res.iterates.push_back(x);
    res.iterations = k + 1;
    res.final_step_norm = norm_inf(step);
    if (res.final_step_norm <= tol) {
      res.converged = true;
      break;
    }
  }
  res.x_star = x;
  res.final_residual_norm = norm_inf(eval_net(pair_net, x[0], x[1]));
  if (!res.converged) res.failure = "no convergence within " + std::to_string(max_iter) + " iterations";
  return res;
}

}  // namespace cci
