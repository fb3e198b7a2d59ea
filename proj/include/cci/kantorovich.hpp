#pragma once

// Kantorovich test on the 2x2 coordinate sub-systems f_ij, using infinity
// norms throughout. A pass certifies that Newton's method started at the
// square's center converges quadratically to a zero of f_ij.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <tuple>
#include <utility>

#include "cci/bezier.hpp"

namespace cci {

struct Mat2 {
  double a00 = 0.0, a01 = 0.0;
  double a10 = 0.0, a11 = 0.0;

  double det() const { return a00 * a11 - a01 * a10; }
  double norm_inf() const {
    return std::max(std::abs(a00) + std::abs(a01), std::abs(a10) + std::abs(a11));
  }
  Vec2 operator*(const Vec2& x) const { return {a00 * x[0] + a01 * x[1], a10 * x[0] + a11 * x[1]}; }
};

inline Mat2 from_columns(const Vec2& du, const Vec2& dv) { return {du[0], dv[0], du[1], dv[1]}; }

/// Inverse of `m`, or nothing when |det| <= 1e-14 * max(1, |m|_inf^2).
inline std::optional<Mat2> invert(const Mat2& m) {
  const double det = m.det();
  const double s = m.norm_inf();
  if (!(std::abs(det) > 1e-14 * std::max(1.0, s * s))) return std::nullopt;
  return Mat2{m.a11 / det, -m.a01 / det, -m.a10 / det, m.a00 / det};
}

/// Newton-step length |J^{-1} F|_inf; empty for a singular J.
inline std::optional<double> eta(const Mat2& jac, const Vec2& value) {
  const auto inv = invert(jac);
  if (!inv) return std::nullopt;
  return norm_inf(*inv * value);
}

/// Existence and uniqueness radii (rho_minus, rho_plus) for h = eta*omega <= 1/2.
/// omega == 0 gives the limit (eta, +inf).
inline std::pair<double, double> rho_radii(double eta_value, double omega_hat) {
  if (omega_hat == 0.0) return {eta_value, std::numeric_limits<double>::infinity()};
  const double h = eta_value * omega_hat;
  const double root = std::sqrt(std::max(0.0, 1.0 - 2.0 * h));
  // (1 - root)/omega rewritten without cancellation.
  return {2.0 * eta_value / (1.0 + root), (1.0 + root) / omega_hat};
}

/// Second partial derivatives of a net, kept together so the Lipschitz bound
/// can be taken over several test domains without re-differentiating.
template <std::size_t D>
struct SecondDerivatives {
  ControlNet<D> uu, uv, vv;

  explicit SecondDerivatives(const ControlNet<D>& net)
      : uu(derivative_net(derivative_net(net, Axis::u), Axis::u)),
        uv(derivative_net(derivative_net(net, Axis::u), Axis::v)),
        vv(derivative_net(derivative_net(net, Axis::v), Axis::v)) {}
  SecondDerivatives(ControlNet<D> uu_, ControlNet<D> uv_, ControlNet<D> vv_)
      : uu(std::move(uu_)), uv(std::move(uv_)), vv(std::move(vv_)) {}
};

namespace detail {

/// 4 * max |coefficient| of inv * (second derivatives over `domain`).
inline double premultiplied_bound(const SecondDerivatives<2>& second, const Mat2& inv,
                                  const Rect& domain) {
  double m = 0.0;
  for (const Net2* n : {&second.uu, &second.uv, &second.vv}) {
    const Net2 over = reparametrize(*n, domain);
    for (const auto& c : over.coeffs()) m = std::max(m, cci::norm_inf(inv * c));
  }
  return 4.0 * m;
}

}  // namespace detail

/// Computable Lipschitz constant for J(x0)^{-1} f' over `domain`, in the
/// infinity norm: four times the largest Bernstein coefficient (in absolute
/// value) of the premultiplied second-derivative tensor reparametrized over
/// the domain. Empty when J(x0) is singular.
inline std::optional<double> lipschitz_bound(const Net2& pair_net, const Vec2& x0, const Rect& domain) {
  const auto j = jacobian(pair_net, x0);
  const auto inv = invert(from_columns(j.du, j.dv));
  if (!inv) return std::nullopt;
  return detail::premultiplied_bound(SecondDerivatives<2>(pair_net), *inv, domain);
}

enum class PairStatus { pass, fail_h, fail_containment, singular_jacobian };

inline constexpr std::string_view to_string(PairStatus s) {
  switch (s) {
    case PairStatus::pass: return "pass";
    case PairStatus::fail_h: return "fail_h";
    case PairStatus::fail_containment: return "fail_containment";
    case PairStatus::singular_jacobian: return "singular_jacobian";
  }
  return "?";
}

struct PairTest {
  Pair pair{0, 1};
  PairStatus status = PairStatus::singular_jacobian;
  double alpha = 1.0;
  Rect domain{};  // D_ij
  double eta = std::numeric_limits<double>::quiet_NaN();
  double omega_hat = std::numeric_limits<double>::quiet_NaN();
  double h = std::numeric_limits<double>::quiet_NaN();
  double rho_minus = std::numeric_limits<double>::quiet_NaN();
  double rho_plus = std::numeric_limits<double>::quiet_NaN();
};

/// Classifies one pair from its numbers. `radius` is alpha * r, the half
/// width of the test domain.
inline PairStatus classify(double h, double rho_minus, double radius) {
  if (h > 0.25) return PairStatus::fail_h;
  return rho_minus <= radius ? PairStatus::pass : PairStatus::fail_containment;
}

struct KantorovichOutcome {
  std::array<PairTest, 3> pairs{};
  std::optional<std::size_t> passing;  // index into kPairs of the first pass

  bool passed() const { return passing.has_value(); }
  const PairTest& passing_test() const { return pairs.at(*passing); }
};

/// Derivative data for the full 3-component system, computed once per solve.
struct SystemDerivatives {
  Net3 f, fu, fv;
  SecondDerivatives<3> second;

  explicit SystemDerivatives(Net3 net)
      : f(std::move(net)),
        fu(derivative_net(f, Axis::u)),
        fv(derivative_net(f, Axis::v)),
        second(f) {}
};

inline SecondDerivatives<2> extract_pair(const SecondDerivatives<3>& s, Pair p) {
  return {extract_pair(s.uu, p), extract_pair(s.uv, p), extract_pair(s.vv, p)};
}

/// Runs the test on the square B(center, r) with test domains
/// D_ij = B(center, alpha_ij * r), pairs in the order {1,2}, {1,3}, {2,3}.
inline KantorovichOutcome kantorovich_test(const SystemDerivatives& sys, const Vec2& center,
                                           double r, const std::array<double, 3>& alphas) {
  KantorovichOutcome out;
  const Vec3 value = eval_net(sys.f, center[0], center[1]);
  const Vec3 du = eval_net(sys.fu, center[0], center[1]);
  const Vec3 dv = eval_net(sys.fv, center[0], center[1]);

  // Second-derivative nets over each distinct test domain (alphas often agree).
  std::array<std::optional<SecondDerivatives<3>>, 3> over_domain;

  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const Pair p = kPairs[k];
    PairTest& t = out.pairs[k];
    t.pair = p;
    t.alpha = alphas[k];
    t.domain = Rect::ball(center, alphas[k] * r);

    const Mat2 jac{du[p.first], dv[p.first], du[p.second], dv[p.second]};
    const auto inv = invert(jac);
    if (!inv) {
      t.status = PairStatus::singular_jacobian;
      continue;
    }
    t.eta = cci::norm_inf(*inv * Vec2{value[p.first], value[p.second]});

    std::size_t src = k;
    for (std::size_t q = 0; q < k; ++q)
      if (alphas[q] == alphas[k] && over_domain[q]) src = q;
    if (src == k) {
      over_domain[k].emplace(reparametrize(sys.second.uu, t.domain),
                             reparametrize(sys.second.uv, t.domain),
                             reparametrize(sys.second.vv, t.domain));
    }
    // Reparametrization already done, so the bound is over the unit square.
    t.omega_hat = detail::premultiplied_bound(extract_pair(*over_domain[src], p), *inv, Rect::unit());
    t.h = t.eta * t.omega_hat;
    if (t.h <= 0.25) std::tie(t.rho_minus, t.rho_plus) = rho_radii(t.eta, t.omega_hat);
    t.status = classify(t.h, t.rho_minus, alphas[k] * r);
    if (t.status == PairStatus::pass && !out.passing) out.passing = k;
  }
  return out;
}

inline KantorovichOutcome kantorovich_test(const Net3& net, const Vec2& center, double r,
                                           const std::array<double, 3>& alphas) {
  return kantorovich_test(SystemDerivatives(net), center, r, alphas);
}

/// Region around a confirmed zero that holds no other zero of f:
/// the closed rho_plus ball around the test center, optionally clipped to the
/// test domain the uniqueness statement was derived on.
struct ExploredRegion {
  Vec2 center{};
  double rho_minus = 0.0;
  double rho_plus = 0.0;
  Pair pair{0, 1};
  std::optional<Rect> clip;
  Vec2 zero{};

  bool contains(const Vec2& p) const {
    if (clip && !clip->contains(p)) return false;
    return norm_inf(p - center) <= rho_plus;
  }

  bool contains(const Rect& r) const {
    return contains(Vec2{r.lo_u, r.lo_v}) && contains(Vec2{r.hi_u, r.lo_v}) &&
           contains(Vec2{r.lo_u, r.hi_v}) && contains(Vec2{r.hi_u, r.hi_v});
  }
};

inline ExploredRegion explored_region(const Vec2& x0, double rho_minus, double rho_plus, Pair pair,
                                      std::optional<Rect> clip, const Vec2& x_star) {
  return {x0, rho_minus, rho_plus, pair, clip, x_star};
}

}  // namespace cci
