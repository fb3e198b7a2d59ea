#pragma once

// Bernstein / Bezier arithmetic: curves, tensor-product control nets,
// differentiation and reparametrization over axis-aligned rectangles.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cci {

template <std::size_t D>
using Vec = std::array<double, D>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <std::size_t D>
constexpr Vec<D> operator+(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = a[k] + b[k];
  return r;
}

template <std::size_t D>
constexpr Vec<D> operator-(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = a[k] - b[k];
  return r;
}

template <std::size_t D>
constexpr Vec<D> operator*(double s, const Vec<D>& a) {
  Vec<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = s * a[k];
  return r;
}

/// Affine combination (1-t)*a + t*b, the de Casteljau step.
template <std::size_t D>
constexpr Vec<D> lerp(const Vec<D>& a, const Vec<D>& b, double t) {
  Vec<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = (1.0 - t) * a[k] + t * b[k];
  return r;
}

template <std::size_t D>
double norm_inf(const Vec<D>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

template <std::size_t D>
bool all_finite(const Vec<D>& a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

/// Axis-aligned rectangle [lo_u, hi_u] x [lo_v, hi_v] in parameter space.
struct Rect {
  double lo_u = 0.0;
  double hi_u = 1.0;
  double lo_v = 0.0;
  double hi_v = 1.0;

  static constexpr Rect unit() { return {0.0, 1.0, 0.0, 1.0}; }

  /// Infinity-norm closed ball around `center` with radius `r`.
  static constexpr Rect ball(const Vec2& center, double r) {
    return {center[0] - r, center[0] + r, center[1] - r, center[1] + r};
  }

  bool valid() const { return lo_u < hi_u && lo_v < hi_v; }
  double width_u() const { return hi_u - lo_u; }
  double width_v() const { return hi_v - lo_v; }

  bool contains(const Vec2& p) const {
    return p[0] >= lo_u && p[0] <= hi_u && p[1] >= lo_v && p[1] <= hi_v;
  }

  /// Image of `inner` (given in this rectangle's local [0,1]^2 coordinates).
  Rect compose(const Rect& inner) const {
    return {lo_u + inner.lo_u * width_u(), lo_u + inner.hi_u * width_u(),
            lo_v + inner.lo_v * width_v(), lo_v + inner.hi_v * width_v()};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Bernstein basis polynomial Z_{i,m}(t) = C(m,i) (1-t)^{m-i} t^i.
inline double bernstein_basis(int i, int m, double t) {
  if (i < 0 || i > m) return 0.0;
  // Binomial coefficient by the multiplicative formula; exact for the small
  // degrees used here.
  double binom = 1.0;
  for (int k = 1; k <= i; ++k) binom = binom * (m - i + k) / k;
  return binom * std::pow(1.0 - t, m - i) * std::pow(t, i);
}

/// de Casteljau evaluation of a Bernstein coefficient sequence at t.
/// Valid for any real t (extrapolation outside [0,1] is exact for polynomials).
template <std::size_t D>
Vec<D> de_casteljau(std::vector<Vec<D>> pts, double t) {
  if (pts.empty()) throw std::invalid_argument("de_casteljau: empty coefficient list");
  for (std::size_t level = pts.size() - 1; level > 0; --level)
    for (std::size_t k = 0; k < level; ++k) pts[k] = lerp(pts[k], pts[k + 1], t);
  return pts.front();
}

/// Splits a Bernstein sequence at t; returns the coefficients over [0,t]
/// and [t,1] (each in its own [0,1] parametrization).
template <std::size_t D>
std::pair<std::vector<Vec<D>>, std::vector<Vec<D>>> split(std::vector<Vec<D>> pts,
                                                          double t) {
  const std::size_t n = pts.size();
  std::vector<Vec<D>> left(n), right(n);
  for (std::size_t level = 0; level < n; ++level) {
    left[level] = pts.front();
    right[n - 1 - level] = pts[n - 1 - level];
    for (std::size_t k = 0; k + 1 < n - level; ++k) pts[k] = lerp(pts[k], pts[k + 1], t);
  }
  return {std::move(left), std::move(right)};
}

/// Coefficients of the same polynomial reparametrized so that [0,1] maps
/// onto [a,b]. Works for intervals extending outside [0,1].
template <std::size_t D>
std::vector<Vec<D>> reparametrize_sequence(const std::vector<Vec<D>>& pts, double a,
                                           double b) {
  if (!(a < b)) throw std::invalid_argument("reparametrize: degenerate interval");
  if (pts.size() <= 1 || (a == 0.0 && b == 1.0)) return pts;
  // Two splits: keep [0,b] then [a,b] inside it, or [a,1] then [a,b] inside
  // that. Pick the branch whose second split parameter has a sane denominator.
  if (std::abs(b) >= std::abs(1.0 - a)) {
    auto head = split(pts, b).first;
    return split(std::move(head), a / b).second;
  }
  auto tail = split(pts, a).second;
  return split(std::move(tail), (b - a) / (1.0 - a)).first;
}

/// A 3D Bezier curve c(t) = sum_i a_i Z_{i,m}(t), t in [0,1].
class BezierCurve {
 public:
  BezierCurve() = default;
  explicit BezierCurve(std::vector<Vec3> control_points) : points_(std::move(control_points)) {
    if (points_.empty()) throw std::invalid_argument("BezierCurve: needs at least one control point");
    for (const auto& p : points_)
      if (!all_finite(p)) throw std::invalid_argument("BezierCurve: non-finite control point");
  }

  int degree() const { return static_cast<int>(points_.size()) - 1; }
  const std::vector<Vec3>& control_points() const { return points_; }

 private:
  std::vector<Vec3> points_;
};

inline Vec3 eval_curve(const BezierCurve& c, double t) {
  return de_casteljau(c.control_points(), t);
}

/// Tensor-product Bernstein polynomial with D-dimensional coefficients,
/// stored row-major: coeff(i, j) multiplies Z_{i,m}(u) Z_{j,n}(v).
/// Evaluation is always over [0,1]^2; `domain()` records which rectangle of
/// the original parametrization the net represents.
template <std::size_t D>
class ControlNet {
 public:
  ControlNet() : ControlNet(0, 0) {}
  ControlNet(int degree_u, int degree_v, Rect domain = Rect::unit())
      : m_(degree_u), n_(degree_v), domain_(domain) {
    if (m_ < 0 || n_ < 0) throw std::invalid_argument("ControlNet: negative degree");
    coeffs_.assign(static_cast<std::size_t>((m_ + 1) * (n_ + 1)), Vec<D>{});
  }
  ControlNet(int degree_u, int degree_v, std::vector<Vec<D>> coeffs, Rect domain = Rect::unit())
      : m_(degree_u), n_(degree_v), domain_(domain), coeffs_(std::move(coeffs)) {
    if (m_ < 0 || n_ < 0) throw std::invalid_argument("ControlNet: negative degree");
    if (coeffs_.size() != static_cast<std::size_t>((m_ + 1) * (n_ + 1)))
      throw std::invalid_argument("ControlNet: coefficient grid has wrong shape");
    for (const auto& c : coeffs_)
      if (!all_finite(c)) throw std::invalid_argument("ControlNet: non-finite coefficient");
  }

  int degree_u() const { return m_; }
  int degree_v() const { return n_; }
  const Rect& domain() const { return domain_; }
  void set_domain(const Rect& r) { domain_ = r; }

  Vec<D>& operator()(int i, int j) { return coeffs_[index(i, j)]; }
  const Vec<D>& operator()(int i, int j) const { return coeffs_[index(i, j)]; }

  const std::vector<Vec<D>>& coeffs() const { return coeffs_; }
  std::vector<Vec<D>>& coeffs() { return coeffs_; }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, norm_inf(c));
    return m;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * (n_ + 1) + j); }

  int m_;
  int n_;
  Rect domain_;
  std::vector<Vec<D>> coeffs_;
};

using Net3 = ControlNet<3>;
using Net2 = ControlNet<2>;

/// f(u,v) = c1(u) - c2(v) as a tensor net: b_ij = a_i - a'_j.
inline Net3 difference_net(const BezierCurve& c1, const BezierCurve& c2) {
  const auto& a = c1.control_points();
  const auto& b = c2.control_points();
  Net3 net(c1.degree(), c2.degree());
  for (int i = 0; i <= c1.degree(); ++i)
    for (int j = 0; j <= c2.degree(); ++j) net(i, j) = a[i] - b[j];
  return net;
}

template <std::size_t D>
Vec<D> eval_net(const ControlNet<D>& net, double u, double v) {
  const int m = net.degree_u();
  const int n = net.degree_v();
  std::vector<Vec<D>> column(static_cast<std::size_t>(m + 1));
  std::vector<Vec<D>> row(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) row[j] = net(i, j);
    column[i] = de_casteljau(row, v);
  }
  return de_casteljau(std::move(column), u);
}

enum class Axis { u, v };

/// Partial derivative along `axis`, as a net one degree lower on that axis.
/// A degree-0 axis yields the zero net of degree 0 along it.
template <std::size_t D>
ControlNet<D> derivative_net(const ControlNet<D>& net, Axis axis) {
  const int m = net.degree_u();
  const int n = net.degree_v();
  if (axis == Axis::u) {
    if (m == 0) return ControlNet<D>(0, n, net.domain());
    ControlNet<D> d(m - 1, n, net.domain());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= n; ++j) d(i, j) = static_cast<double>(m) * (net(i + 1, j) - net(i, j));
    return d;
  }
  if (n == 0) return ControlNet<D>(m, 0, net.domain());
  ControlNet<D> d(m, n - 1, net.domain());
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = static_cast<double>(n) * (net(i, j + 1) - net(i, j));
  return d;
}

template <std::size_t D>
struct Jacobian {
  Vec<D> du{};
  Vec<D> dv{};
};

/// Columns df/du and df/dv at (u,v).
template <std::size_t D>
Jacobian<D> jacobian(const ControlNet<D>& net, const Vec2& x) {
  return {eval_net(derivative_net(net, Axis::u), x[0], x[1]),
          eval_net(derivative_net(net, Axis::v), x[0], x[1])};
}

/// Net whose evaluation over [0,1]^2 equals `net` over `target`
/// (target given in the net's own [0,1]^2 parameters).
template <std::size_t D>
ControlNet<D> reparametrize(const ControlNet<D>& net, const Rect& target) {
  if (!target.valid()) throw std::invalid_argument("reparametrize: degenerate target rectangle");
  const int m = net.degree_u();
  const int n = net.degree_v();
  ControlNet<D> out(m, n, net.domain().compose(target));
  std::vector<Vec<D>> seq;
  seq.resize(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) seq[j] = net(i, j);
    seq = reparametrize_sequence(seq, target.lo_v, target.hi_v);
    for (int j = 0; j <= n; ++j) out(i, j) = seq[j];
  }
  seq.resize(static_cast<std::size_t>(m + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= m; ++i) seq[i] = out(i, j);
    seq = reparametrize_sequence(seq, target.lo_u, target.hi_u);
    for (int i = 0; i <= m; ++i) out(i, j) = seq[i];
  }
  return out;
}

/// Coordinate pair of the 3-component system, 0-based: {0,1}, {0,2} or {1,2}.
struct Pair {
  int first;
  int second;
  friend bool operator==(const Pair&, const Pair&) = default;
};

inline constexpr std::array<Pair, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

inline std::string pair_name(const Pair& p) {
  return std::to_string(p.first + 1) + std::to_string(p.second + 1);
}

/// The two-component sub-system (f_i, f_j).
inline Net2 extract_pair(const Net3& net, Pair pair) {
  if (pair.first < 0 || pair.second > 2 || pair.first >= pair.second)
    throw std::invalid_argument("extract_pair: invalid coordinate pair");
  std::vector<Vec2> c;
  c.reserve(net.coeffs().size());
  for (const auto& b : net.coeffs()) c.push_back({b[pair.first], b[pair.second]});
  return Net2(net.degree_u(), net.degree_v(), std::move(c), net.domain());
}

}  // namespace cci
