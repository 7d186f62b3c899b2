#pragma once

// Boundary charts y = s(x') + x1 nu(x'), the matrix gamma = (dy/dx)^{-T} as a
// power series in x1, the covector field beta, and x1-series of the media.
// nu is the inward unit normal. All series coefficients are jets in
// x' = (x2, x3) around the base point (variable 0 is x2, variable 1 is x3).
// Everything is templated on the complex scalar so the eikonal order checks
// can run in extended precision.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mdtn/jet.hpp"
#include "mdtn/numerics.hpp"

namespace mdtn {

enum class ChartKind { Plane, Sphere, Ellipsoid };

struct SurfaceChart {
  ChartKind kind = ChartKind::Plane;
  double radius = 1.0;                           // sphere
  std::array<double, 3> semi_axes{1.0, 1.0, 1.0};  // ellipsoid
  double rotation_z = 0.0;  // rigid rotation of the embedded surface about the z axis
  double theta_margin = 0.1;  // spherical charts: colatitude restricted to [margin, pi - margin]

  static SurfaceChart plane() { return {}; }
  static SurfaceChart sphere(double r) {
    SurfaceChart c;
    c.kind = ChartKind::Sphere;
    c.radius = r;
    return c;
  }
  static SurfaceChart ellipsoid(double a, double b, double cc) {
    SurfaceChart c;
    c.kind = ChartKind::Ellipsoid;
    c.semi_axes = {a, b, cc};
    return c;
  }

  std::string label() const;
  bool in_domain(double x2, double x3) const;
  void require_domain(double x2, double x3) const;
};

/// s and nu as jets of the given order in x'.
template <class C>
struct ChartJets {
  Vec3<Jet<C>> s;
  Vec3<Jet<C>> nu;
};

template <class C>
ChartJets<C> chart_jets(const SurfaceChart& chart, double x2, double x3, int order) {
  chart.require_domain(x2, x3);
  using J = Jet<C>;
  const J u2 = J::variable(2, order, 0, C(x2));
  const J u3 = J::variable(2, order, 1, C(x3));
  const J zero(2, order);
  const J one(2, order, C(1));
  ChartJets<C> out;
  switch (chart.kind) {
    case ChartKind::Plane:
      out.s = {zero, u2, u3};
      out.nu = {one, zero, zero};
      break;
    case ChartKind::Sphere: {
      const C r(chart.radius);
      const J st = sin(u2), ct = cos(u2), sp = sin(u3), cp = cos(u3);
      const Vec3<J> dir{st * cp, st * sp, ct};
      out.s = r * dir;
      out.nu = -dir;
      break;
    }
    case ChartKind::Ellipsoid: {
      const auto& ax = chart.semi_axes;
      const J st = sin(u2), ct = cos(u2), sp = sin(u3), cp = cos(u3);
      out.s = {C(ax[0]) * st * cp, C(ax[1]) * st * sp, C(ax[2]) * ct};
      // outward normal direction is the gradient of the quadric
      const Vec3<J> n{out.s[0] / (C(ax[0]) * C(ax[0])), out.s[1] / (C(ax[1]) * C(ax[1])),
                      out.s[2] / (C(ax[2]) * C(ax[2]))};
      const J inv_len = inverse(sqrt_principal(dot(n, n)));
      out.nu = {-(n[0] * inv_len), -(n[1] * inv_len), -(n[2] * inv_len)};
      break;
    }
  }
  if (chart.rotation_z != 0.0) {
    const C c(std::cos(chart.rotation_z)), s(std::sin(chart.rotation_z));
    auto rot = [&](const Vec3<J>& v) { return Vec3<J>{c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]}; };
    out.s = rot(out.s);
    out.nu = rot(out.nu);
  }
  return out;
}

/// gamma(x) = sum_k x1^k gamma_k(x') with gamma_k jets of order `order`;
/// k runs over 0..N.
template <class C>
struct GammaSeries {
  SurfaceChart chart;
  double x2 = 0.0, x3 = 0.0;
  int N = 0;
  int order = 0;
  Vec3<Jet<C>> s, nu;   // order `order`
  Mat3<Jet<C>> J0, J1;  // columns [nu, d2 s, d3 s] and [0, d2 nu, d3 nu]
  std::vector<Mat3<Jet<C>>> gamma;
};

template <class C>
Vec3<Jet<C>> vec_derivative(const Vec3<Jet<C>>& v, int var) {
  return {v[0].derivative(var), v[1].derivative(var), v[2].derivative(var)};
}
template <class C>
Vec3<Jet<C>> vec_truncated(const Vec3<Jet<C>>& v, int order) {
  return {v[0].truncated(order), v[1].truncated(order), v[2].truncated(order)};
}
template <class C>
Mat3<Jet<C>> mat_truncated(const Mat3<Jet<C>>& m, int order) {
  Mat3<Jet<C>> out;
  for (std::size_t i = 0; i < 9; ++i) out.m[i] = m.m[i].truncated(order);
  return out;
}
template <class C>
Vec3<C> vec_value(const Vec3<Jet<C>>& v) {
  return {v[0].value(), v[1].value(), v[2].value()};
}
template <class C>
Mat3<C> mat_value(const Mat3<Jet<C>>& m) {
  Mat3<C> out;
  for (std::size_t i = 0; i < 9; ++i) out.m[i] = m.m[i].value();
  return out;
}

template <class C>
GammaSeries<C> gamma_series(const SurfaceChart& chart, double x2, double x3, int N, int order) {
  using J = Jet<C>;
  const ChartJets<C> cj = chart_jets<C>(chart, x2, x3, order + 1);
  GammaSeries<C> g;
  g.chart = chart;
  g.x2 = x2;
  g.x3 = x3;
  g.N = N;
  g.order = order;
  g.s = vec_truncated(cj.s, order);
  g.nu = vec_truncated(cj.nu, order);
  const J zero(2, order);
  g.J0 = Mat3<J>::from_columns(g.nu, vec_derivative(cj.s, 0), vec_derivative(cj.s, 1));
  g.J1 = Mat3<J>::from_columns({zero, zero, zero}, vec_derivative(cj.nu, 0), vec_derivative(cj.nu, 1));

  const J det = determinant(g.J0);
  double scale = 1.0;
  for (const auto& e : g.J0.m) {
    using std::abs;
    scale = std::max(scale, static_cast<double>(abs(e.value())));
  }
  {
    using std::abs;
    if (static_cast<double>(abs(det.value())) <= 1e-12 * scale * scale * scale) {
      throw Error(ErrorCode::FocalDegeneracy, "Jacobian of the chart is singular at the base point");
    }
  }
  const Mat3<J> J0inv = inverse(det) * adjugate(g.J0);
  const Mat3<J> minusK = (C(-1) * J0inv) * g.J1;
  Mat3<J> term = J0inv;  // (-K)^k J0^{-1}
  g.gamma.reserve(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    g.gamma.push_back(transpose(term));
    term = minusK * term;
  }
  return g;
}

/// gamma at (x1, base x') by direct inversion of the Jacobian, no series.
template <class C, class R>
Mat3<C> gamma_exact(const GammaSeries<C>& g, const R& x1) {
  const Mat3<C> J = mat_value(g.J0) + C(x1) * mat_value(g.J1);
  const C det = determinant(J);
  return transpose((C(1) / det) * adjugate(J));
}

/// sum_{k<=n} x1^k gamma_k at the base point.
template <class C, class R>
Mat3<C> gamma_partial_sum(const GammaSeries<C>& g, const R& x1, int n) {
  Mat3<C> out = Mat3<C>::filled(C{});
  C p(1);
  for (int k = 0; k <= n && k < static_cast<int>(g.gamma.size()); ++k) {
    out = out + p * mat_value(g.gamma[static_cast<std::size_t>(k)]);
    p = p * C(x1);
  }
  return out;
}

/// beta(x', xi') = xi2 gamma_0 zeta_2 + xi3 gamma_0 zeta_3 as jets in x'.
template <class C>
Vec3<Jet<C>> beta_jets(const GammaSeries<C>& g, double xi2, double xi3) {
  const auto& g0 = g.gamma[0];
  return C(xi2) * g0.column(1) + C(xi3) * g0.column(2);
}

/// Scalar beta and r0 at the base point (double precision).
struct CovectorData {
  Vec3<double> nu;
  Vec3<double> beta;
  double r0 = 0.0;
};
CovectorData covector_data(const SurfaceChart& chart, double x2, double x3, double xi2, double xi3);

// ---------------------------------------------------------------------------
// Media

enum class MediaKind { Constant, Linear, Radial, Exponential };

/// Closed-form scalar field of y:
///   constant     a
///   linear       a + <c, y>
///   radial       a + b |y|^2
///   exponential  a + b exp(<c, y>)
struct MediaFormula {
  MediaKind kind = MediaKind::Constant;
  double a = 1.0;
  double b = 0.0;
  std::array<double, 3> c{0.0, 0.0, 0.0};

  static MediaFormula constant(double value) { return {MediaKind::Constant, value, 0.0, {0, 0, 0}}; }
  /// Parses "const:A", "linear:A,C1,C2,C3", "radial:A,B", "exp:A,B,C1,C2,C3", or a bare number.
  static MediaFormula parse(const std::string& text);
  std::string describe() const;
  bool is_constant() const { return kind == MediaKind::Constant; }

  template <class T, class C>
  T eval(const Vec3<T>& y, const T& one) const {
    const C ac(a), bc(b);
    const Vec3<C> cc{C(c[0]), C(c[1]), C(c[2])};
    auto cdot = [&]() { return y[0] * cc[0] + y[1] * cc[1] + y[2] * cc[2]; };
    switch (kind) {
      case MediaKind::Constant:
        return one * ac;
      case MediaKind::Linear:
        return cdot() + ac;
      case MediaKind::Radial:
        return dot(y, y) * bc + ac;
      case MediaKind::Exponential:
        return exp(cdot()) * bc + ac;
    }
    return one * ac;
  }
};

struct Media {
  MediaFormula eps = MediaFormula::constant(1.0);
  MediaFormula mu = MediaFormula::constant(1.0);

  static Media constant(double e, double m) { return {MediaFormula::constant(e), MediaFormula::constant(m)}; }
  bool is_constant() const { return eps.is_constant() && mu.is_constant(); }
};

/// x1-coefficients eps_k, mu_k and (eps mu)_k for k = 0..N, as x'-jets.
template <class C>
struct MediaSeries {
  std::vector<Jet<C>> eps, mu, epsmu;
};

template <class C>
MediaSeries<C> media_series(const Media& media, const GammaSeries<C>& g, int N) {
  using J = Jet<C>;
  const int order = g.order;
  MediaSeries<C> out;
  if (media.is_constant()) {
    const J zero(2, order);
    for (int k = 0; k <= N; ++k) {
      out.eps.push_back(k == 0 ? J(2, order, C(media.eps.a)) : zero);
      out.mu.push_back(k == 0 ? J(2, order, C(media.mu.a)) : zero);
      out.epsmu.push_back(k == 0 ? J(2, order, C(media.eps.a * media.mu.a)) : zero);
    }
  } else {
    // 3-variable jets in (x1, x2, x3); total order high enough that every
    // x1^k coefficient keeps x'-order `order`.
    const int total = order + N;
    Vec3<J> y;
    for (std::size_t i = 0; i < 3; ++i) y[i] = lift_leading(g.s[i], 0, total) + lift_leading(g.nu[i], 1, total);
    const J one(3, total, C(1));
    const J e = media.eps.template eval<J, C>(y, one);
    const J m = media.mu.template eval<J, C>(y, one);
    const J em = e * m;
    for (int k = 0; k <= N; ++k) {
      out.eps.push_back(slice_leading(e, k).truncated(order));
      out.mu.push_back(slice_leading(m, k).truncated(order));
      out.epsmu.push_back(slice_leading(em, k).truncated(order));
    }
  }
  using std::real;
  if (!(real(out.eps[0].value()) > 0) || !(real(out.mu[0].value()) > 0)) {
    throw Error(ErrorCode::InvalidInput, "media must be positive on the boundary");
  }
  return out;
}

/// eps and mu at y = s + x1 nu over the base point.
template <class C, class R>
std::array<C, 2> media_exact(const Media& media, const GammaSeries<C>& g, const R& x1) {
  const Vec3<C> s = vec_value(g.s), nu = vec_value(g.nu);
  const Vec3<C> y = s + C(x1) * nu;
  const C one(1);
  return {media.eps.template eval<C, C>(y, one), media.mu.template eval<C, C>(y, one)};
}

}  // namespace mdtn
