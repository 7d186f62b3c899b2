#pragma once

// Complex phase phi = sum_k x1^k phi_k solving the eikonal equation
//   <gamma grad phi, gamma grad phi> - z^2 eps mu = O(x1^{N+1})
// order by order, with phi_0 = -<x', xi'> and phi_1 = rho. Coefficients are
// x'-jets around the base point.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mdtn/geometry.hpp"
#include "mdtn/highprec.hpp"
#include "mdtn/spectral.hpp"

namespace mdtn {

template <class C>
struct PhaseSeries {
  GammaSeries<C> geom;
  MediaSeries<C> media;
  SpectralParameter sp;
  double xi2 = 0.0, xi3 = 0.0;
  int N = 0;
  bool flattened = false;  // rho -> i sqrt(r0) and eps mu -> 0
  double delta = 0.1;
  int delta_halvings = 0;

  Jet<C> rho;
  Vec3<Jet<C>> beta;
  std::vector<Jet<C>> phi;            // phi_0 .. phi_N
  std::vector<Vec3<Jet<C>>> psi;      // psi_k = sum_l gamma_l e_{k-l}, k = 0 .. N-1
  std::vector<Vec3<Jet<C>>> e;        // e_k, k = 0 .. N-1

  C rho_value() const { return rho.value(); }
  double rho_abs() const {
    using std::abs;
    return static_cast<double>(abs(rho.value()));
  }
  /// Upper end of the retained region 2 delta min(1, |rho|^3).
  double retained_limit() const {
    const double r = rho_abs();
    return 2.0 * delta * std::min(1.0, r * r * r);
  }
};

struct EikonalOptions {
  int jet_order = -1;  // x'-order of the coefficient jets; -1 selects N + 2
  double delta = 0.1;
  bool flattened = false;
  bool check_im_phi = true;
  int im_phi_samples = 64;
  // Complex constants (eps, mu) replacing the media; used to continue the
  // construction to complex eps mu.
  std::optional<std::array<Complex, 2>> constant_media;
};

namespace detail {

template <class C>
C to_scalar(Complex z) {
  return C(z.real(), z.imag());
}

/// Sum of <psi_a, psi_b> over a + b = k.
template <class C>
Jet<C> quadratic_coefficient(const std::vector<Vec3<Jet<C>>>& psi, int k) {
  Jet<C> s = dot(psi[0], psi[static_cast<std::size_t>(k)]);
  for (int a = 1; a <= k; ++a) s = s + dot(psi[static_cast<std::size_t>(a)], psi[static_cast<std::size_t>(k - a)]);
  return s;
}

}  // namespace detail

template <class C>
bool im_phi_condition(const PhaseSeries<C>& ps, int samples);

template <class C>
PhaseSeries<C> eikonal_coeffs(const SurfaceChart& chart, const Media& media, const SpectralParameter& sp, double x2,
                              double x3, double xi2, double xi3, int N, const EikonalOptions& opt = {}) {
  using J = Jet<C>;
  if (N < 1) throw Error(ErrorCode::InvalidInput, "eikonal order N must be at least 1");
  if (!(sp.theta > 0.0)) throw Error(ErrorCode::RealFrequency, "theta must be positive");
  const int M = opt.jet_order < 0 ? N + 2 : opt.jet_order;
  if (M < N) throw Error(ErrorCode::OrderBudgetExceeded, "jet order below the eikonal order");

  PhaseSeries<C> ps;
  ps.geom = gamma_series<C>(chart, x2, x3, N, M);
  if (opt.constant_media) {
    const auto& cm = *opt.constant_media;
    const C e = detail::to_scalar<C>(cm[0]), m = detail::to_scalar<C>(cm[1]);
    for (int k = 0; k <= N; ++k) {
      ps.media.eps.push_back(Jet<C>(2, M, k == 0 ? e : C(0)));
      ps.media.mu.push_back(Jet<C>(2, M, k == 0 ? m : C(0)));
      ps.media.epsmu.push_back(Jet<C>(2, M, k == 0 ? e * m : C(0)));
    }
  } else {
    ps.media = media_series<C>(media, ps.geom, N);
  }
  ps.sp = sp;
  ps.xi2 = xi2;
  ps.xi3 = xi3;
  ps.N = N;
  ps.flattened = opt.flattened;
  ps.delta = opt.delta;

  const C z = detail::to_scalar<C>(sp.z);
  const C z2 = z * z;
  const auto& g = ps.geom.gamma;
  ps.beta = beta_jets(ps.geom, xi2, xi3);
  const J r0 = dot(ps.beta, ps.beta);
  if (opt.flattened) {
    using std::real;
    if (!(real(r0.value()) > 0)) throw Error(ErrorCode::ZeroFrequencyCovector, "flattened phase needs r0 > 0");
    ps.rho = sqrt_principal(r0) * C(0, 1);
  } else {
    ps.rho = sqrt_upper(z2 * ps.media.epsmu[0] - r0);
  }
  {
    using std::abs;
    if (static_cast<double>(abs(ps.rho.value())) < 1e-14) throw Error(ErrorCode::DegenerateRho, "|rho| below 1e-14");
  }
  auto epsmu = [&](int k) -> J {
    if (opt.flattened) return J(2, M);
    return ps.media.epsmu[static_cast<std::size_t>(k)];
  };

  // phi_0 = -<x', xi'> shifted to vanish at the base point
  J phi0(2, M);
  if (M >= 1) {
    phi0.set_coeff({1, 0, 0}, C(-xi2));
    phi0.set_coeff({0, 1, 0}, C(-xi3));
  }
  ps.phi = {phi0, ps.rho};
  const Vec3<J> nu = ps.geom.nu;

  for (int k = 0; k < N; ++k) {
    // e_k with the unknown phi_{k+1} set to zero (k >= 1)
    const J& pk = ps.phi[static_cast<std::size_t>(k)];
    J first = k == 0 ? ps.rho : J(2, pk.order() - 1);
    Vec3<J> ek{first, pk.derivative(0), pk.derivative(1)};
    if (k == 0) ek = {ps.rho, J(2, M, C(-xi2)), J(2, M, C(-xi3))};
    ps.e.push_back(ek);
    Vec3<J> psik = g[0] * ek;
    for (int l = 1; l <= k; ++l) psik += g[static_cast<std::size_t>(l)] * ps.e[static_cast<std::size_t>(k - l)];
    ps.psi.push_back(psik);
    if (k == 0) continue;
    const J R = detail::quadratic_coefficient(ps.psi, k) - z2 * epsmu(k);
    const J next = R * inverse(ps.rho * C(-2.0 * (k + 1)));
    ps.phi.push_back(next);
    // complete e_k and psi_k with the now-known phi_{k+1}
    ps.e.back()[0] = next * C(k + 1);
    ps.psi.back() = ps.psi.back() + (next * C(k + 1)) * nu;
  }
  if (N == 1) {
    // phi_1 = rho is all there is; no further coefficient is needed
  }
  if (opt.check_im_phi) {
    while (!im_phi_condition(ps, opt.im_phi_samples)) {
      if (ps.delta_halvings >= 30) throw Error(ErrorCode::OutsideRetainedRegion, "Im phi condition fails for every delta");
      ps.delta *= 0.5;
      ++ps.delta_halvings;
    }
  }
  return ps;
}

/// Values at the base point of phi and grad_x phi at height x1.
template <class C, class R>
void phase_at(const PhaseSeries<C>& ps, const R& x1, C& phi, Vec3<C>& grad) {
  const C t(x1);
  phi = C(0);
  grad = {C(0), C(0), C(0)};
  C p(1);  // x1^k
  C pm(0);  // x1^{k-1}
  for (std::size_t k = 0; k < ps.phi.size(); ++k) {
    const Jet<C>& f = ps.phi[k];
    phi = phi + p * f.value();
    if (k >= 1) grad[0] = grad[0] + C(static_cast<double>(k)) * pm * f.value();
    if (f.order() >= 1) {
      grad[1] = grad[1] + p * f.coeff({1, 0, 0});
      grad[2] = grad[2] + p * f.coeff({0, 1, 0});
    }
    pm = p;
    p = p * t;
  }
}

template <class C>
bool im_phi_condition(const PhaseSeries<C>& ps, int samples) {
  using std::imag;
  const double top = ps.retained_limit();
  const double im_rho = static_cast<double>(imag(ps.rho.value()));
  for (int i = 1; i <= samples; ++i) {
    const double x1 = top * i / samples;
    C phi;
    Vec3<C> grad;
    phase_at(ps, x1, phi, grad);
    if (static_cast<double>(imag(phi)) < x1 * im_rho / 2.0) return false;
  }
  return true;
}

/// <gamma grad phi, gamma grad phi> - z^2 eps mu at (x1, base x'), with gamma and
/// the media evaluated exactly rather than from their series.
template <class C, class R>
C eikonal_residual(const PhaseSeries<C>& ps, const R& x1, const Media& media) {
  if (!(x1 > 0) || static_cast<double>(x1) > ps.retained_limit() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutsideRetainedRegion, "x1 outside (0, 2 delta min(1, |rho|^3)]");
  }
  C phi;
  Vec3<C> grad;
  phase_at(ps, x1, phi, grad);
  const Mat3<C> gam = gamma_exact(ps.geom, x1);
  const Vec3<C> v = gam * grad;
  const C z = detail::to_scalar<C>(ps.sp.z);
  C em(0);
  if (!ps.flattened) {
    const auto m = media_exact(media, ps.geom, x1);
    em = m[0] * m[1];
  }
  return dot(v, v) - z * z * em;
}

/// Coefficient of x1^k (k = 0 .. N-1) of <gamma grad phi, gamma grad phi> - z^2 eps mu
/// computed from the series, as a jet.
template <class C>
Jet<C> eikonal_coefficient_residual(const PhaseSeries<C>& ps, int k) {
  const C z = detail::to_scalar<C>(ps.sp.z);
  Jet<C> em = ps.flattened ? Jet<C>(2, ps.geom.order) : ps.media.epsmu[static_cast<std::size_t>(k)];
  return detail::quadratic_coefficient(ps.psi, k) - z * z * em;
}

}  // namespace mdtn
