#pragma once

// Spectral parameter bookkeeping and the pointwise symbols rho, B, m, m0 and
// the cutoffs eta and chi.

#include <functional>
#include <string>

#include "mdtn/geometry.hpp"
#include "mdtn/numerics.hpp"

namespace mdtn {

struct SpectralParameter {
  Complex lambda;
  double h = 1.0;
  Complex z;
  double theta = 0.0;
};

SpectralParameter split_lambda(Complex lambda);

/// The same split with h prescribed: z = h lambda (used for mode sweeps at fixed h).
SpectralParameter spectral_from_z(Complex z, double h);

/// rho = sqrt(-r0 + z^2 eps0 mu0) with Im rho > 0.
template <class C>
C rho_of(const C& r0, const C& z, const C& eps0mu0) {
  return sqrt_upper(-r0 + z * z * eps0mu0);
}
inline Complex rho_of(double r0, Complex z, double eps0mu0) {
  return rho_of<Complex>(Complex(r0), z, Complex(eps0mu0));
}

/// B g = <beta, g> beta.
C3Matrix calB(const Vec3<double>& beta);

/// m = (z mu0)^{-1} (rho I + rho^{-1} B).
C3Matrix m_matrix(Complex z, Complex rho, double mu0, const Vec3<double>& beta);

/// m0 = i (z mu0)^{-1} sqrt(r0) (I - r0^{-1} B).
C3Matrix m0_matrix(Complex z, double mu0, const Vec3<double>& beta);

/// Smooth monotone step: 1 for t <= 0, 0 for t >= 1, built from exp(-1/t).
double smooth_step(double t);
double smooth_step_derivative(double t);

/// Bump phi0: 1 for |t| <= 1, 0 for |t| >= 2.
double bump(double t);

/// eta(r0): 1 for r0 <= C0, 0 for r0 >= 2 C0.
double cutoff_eta(double r0, double C0);
double cutoff_eta_derivative(double r0, double C0);

/// chi = phi0(x1/delta) phi0(x1/(|rho|^3 delta)).
double cutoff_chi(double x1, double rho_abs, double delta);

/// eps and mu evaluated on the boundary point s(x').
std::array<double, 2> boundary_media(const SurfaceChart& chart, const Media& media, double x2, double x3);

/// Matrix-valued function on the cotangent bundle of the boundary.
struct SymbolMatrix {
  std::string name;
  bool depends_on_eps = false;
  bool depends_on_mu = false;
  std::function<C3Matrix(double x2, double x3, double xi2, double xi3)> eval;

  C3Matrix operator()(double x2, double x3, double xi2, double xi3) const { return eval(x2, x3, xi2, xi3); }
};

SymbolMatrix symbol_m(const SpectralParameter& sp, const SurfaceChart& chart, const Media& media);
SymbolMatrix symbol_m0(const SpectralParameter& sp, const SurfaceChart& chart, const Media& media);

}  // namespace mdtn
