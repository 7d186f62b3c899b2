#include "mdtn/spectral.hpp"

#include <cmath>

namespace mdtn {

SpectralParameter split_lambda(Complex lambda) {
  if (lambda.imag() == 0.0) throw Error(ErrorCode::RealFrequency, "Im lambda = 0");
  const double re = std::abs(lambda.real()), im = std::abs(lambda.imag());
  return spectral_from_z(lambda / (re >= im ? re : im), re >= im ? 1.0 / re : 1.0 / im);
}

SpectralParameter spectral_from_z(Complex z, double h) {
  if (z.imag() == 0.0) throw Error(ErrorCode::RealFrequency, "Im z = 0");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidInput, "h must be positive");
  SpectralParameter sp;
  sp.h = h;
  sp.z = z;
  sp.lambda = z / h;
  sp.theta = std::abs(z.imag());
  return sp;
}

C3Matrix calB(const Vec3<double>& beta) { return to_complex_outer(beta); }

C3Matrix m_matrix(Complex z, Complex rho, double mu0, const Vec3<double>& beta) {
  const Complex f = 1.0 / (z * mu0);
  return f * (rho * identity3() + (1.0 / rho) * calB(beta));
}

C3Matrix m0_matrix(Complex z, double mu0, const Vec3<double>& beta) {
  const double r0 = dot(beta, beta);
  if (r0 == 0.0) throw Error(ErrorCode::ZeroFrequencyCovector, "m0 needs r0 > 0");
  const Complex f = kI * std::sqrt(r0) / (z * mu0);
  return f * (identity3() - (1.0 / r0) * calB(beta));
}

namespace {
double f_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double f_exp_derivative(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = f_exp(1.0 - t), b = f_exp(t);
  return a / (a + b);
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = f_exp(1.0 - t), b = f_exp(t);
  const double da = -f_exp_derivative(1.0 - t), db = f_exp_derivative(t);
  return (da * b - a * db) / ((a + b) * (a + b));
}

double bump(double t) { return smooth_step(std::abs(t) - 1.0); }

double cutoff_eta(double r0, double C0) {
  if (!(C0 > 0.0)) throw Error(ErrorCode::InvalidInput, "C0 must be positive");
  return smooth_step(r0 / C0 - 1.0);
}

double cutoff_eta_derivative(double r0, double C0) {
  if (!(C0 > 0.0)) throw Error(ErrorCode::InvalidInput, "C0 must be positive");
  return smooth_step_derivative(r0 / C0 - 1.0) / C0;
}

double cutoff_chi(double x1, double rho_abs, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidInput, "delta must be positive");
  return bump(x1 / delta) * bump(x1 / (rho_abs * rho_abs * rho_abs * delta));
}

std::array<double, 2> boundary_media(const SurfaceChart& chart, const Media& media, double x2, double x3) {
  const auto cj = chart_jets<Complex>(chart, x2, x3, 0);
  const C3Vector y = vec_value(cj.s);
  const Complex one(1.0);
  const double e = media.eps.eval<Complex, Complex>(y, one).real();
  const double m = media.mu.eval<Complex, Complex>(y, one).real();
  if (!(e > 0.0) || !(m > 0.0)) throw Error(ErrorCode::InvalidInput, "media must be positive on the boundary");
  return {e, m};
}

SymbolMatrix symbol_m(const SpectralParameter& sp, const SurfaceChart& chart, const Media& media) {
  SymbolMatrix s;
  s.name = "m";
  s.depends_on_eps = true;
  s.depends_on_mu = true;
  s.eval = [sp, chart, media](double x2, double x3, double xi2, double xi3) {
    const auto em = boundary_media(chart, media, x2, x3);
    const auto cd = covector_data(chart, x2, x3, xi2, xi3);
    return m_matrix(sp.z, rho_of(cd.r0, sp.z, em[0] * em[1]), em[1], cd.beta);
  };
  return s;
}

SymbolMatrix symbol_m0(const SpectralParameter& sp, const SurfaceChart& chart, const Media& media) {
  SymbolMatrix s;
  s.name = "m0";
  s.depends_on_eps = false;
  s.depends_on_mu = true;
  s.eval = [sp, chart, media](double x2, double x3, double xi2, double xi3) {
    const auto em = boundary_media(chart, media, x2, x3);
    const auto cd = covector_data(chart, x2, x3, xi2, xi3);
    return m0_matrix(sp.z, em[1], cd.beta);
  };
  return s;
}

}  // namespace mdtn
