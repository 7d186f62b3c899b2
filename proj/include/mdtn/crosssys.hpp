#pragma once

// Closed-form solution of the algebraic system
//   psi0 x a - z mu0 b = a#,   psi0 x b + z eps0 a = b#,   nu x a = g,
// with psi0 = rho nu - beta. The element type T is a complex scalar or a jet.

#include <complex>

#include "mdtn/jet.hpp"
#include "mdtn/numerics.hpp"

namespace mdtn {

template <class T>
struct CrossSolution {
  Vec3<T> a, b, nu_cross_b;
};

namespace detail {
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(const Jet<Complex>& x) { return std::abs(x.value()); }
template <class C>
C reciprocal(const C& x) {
  return C(1) / x;
}
template <class C>
double magnitude(const C& x) {
  using std::abs;
  return static_cast<double>(abs(x));
}
inline Jet<Complex> reciprocal(const Jet<Complex>& x) { return inverse(x); }
template <class T>
double magnitude(const Vec3<T>& v) {
  return std::sqrt(magnitude(v[0]) * magnitude(v[0]) + magnitude(v[1]) * magnitude(v[1]) +
                   magnitude(v[2]) * magnitude(v[2]));
}
}  // namespace detail

template <class T, class Z = Complex>
CrossSolution<T> cross_solve(const T& rho, const Vec3<T>& nu, const Vec3<T>& beta, const Z& z, const T& eps0,
                             const T& mu0, const Vec3<T>& asharp, const Vec3<T>& bsharp, const Vec3<T>& g) {
  using detail::magnitude;
  using detail::reciprocal;
  (void)eps0;  // enters only through rho
  if (magnitude(rho) < 1e-14) throw Error(ErrorCode::DegenerateRho, "|rho| below 1e-14");
  if (magnitude(dot(beta, nu)) > 1e-13 * (1.0 + magnitude(beta))) {
    throw Error(ErrorCode::InvalidInput, "beta is not tangential");
  }
  if (magnitude(dot(g, nu)) > 1e-13 * (1.0 + magnitude(g))) {
    throw Error(ErrorCode::InvalidInput, "g is not tangential");
  }
  const T rinv = reciprocal(rho);
  const T rinv2 = rinv * rinv;
  const T zmu = mu0 * z;
  const T zmu_inv = reciprocal(zmu);

  const Vec3<T> nxg = cross(nu, g);
  const Vec3<T> bxg = cross(beta, g);
  const Vec3<T> bxn = cross(beta, nu);
  const Vec3<T> bxas = cross(beta, asharp);
  const T n_bxg = dot(nu, bxg);
  const T bxas_n = dot(bxas, nu);
  const T bs_n = dot(bsharp, nu);
  const T b_nxg = dot(beta, nxg);

  const T an = rinv * n_bxg - rinv2 * bxas_n + zmu * rinv2 * bs_n;
  CrossSolution<T> out;
  out.a = an * nu - nxg;
  out.b = zmu_inv * (rho * g + cross(beta, nxg) - asharp +
                     (rinv2 * bxas_n - rinv * n_bxg - zmu * rinv2 * bs_n) * bxn);
  out.nu_cross_b = zmu_inv * (rho * nxg + (rinv * b_nxg) * beta - rinv * bxas + (rinv * bxas_n) * nu +
                              (rinv * zmu) * bsharp - (rinv * zmu * bs_n) * nu);
  return out;
}

/// Scalar input record for the complex-valued solver.
struct CrossSystemInput {
  Complex rho;
  Vec3<double> nu;
  Vec3<double> beta;
  Complex z;
  double eps0 = 1.0;
  double mu0 = 1.0;
  C3Vector asharp, bsharp, g;
};

inline CrossSolution<Complex> solve_cross_system(const CrossSystemInput& in) {
  return cross_solve<Complex>(in.rho, to_complex(in.nu), to_complex(in.beta), in.z, Complex(in.eps0),
                              Complex(in.mu0), in.asharp, in.bsharp, in.g);
}

}  // namespace mdtn
