#pragma once

// Exact per-mode Maxwell DtN impedances on a ball with constant media, and the
// per-mode comparison with the boundary symbol.

#include <vector>

#include "mdtn/numerics.hpp"

namespace mdtn {

/// psi_l(x) = x j_l(x) and its derivative, both multiplied by exp(-|Im x|).
struct RiccatiBessel {
  Complex psi;
  Complex dpsi;
  double log_scale = 0.0;  // |Im x|: true values are exp(log_scale) times the stored ones
};

enum class BesselMethod { Auto, Series, Upward, Downward };

RiccatiBessel riccati_bessel(int l, Complex x, BesselMethod method = BesselMethod::Auto);

/// chi_l(x) = -x y_l(x) and derivative, same scaling; psi' chi - psi chi' = 1.
RiccatiBessel riccati_bessel_second(int l, Complex x);

enum class Polarization { TE, TM };

const char* polarization_name(Polarization p);

// Impedance convention. The 2x2 block acts on F = nu x f = -E_tan, nu the inward
// normal, and the impedance Z is defined by nu x H = Z F on the mode. TE means
// E_r = 0 (F orthogonal to the mode covector beta), TM means H_r = 0 (F parallel
// to beta). With k = lambda sqrt(eps mu), x = k R:
//   Z_TE =  i sqrt(eps/mu) psi'(x) / psi(x)
//   Z_TM = -i sqrt(eps/mu) psi(x) / psi'(x)
// These tend to the eigenvalues rho/(z mu) and z eps/rho of m.
struct ModeImpedance {
  int l = 1;
  Polarization pol = Polarization::TE;
  Complex lambda;
  double eps = 1.0;
  double mu = 1.0;
  double radius = 1.0;
  Complex value;
};

ModeImpedance exact_mode_impedance(int l, Complex lambda, double eps, double mu, double radius, Polarization pol);

/// Eigenvalues of m at r0 = h^2 l(l+1)/R^2, z = h lambda.
Complex principal_mode_value(int l, Complex lambda, double eps, double mu, double radius, double h, Polarization pol);

/// <F, (m + h m_tilde) F> at the equator of the sphere, r0 as above.
Complex first_order_mode_value(int l, Complex lambda, double eps, double mu, double radius, double h,
                               Polarization pol);

struct DtnCompareRow {
  int l = 0;
  Polarization pol = Polarization::TE;
  Complex lambda;
  Complex exact;
  Complex order0;
  Complex order1;
  double err0 = 0.0;  // absolute errors
  double err1 = 0.0;
  bool resonant = false;
};

/// Rows for each l in ls and both polarizations. Needs theta(lambda) >= h^{2/5}
/// unless check_regime is false.
std::vector<DtnCompareRow> dtn_compare(const std::vector<int>& ls, Complex lambda, double eps, double mu,
                                       double radius, double h, bool check_regime = true);

}  // namespace mdtn
