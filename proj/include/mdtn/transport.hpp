#pragma once

// Amplitude coefficients a_{j,k}, b_{j,k} of the boundary-layer parametrix and
// the boundary symbol they produce. Amplitudes are linear in the datum
// ft = nu x f; column c of A_{j,k} is the amplitude for ft = e_c. The boundary
// datum is g = -nu(x') x ft.

#include <utility>
#include <vector>

#include "mdtn/crosssys.hpp"
#include "mdtn/eikonal.hpp"

namespace mdtn {

using CJet = Jet<Complex>;
using JetVec = Vec3<CJet>;
using JetMat = Mat3<CJet>;

struct AmplitudeTable {
  PhaseSeries<Complex> ps;
  Media media;
  int N = 0;
  // [c][j][k]: amplitude vectors for ft = e_c
  std::vector<std::vector<std::vector<JetVec>>> a, b;

  /// A_{j,k} (or B_{j,k}) as a matrix of jets, one column per basis datum.
  JetMat A(int j, int k) const;
  JetMat B(int j, int k) const;
  /// Base-point values.
  C3Matrix A_value(int j, int k) const;
  C3Matrix B_value(int j, int k) const;
  /// iota_nu B_{j,0} at the base point: columns nu x b_{j,0}(e_c).
  C3Matrix boundary_block(int j) const;
};

struct TransportOptions {
  bool flattened_media = false;  // keep only eps_0, mu_0 (used by the flattened pipeline)
  bool literal = false;          // a_{j,k} along nu for k >= 1, no ray transport (comparison only)
};

/// Amplitudes for one datum ft: a[j][k], b[j][k].
struct AmplitudeColumn {
  std::vector<std::vector<JetVec>> a, b;
};

AmplitudeColumn transport_datum(const PhaseSeries<Complex>& ps, const Media& media, int N, const C3Vector& ft,
                                const TransportOptions& opt = {});

/// Solves the transport hierarchy for j = 0 .. N-1 and k = 0 .. N (one extra
/// x1-coefficient, needed to balance order N-1 of the next level). The phase
/// series must have order N + 1 and jets of order about 2N + 4; see transport_setup.
AmplitudeTable transport_coeffs(const PhaseSeries<Complex>& ps, const Media& media, int N,
                                const TransportOptions& opt = {});

/// Eikonal and transport at one base point with a sufficient jet order.
AmplitudeTable transport_setup(const SurfaceChart& chart, const Media& media, const SpectralParameter& sp, double x2,
                               double x3, double xi2, double xi3, int N, bool flattened = false,
                               bool literal = false);

/// Coefficient k of the x1-expansion of the j-th Maxwell pair, for datum e_c:
///   first:  sum_l psi_{k-l} x a_{j,l} - z mu_{k-l} b_{j,l} - i Curl_k(a_{j-1})
///   second: sum_l psi_{k-l} x b_{j,l} + z eps_{k-l} a_{j,l} - i Curl_k(b_{j-1})
std::pair<JetVec, JetVec> transport_equation_coefficient(const AmplitudeTable& at, int c, int j, int k);

/// x1-coefficient k of (gamma grad) x v for v = sum_l x1^l v_l (v_l = 0 for l >= size).
JetVec curl_coefficient(const GammaSeries<Complex>& g, const std::vector<JetVec>& v, int k);

/// Coefficient k of <gamma grad phi, a_0> for datum e_c.
CJet normalization_coefficient(const AmplitudeTable& at, int c, int k);

struct BoundarySymbol {
  C3Matrix m;          // principal symbol (z mu0)^{-1}(rho I + rho^{-1} B)
  C3Matrix leading;    // iota_nu B_{0,0}
  C3Matrix n;          // commutator correction, built with (1 - eta) m0
  C3Matrix b_flat;     // (1 - eta) times the flattened iota_nu B_{1,0}
  C3Matrix m_tilde;    // n + b_flat
  C3Matrix n_full;     // commutator correction built with m in place of (1 - eta) m0
  C3Matrix b10;        // iota_nu B_{1,0} without cutoff or flattening
  C3Matrix m_tilde_full;  // n_full + b10
  std::vector<C3Matrix> blocks;  // iota_nu B_{j,0}, j = 0 .. J
  double eta = 0.0;
  double r0 = 0.0;

  /// Truncated full symbol sum_{j<=J} h^j iota_nu B_{j,0}.
  C3Matrix full(double h) const;
};

struct BoundarySymbolOptions {
  int J = 1;
  double C0 = 1.0;  // eta = 1 for r0 <= C0, 0 for r0 >= 2 C0
  // eps mu -> 0 limit: circle of radius flat_radius r0 / |z|^2 with flat_nodes nodes
  int flat_nodes = 8;
  double flat_radius = 0.01;
  int flat_jet_order = 4;
};

BoundarySymbol boundary_symbol(const AmplitudeTable& at, const BoundarySymbolOptions& opt = {});

/// Residuals of h curl E - i z mu H and h curl H + i z eps E after removing the
/// phase factor, at height x1 above the base point, for datum ft. Uses the exact
/// gamma(x1) and media.
std::pair<C3Vector, C3Vector> maxwell_residual(const AmplitudeTable& at, double x1, double h, const C3Vector& ft);

}  // namespace mdtn
