#pragma once

// Per-mode transmission determinants for two media on the ball, winding-number
// root counts, and the scan of the parabolic region {Im l >= C (Re l + 1)^p}.

#include <string>
#include <vector>

#include "mdtn/mie.hpp"
#include "mdtn/spectral.hpp"

namespace mdtn {

struct TransmissionConfig {
  double eps1 = 4.0, mu1 = 1.0;
  double eps2 = 1.0, mu2 = 1.0;
  double c1 = 1.0, c2 = 1.0;
  double radius = 1.0;
  int L = 40;             // modes l = 1..L
  double C = 1.0;         // region constant
  double p = 5.0 / 7.0;   // region exponent
  double lambda_max = 60.0;
  double im_max = 60.0;   // top of the scanned region
  double im_min = 0.01;   // floor, keeps C = 0 contours off the real axis
  double tile_width = 1.0;

  /// c1/mu1 = c2/mu2 and eps1 mu1 != eps2 mu2.
  bool satisfies_hypotheses() const;
  /// Empty when the hypotheses hold.
  std::string hypothesis_label() const;
};

/// Value times exp(-log_scale); the argument is that of the true value.
struct ScaledComplex {
  Complex value;
  double log_scale = 0.0;
  Complex unscaled() const;
};

// D_TE = c1 y1 psi'(x1) psi(x2) - c2 y2 psi(x1) psi'(x2)
// D_TM = c1 y1 psi(x1) psi'(x2) - c2 y2 psi'(x1) psi(x2)
// with x_j = lambda sqrt(eps_j mu_j) R and y_j = sqrt(eps_j/mu_j): the impedance
// mismatch c1 Z1 - c2 Z2 times both interior denominators (up to the factor +-i).
// Real coefficients, entire in lambda.
ScaledComplex mode_determinant_scaled(const TransmissionConfig& cfg, int l, Polarization pol, Complex lambda);
Complex mode_determinant(const TransmissionConfig& cfg, int l, Polarization pol, Complex lambda);

struct Rect {
  double re0, re1, im0, im1;
  bool degenerate() const { return !(re1 > re0) || !(im1 > im0); }
};

/// Winding number of D along the boundary of rect (counterclockwise).
int count_zeros(const TransmissionConfig& cfg, int l, Polarization pol, const Rect& rect);

/// Winding number along a closed counterclockwise polygon.
int count_zeros_polygon(const TransmissionConfig& cfg, int l, Polarization pol, const std::vector<Complex>& vertices);

/// Zeros inside rect by recursive subdivision and Newton polishing.
std::vector<Complex> find_zeros(const TransmissionConfig& cfg, int l, Polarization pol, const Rect& rect,
                                double min_size = 1e-2);

struct TileWinding {
  Rect rect;
  int l = 0;
  Polarization pol = Polarization::TE;
  int winding = 0;
  bool outline = false;  // winding along the whole region boundary (rect is its bounding box)
};

struct RegionReport {
  double C = 0.0;
  bool hypotheses_ok = true;
  std::string label;                 // "outside-hypotheses" when violated
  std::vector<TileWinding> tiles;    // outline per (l, pol); tiles where the outline winding is nonzero
  int total = 0;
  std::vector<Complex> violators;    // located zeros in tiles with nonzero winding
  int retries = 0;                   // tiles re-split after a contour hit a zero
};

/// Tiles {0 < Re <= lambda_max, max(C (Re + 1)^p, im_min) <= Im <= im_max}. Each column's floor
/// is taken at its left end, so the tiles cover the region. With stop_at_first, the
/// scan returns at the first nonzero winding.
std::vector<Rect> region_tiles(const TransmissionConfig& cfg, double C);
RegionReport region_scan(const TransmissionConfig& cfg, double C, bool stop_at_first = false);

/// Zeros with 0 < Re <= lambda_max and im_lo <= Im < C (Re + 1)^p.
std::vector<Complex> strip_zeros(const TransmissionConfig& cfg, double C, double im_lo, int l_max);

/// Smallest C (to tol) on [0, C_hi] with an empty region scan; C_hi must be empty.
double calibrate_C(const TransmissionConfig& cfg, double C_hi, double tol = 0.05);

/// Symbols of the transmission boundary operator at one point.
struct TransmissionSymbols {
  C3Matrix T;       // (c1/mu1)(rho1 - rho2)(I - (rho1 rho2)^{-1} B)
  C3Matrix Ttilde;  // T / w = (rho1 + rho2)^{-1}(I - (rho1 rho2)^{-1} B)
  C3Matrix T1;      // <xi'>^{-1}(rho1 + rho2)(I + (rho1 rho2 - r0)^{-1} B)
  Complex w;        // z^2 (c1/mu1)(eps1 mu1 - eps2 mu2)
  Complex rho1, rho2;
};

TransmissionSymbols transmission_symbols(Complex z, double r0, const Vec3<double>& beta, double eps1, double mu1,
                                         double eps2, double mu2, double c1);

struct SymbolTriple {
  SymbolMatrix T, Ttilde, T1;
};

SymbolTriple symbol_T(const SpectralParameter& sp, const SurfaceChart& chart, const Media& media1,
                      const Media& media2, double c1, double c2);

}  // namespace mdtn
