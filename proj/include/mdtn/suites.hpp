#pragma once

// Verification suites behind the command-line tool. Each returns a table of
// raw measurements and a list of named checks against tolerances.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mdtn/geometry.hpp"
#include "mdtn/transmission.hpp"

namespace mdtn {

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Passes when lo <= value <= hi.
struct Check {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass() const { return lo <= value && value <= hi; }
};

struct SuiteReport {
  Table table;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool passed() const;
  /// First failing check, or nullptr.
  const Check* first_failure() const;
};

// ---------------------------------------------------------------------------

struct IdentityOptions {
  SurfaceChart chart = SurfaceChart::sphere(1.0);
  Media media;
  int points = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  int gamma_order = 4;
  // test hook: added along nu to the first tangential column of gamma_1
  double gamma_perturbation = 0.0;
  int threads = 1;
};

/// Relative residuals at random (x', xi', theta) of: tangency of gamma zeta_k,
/// tangency of beta, B^2 = r0 B, the boundary value of the cross system with
/// zero sources, the inversion identity of the transmission symbols, and
/// T1 Ttilde = <xi'>^{-1}. The second medium is (2 eps, mu) at the base point.
SuiteReport identity_suite(const IdentityOptions& opt);

struct EikonalSuiteOptions {
  SurfaceChart chart = SurfaceChart::sphere(1.0);
  Media media;
  std::vector<int> orders{3, 4, 5, 6, 7, 8};
  double x1_lo = 1e-4, x1_hi = 1e-1;
  int samples = 9;
  double x2 = 1.0, x3 = 0.2, xi2 = 0.8, xi3 = 1.2;
  Complex z{1.0, 0.5};
  double h = 0.01;
  double slope_margin = 0.3;
  double flat_tol = 1e-13;
  int threads = 1;
};

/// Residual of the eikonal equation against x1 (50-digit arithmetic) and its
/// log-log slope per order, plus the plane-chart residual in double precision.
SuiteReport eikonal_suite(const EikonalSuiteOptions& opt);

struct ResidualSuiteOptions {
  SurfaceChart chart = SurfaceChart::sphere(1.0);
  Media media;
  int N = 4;
  double x2 = 1.0, x3 = 0.2, xi2 = 0.8, xi3 = 1.2;
  Complex z{1.0, 0.5};
  double h = 0.01;
  double tol = 1e-10;
  double boundary_tol = 1e-12;
};

/// Coefficients of the transport hierarchy, nu x A_{j,0} and the normalization.
SuiteReport residual_suite(const ResidualSuiteOptions& opt);

struct DtnSuiteOptions {
  double eps = 1.0, mu = 1.0, radius = 1.0;
  double theta = 0.5;
  std::vector<double> hs{1.0 / 40, 1.0 / 80, 1.0 / 160, 1.0 / 320, 1.0 / 640, 1.0 / 1280};
  double min_slope0 = 0.9, min_slope1 = 1.7;
  int threads = 1;
};

/// Per-mode errors of the order-0 and order-1 boundary symbols at lambda =
/// (1 + i theta)/h and the mode l nearest 1/(2h), with fitted slopes per
/// polarization.
SuiteReport dtn_suite(const DtnSuiteOptions& opt);

struct ImpedanceBoundOptions {
  double eps = 1.0, mu = 1.0, radius = 1.0;
  double h = 0.01;
  int l_max = 200;
  std::vector<double> thetas{0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0};
  double max_variation = 10.0;
  int threads = 1;
};

/// |Z_l| theta^{1/2} / <h l> over l <= l_max and the theta grid; the check is
/// on max/min of the per-theta maxima.
SuiteReport impedance_bound_suite(const ImpedanceBoundOptions& opt);

enum class TeScanMode { Informational, Certify, Calibrate };

struct TeScanOptions {
  TransmissionConfig cfg;
  TeScanMode mode = TeScanMode::Certify;
  double C_hi = 2.0;       // calibration bracket
  double C_tol = 0.05;
  int strip_l_max = 3;     // modes searched for roots in the near-real strip
};

/// Informational: count roots in the region for cfg.C and always pass.
/// Certify: pass iff the region for cfg.C is root-free.
/// Calibrate: find C, certify it, and require a located root below the region.
SuiteReport te_scan_suite(const TeScanOptions& opt);

struct QuantizerSuiteOptions {
  int n = 32;
  std::vector<double> hs{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
  std::vector<double> thetas{0.02, 0.04, 0.08, 0.16, 0.32, 0.5};
  double bound_h = 1.0 / 12;
  double slope_target = 1.0, slope_window = 0.2;
  double exponent_target = 0.5, exponent_window = 0.15;
};

/// Composition defect slope in h, the norm of Op_h(1), and the growth
/// exponent of the rho^{-1} quantization in 1/theta.
SuiteReport quantizer_suite(const QuantizerSuiteOptions& opt);

}  // namespace mdtn
