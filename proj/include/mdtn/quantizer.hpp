#pragma once

// Semiclassical quantization on the flat torus [0, 2 pi)^2 sampled on an n x n grid.
//
//   Op_h(a) f(x) = sum_k a(x, -h k) fhat_k e^{i <k, x>},  fhat_k = n^{-2} sum_y f(y) e^{-i <k, y>}
//
// i.e. the kernel e^{-i <x - y, xi>/h} with xi = -h k on the frequency lattice
// k in [-n/2, n/2)^2. Points are ordered x = (x1, x2) -> i1 n + i2.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "mdtn/numerics.hpp"

namespace mdtn {

struct GridSymbol {
  enum class Dependence { General, XOnly, XiOnly };

  std::string tag;
  Dependence dependence = Dependence::General;
  std::function<Complex(double x1, double x2, double xi1, double xi2)> eval;

  Complex operator()(double x1, double x2, double xi1, double xi2) const { return eval(x1, x2, xi1, xi2); }

  static GridSymbol constant(Complex c);
  static GridSymbol x_only(std::string tag, std::function<Complex(double, double)> f);
  static GridSymbol xi_only(std::string tag, std::function<Complex(double, double)> f);
  static GridSymbol general(std::string tag, std::function<Complex(double, double, double, double)> f);
};

/// Pointwise product, keeping the dependence class when both factors share it.
GridSymbol operator*(const GridSymbol& a, const GridSymbol& b);

struct GridOperator {
  int n = 0;
  double h = 1.0;
  std::string provenance;
  Eigen::MatrixXcd matrix;  // n^2 x n^2
  bool diagonal = false;    // x-only symbols: exact multiplication operator
  // xi-only symbols: matrix = F^* diag(multipliers) F with F the unitary DFT
  bool fourier_multiplier = false;
  Eigen::VectorXcd multipliers;  // a(-h k), k in lattice order j1 n + j2
  bool alias_warning = false;
  double alias_ratio = 0.0;  // symbol mass beyond Nyquist / total, sampled on a doubled lattice

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix * v; }
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& v) const { return matrix.adjoint() * v; }
};

/// Unitary DFT on the n x n grid (n^2 x n^2), columns indexed by lattice order.
Eigen::MatrixXcd unitary_dft(int n);

/// n even, 2 <= n <= 64.
GridOperator quantize(const GridSymbol& a, double h, int n);

double grid_point(int i, int n);

using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

/// Largest singular value: Krylov-accelerated power iteration (Lanczos) on A^* A,
/// at most max_iter products, stopping when the top Ritz value settles to tol.
double operator_norm(const LinearMap& A, const LinearMap& Aadj, int dim, int max_iter = 300, double tol = 1e-13);
/// Exact for diagonal operators and Fourier multipliers, power iteration otherwise.
double operator_norm(const GridOperator& op);

struct CurvePoint {
  double h = 0.0;
  double theta = 0.0;
  double value = 0.0;
};

struct Curve {
  std::vector<CurvePoint> points;
  double slope = 0.0;  // log-log slope in h (composition) or in theta (boundedness)
};

/// ||P (Op(a) Op(b) - Op(ab)) P|| per h, slope in h. P projects onto frequencies at
/// least `guard` steps inside the lattice edge: the discrete torus wraps k = n/2 - 1
/// onto -n/2, and the jump of a across that seam is an aliasing artifact that does
/// not shrink with h. guard = 0 measures the raw defect.
Curve composition_defect(const GridSymbol& a, const GridSymbol& b, const std::vector<double>& hs, int n,
                         int guard = 2);

/// ||Op_h(a_theta)|| per theta at fixed h, slope in theta.
Curve boundedness_check(const std::function<GridSymbol(double theta)>& family, const std::vector<double>& thetas,
                        double h, int n);

}  // namespace mdtn
