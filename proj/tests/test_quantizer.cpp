#include <cmath>

#include "doctest.h"
#include "mdtn/error.hpp"
#include "mdtn/quantizer.hpp"
#include "mdtn/spectral.hpp"
#include "test_support.hpp"

using namespace mdtn;

namespace {

const Complex I(0.0, 1.0);

GridSymbol bump() {
  return GridSymbol::xi_only("bump", [](double a, double b) {
    return std::exp(-((a - 0.3) * (a - 0.3) + (b - 0.2) * (b - 0.2)));
  });
}

GridSymbol trig() {
  return GridSymbol::x_only("trig", [](double a, double b) { return Complex(1.0 + 0.5 * std::cos(a) + 0.3 * std::sin(b)); });
}

double dense_norm(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

std::vector<double> dyadic(int lo, int hi) {
  std::vector<double> hs;
  for (int e = lo; e <= hi; ++e) hs.push_back(std::ldexp(1.0, -e));
  return hs;
}

}  // namespace

TEST_CASE("Op_h(1) is the identity and has norm 1") {
  const GridOperator one = quantize(GridSymbol::constant(1.0), 0.1, 16);
  CHECK(one.diagonal);
  CHECK(one.matrix == Eigen::MatrixXcd::Identity(256, 256));
  CHECK(operator_norm(one) == 1.0);
}

TEST_CASE("x-only symbols quantize to multiplication operators") {
  const GridOperator op = quantize(trig(), 0.05, 8);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      if (i != j) CHECK(op.matrix(i, j) == Complex(0.0));
    }
  }
  CHECK(op.matrix(9, 9) == trig()(grid_point(1, 8), grid_point(1, 8), 0, 0));
}

TEST_CASE("matrix agrees with the double-sum formula") {
  const int n = 8;
  const double h = 0.2;
  const GridSymbol a = GridSymbol::general("g", [](double x1, double x2, double k1, double k2) {
    return std::exp(-(k1 * k1 + 0.5 * k2 * k2)) * Complex(1.0 + 0.3 * std::cos(x1), 0.2 * std::sin(x2 + k1));
  });
  const GridOperator op = quantize(a, h, n);
  testing::Gen gen(3);
  Eigen::VectorXcd f(n * n);
  for (int i = 0; i < n * n; ++i) f[i] = gen.complex();
  const Eigen::VectorXcd got = op.apply(f);
  double worst = 0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const double x1 = grid_point(i1, n), x2 = grid_point(i2, n);
      Complex sum = 0.0;
      for (int k1 = -n / 2; k1 < n / 2; ++k1) {
        for (int k2 = -n / 2; k2 < n / 2; ++k2) {
          Complex fk = 0.0;
          for (int y1 = 0; y1 < n; ++y1) {
            for (int y2 = 0; y2 < n; ++y2) {
              fk += f[y1 * n + y2] * std::exp(-I * (k1 * grid_point(y1, n) + k2 * grid_point(y2, n)));
            }
          }
          // kernel e^{-i <x - y, xi>/h} at xi = -h k
          sum += a(x1, x2, -h * k1, -h * k2) * fk * std::exp(I * (k1 * x1 + k2 * x2));
        }
      }
      worst = std::max(worst, std::abs(sum / static_cast<double>(n * n) - got[i1 * n + i2]));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Fourier multipliers are unitarily conjugated diagonals") {
  const int n = 16;
  const GridOperator op = quantize(bump(), 0.1, n);
  REQUIRE(op.fourier_multiplier);
  const Eigen::MatrixXcd U = unitary_dft(n);
  CHECK((U * U.adjoint() - Eigen::MatrixXcd::Identity(n * n, n * n)).cwiseAbs().maxCoeff() <= 1e-13);
  const Eigen::MatrixXcd rebuilt = U.adjoint() * op.multipliers.asDiagonal() * U;
  CHECK((rebuilt - op.matrix).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("shift-then-filter structure") {
  const int n = 16;
  const double h = 0.1;
  const GridSymbol shift = GridSymbol::x_only("e2", [](double, double x2) { return std::exp(I * x2); });
  const GridOperator op = quantize(shift * bump(), h, n);
  const Eigen::MatrixXcd direct = quantize(shift, h, n).matrix * quantize(bump(), h, n).matrix;
  CHECK((op.matrix - direct).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("Lanczos norm agrees with a dense SVD") {
  const int n = 16;
  const GridSymbol a = GridSymbol::general("g", [](double x1, double x2, double k1, double k2) {
    return std::exp(-(k1 * k1 + k2 * k2)) * Complex(1.0 + 0.5 * std::cos(x1 + x2), 0.3 * std::sin(x1));
  });
  for (const double h : {0.05, 0.2}) {
    const GridOperator op = quantize(a, h, n);
    const double lanczos = operator_norm(op);
    CHECK(std::abs(lanczos - dense_norm(op.matrix)) <= 1e-6 * lanczos);
  }
  // general path on a Fourier multiplier against its exact norm
  const GridOperator m = quantize(bump(), 0.2, n);
  const double via_products = operator_norm([&](const Eigen::VectorXcd& v) { return m.apply(v); },
                                            [&](const Eigen::VectorXcd& v) { return m.apply_adjoint(v); }, n * n);
  CHECK(std::abs(via_products - operator_norm(m)) <= 1e-6);
}

TEST_CASE("composition defect") {
  const int n = 16;
  SUBCASE("Fourier multipliers commute") {
    const GridSymbol other = GridSymbol::xi_only("o", [](double a, double b) { return Complex(std::cos(a), b); });
    for (const auto& p : composition_defect(bump(), other, {0.1, 0.05}, n, 0).points) CHECK(p.value <= 1e-12);
  }
  SUBCASE("left quantization composes exactly with the x-symbol on the left") {
    for (const auto& p : composition_defect(trig(), bump(), {0.1, 0.02}, n).points) CHECK(p.value <= 1e-12);
  }
  SUBCASE("reversed pair is O(h)") {
    const Curve c = composition_defect(bump(), trig(), dyadic(3, 7), n);
    CHECK(c.slope >= 0.8);
    CHECK(c.slope <= 1.2);
    // without the guard band the seam of the torus dominates at small h
    const Curve raw = composition_defect(bump(), trig(), {std::ldexp(1.0, -7)}, n, 0);
    CHECK(raw.points[0].value > 5 * c.points.back().value);
  }
  SUBCASE("theta-degraded pair stays under h theta^{-2}") {
    for (const double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
      const double theta = std::sqrt(h);
      const GridSymbol rho = GridSymbol::xi_only("rho", [theta](double a, double b) {
        return rho_of(a * a + b * b, Complex(1.0, theta), 1.0);
      });
      const double d = composition_defect(rho, trig(), {h}, n).points[0].value;
      CHECK(d <= 3.0 * h / (theta * theta));
    }
  }
}

TEST_CASE("adjoint of the conjugate symbol differs by O(h)") {
  const int n = 16;
  const GridSymbol a = GridSymbol::general("g", [](double x1, double x2, double k1, double k2) {
    return std::exp(-((k1 - 0.3) * (k1 - 0.3) + k2 * k2)) * (1.0 + 0.5 * std::cos(x1) + 0.3 * std::sin(x2));
  });
  const GridSymbol ac{"conj", a.dependence, [a](double x1, double x2, double k1, double k2) {
                        return std::conj(a(x1, x2, k1, k2));
                      }};
  const Eigen::MatrixXcd U = unitary_dft(n);
  Eigen::VectorXcd mask = Eigen::VectorXcd::Ones(n * n);
  for (int j1 = 0; j1 < n; ++j1) {
    for (int j2 = 0; j2 < n; ++j2) {
      if (j1 < 2 || j1 >= n - 2 || j2 < 2 || j2 >= n - 2) mask[j1 * n + j2] = 0.0;
    }
  }
  const Eigen::MatrixXcd P = U.adjoint() * mask.asDiagonal() * U;
  std::vector<double> hs = dyadic(3, 7), ds;
  for (const double h : hs) {
    const Eigen::MatrixXcd D = P * (quantize(ac, h, n).matrix.adjoint() - quantize(a, h, n).matrix) * P;
    ds.push_back(dense_norm(D));
  }
  const double slope = loglog_slope(hs, ds);
  CHECK(slope >= 0.8);
  CHECK(slope <= 1.2);
}

TEST_CASE("boundedness in theta") {
  const int n = 16;
  const double h = 1.0 / 6;  // lattice reaches |xi| = 4/3, past the glancing circle
  auto inv_rho = [](double theta) {
    return GridSymbol::xi_only("rho^-1", [theta](double a, double b) {
      return 1.0 / rho_of(a * a + b * b, Complex(1.0, theta), 1.0);
    });
  };
  const Curve c = boundedness_check(inv_rho, {0.05, 0.1, 0.2, 0.4, 0.8}, h, n);
  CHECK(c.slope <= -0.35);
  CHECK(c.slope >= -0.65);
  // rho restricted to supp eta: bounded uniformly in h
  auto rho_eta = [](double theta) {
    return GridSymbol::xi_only("rho eta", [theta](double a, double b) {
      const double r0 = a * a + b * b;
      return cutoff_eta(r0, 1.0) * rho_of(r0, Complex(1.0, theta), 1.0);
    });
  };
  std::vector<double> norms;
  for (const double hh : {1.0 / 4, 1.0 / 6, 1.0 / 8}) norms.push_back(boundedness_check(rho_eta, {0.3}, hh, n).points[0].value);
  CHECK(*std::max_element(norms.begin(), norms.end()) <= 1.5 * *std::min_element(norms.begin(), norms.end()));
}

TEST_CASE("alias warning and grid validation") {
  CHECK(quantize(bump(), 0.5, 16).alias_warning == false);
  const GridSymbol flat = GridSymbol::xi_only("flat", [](double, double) { return Complex(1.0); });
  CHECK(quantize(flat, 0.1, 8).alias_warning);
  CHECK_THROWS_AS(quantize(bump(), 0.1, 15), Error);
  CHECK_THROWS_AS(quantize(bump(), 0.1, 66), Error);
  CHECK_THROWS_AS(quantize(bump(), 0.0, 16), Error);
}
