#include <cmath>
#include <vector>

#include "doctest.h"
#include "mdtn/eikonal.hpp"
#include "test_support.hpp"

using namespace mdtn;

namespace {

SpectralParameter sp_at(Complex z, double h = 0.01) { return spectral_from_z(z, h); }

// Least-squares slope of log|r| against log x1.
template <class F>
double loglog_slope(F residual, double lo, double hi, int n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    const double lx = std::log(x), ly = std::log(residual(x));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Taylor coefficients of f around 0 from the trapezoid rule on a circle.
template <class F>
std::vector<Complex> cauchy_coefficients(F f, double radius, int count, int nodes = 128) {
  std::vector<Complex> c(static_cast<std::size_t>(count), Complex(0));
  for (int j = 0; j < nodes; ++j) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * j / nodes);
    const Complex v = f(radius * w);
    Complex wk(1);
    for (int k = 0; k < count; ++k) {
      c[static_cast<std::size_t>(k)] += v / wk;
      wk *= radius * w;
    }
  }
  for (auto& x : c) x /= double(nodes);
  return c;
}

Complex upper_root(Complex a) {
  Complex r = std::sqrt(a);
  return r.imag() < 0 ? -r : r;
}

}  // namespace

TEST_CASE("plane chart with constant media: phase is exactly linear") {
  const auto ps = eikonal_coeffs<Complex>(SurfaceChart::plane(), Media::constant(2.0, 1.5), sp_at({1.0, 0.3}), 0.2,
                                          -0.4, 0.7, -1.1, 6);
  REQUIRE(ps.phi.size() == 7);
  for (std::size_t k = 2; k < ps.phi.size(); ++k) CHECK(ps.phi[k].max_abs() == 0.0);
  CHECK(std::abs(ps.phi[1].value() - ps.rho.value()) == 0.0);
  CHECK(ps.phi[0].coeff({1, 0, 0}) == Complex(-0.7));
  CHECK(ps.phi[0].coeff({0, 1, 0}) == Complex(1.1));
  for (double x1 : {1e-4, 1e-3, 1e-2, 0.05}) {
    CHECK(std::abs(eikonal_residual(ps, x1, Media::constant(2.0, 1.5))) <= 1e-13);
  }
}

TEST_CASE("sphere: series coefficients of the eikonal residual vanish") {
  const Media media = Media::constant(2.0, 1.5);
  const auto ps = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), media, sp_at({1.0, 0.5}), 1.1, 0.4, 0.6, 1.3, 6);
  for (int k = 0; k < 6; ++k) CHECK(eikonal_coefficient_residual(ps, k).max_abs() <= 1e-11);
}

TEST_CASE("sphere equator: phase coefficients match a one-dimensional radial oracle") {
  // On the equator with xi' along the azimuth, symmetry gives
  //   phi(x1) = -xi3 x3 + int_0^x1 sqrt(z^2 eps mu - xi3^2 / (R - t)^2) dt
  const double R = 1.3, xi3 = 1.7;
  const Complex z(1.0, 0.5);
  const double em = 2.0 * 1.5;
  const auto ps = eikonal_coeffs<Complex>(SurfaceChart::sphere(R), Media::constant(2.0, 1.5), sp_at(z), M_PI / 2, 0.3,
                                          0.0, xi3, 7);
  auto integrand = [&](Complex t) { return upper_root(z * z * em - xi3 * xi3 / ((R - t) * (R - t))); };
  const auto g = cauchy_coefficients(integrand, 0.2, 8);
  for (int k = 1; k <= 7; ++k) {
    const Complex expect = g[static_cast<std::size_t>(k - 1)] / double(k);
    const Complex got = ps.phi[static_cast<std::size_t>(k)].value();
    CHECK(std::abs(got - expect) <= 1e-11 * std::max(1.0, std::abs(expect)));
    if (k < 7) {
      CHECK(std::abs(ps.phi[static_cast<std::size_t>(k)].coeff({1, 0, 0})) <= 1e-11);
      CHECK(std::abs(ps.phi[static_cast<std::size_t>(k)].coeff({0, 1, 0})) <= 1e-11);
    }
  }
}

TEST_CASE("residual order: two-point and least-squares slopes") {
  const Media media = Media::constant(1.0, 1.0);
  const SpectralParameter sp = sp_at({1.0, 0.5});
  SUBCASE("double precision, N = 4 between 1e-2 and 1e-3") {
    const auto ps = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), media, sp, 1.0, 0.2, 0.8, 1.2, 4);
    const double r2 = std::abs(eikonal_residual(ps, 1e-2, media));
    const double r3 = std::abs(eikonal_residual(ps, 1e-3, media));
    CHECK(std::log10(r2 / r3) >= 3.7);
  }
  SUBCASE("N = 6 beats N = 4 at 1e-2") {
    const auto p4 = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), media, sp, 1.0, 0.2, 0.8, 1.2, 4);
    const auto p6 = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), media, sp, 1.0, 0.2, 0.8, 1.2, 6);
    CHECK(std::abs(eikonal_residual(p6, 1e-2, media)) < std::abs(eikonal_residual(p4, 1e-2, media)));
  }
  SUBCASE("50-digit arithmetic, sphere and ellipsoid, N = 3..8") {
    for (const auto& chart : {SurfaceChart::sphere(1.0), SurfaceChart::ellipsoid(1.0, 1.3, 0.8)}) {
      for (int N = 3; N <= 8; N += 5) {
        const auto ps = eikonal_coeffs<HpComplex>(chart, media, sp, 1.0, 0.2, 0.8, 1.2, N);
        const double top = std::min(0.1, ps.retained_limit());
        auto res = [&](double x1) { return static_cast<double>(abs(eikonal_residual(ps, HpReal(x1), media))); };
        CHECK(loglog_slope(res, 1e-4, top, 9) >= N - 0.3);
      }
    }
  }
}

TEST_CASE("Im phi stays above x1 Im rho / 2 on the retained region") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Complex z(gen.uniform(0.5, 2.0), gen.log_uniform(0.01, 1.0));
    const auto ps = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), Media::constant(1.0, 1.0), sp_at(z),
                                            gen.uniform(0.5, 2.6), gen.uniform(-3, 3), gen.uniform(-2, 2),
                                            gen.uniform(-2, 2), 5);
    CHECK(im_phi_condition(ps, 200));
    CHECK(ps.delta <= 0.1);
  }
}

TEST_CASE("retained region is enforced") {
  const auto ps = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), Media::constant(1.0, 1.0), sp_at({1.0, 0.5}),
                                          1.0, 0.0, 0.3, 0.3, 4);
  CHECK_THROWS_AS(eikonal_residual(ps, 0.0, Media::constant(1.0, 1.0)), Error);
  CHECK_THROWS_AS(eikonal_residual(ps, 2.0 * ps.retained_limit(), Media::constant(1.0, 1.0)), Error);
}

TEST_CASE("flattened phase solves the eikonal equation without media") {
  EikonalOptions opt;
  opt.flattened = true;
  const Media media = Media::constant(3.0, 2.0);
  const auto ps = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), media, sp_at({1.0, 0.5}), 1.0, 0.2, 0.8, 1.2, 5,
                                          opt);
  CHECK(std::abs(ps.rho.value() - Complex(0, std::sqrt(std::real(dot(ps.beta, ps.beta).value()))) ) <= 1e-14);
  const double r2 = std::abs(eikonal_residual(ps, 1e-2, media));
  const double r3 = std::abs(eikonal_residual(ps, 2e-3, media));
  CHECK(std::log(r2 / r3) / std::log(5.0) >= 4.7);
  const auto flat = eikonal_coeffs<Complex>(SurfaceChart::plane(), media, sp_at({1.0, 0.5}), 0.0, 0.0, 0.8, 1.2, 5,
                                            opt);
  CHECK(std::abs(eikonal_residual(flat, 1e-2, media)) <= 1e-13);
}

TEST_CASE("branch stability along a theta sweep") {
  const Media media = Media::constant(1.0, 1.0);
  const int n = 60;
  std::vector<std::vector<Complex>> vals;
  for (int i = 0; i < n; ++i) {
    const double theta = std::exp(std::log(1.0) + (std::log(1e-2) - std::log(1.0)) * i / (n - 1));
    const SpectralParameter sp = sp_at({1.0, theta});
    const auto ps = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), media, sp, 1.0, 0.2, 0.3, 0.9, 5);
    std::vector<Complex> row;
    for (const auto& f : ps.phi) row.push_back(f.value());
    vals.push_back(row);
  }
  for (std::size_t k = 1; k < vals[0].size(); ++k) {
    for (int i = 1; i + 1 < n - 1; ++i) {
      const double d = std::abs(vals[i + 1][k] - vals[i][k]);
      const double local = std::max(std::abs(vals[i][k] - vals[i - 1][k]), std::abs(vals[i + 2][k] - vals[i + 1][k]));
      CHECK(d <= 10.0 * local + 1e-14);
    }
  }
}

TEST_CASE("rotating the sphere chart about its axis leaves the coefficients unchanged") {
  SurfaceChart rotated = SurfaceChart::sphere(1.0);
  rotated.rotation_z = 0.7;
  const Media media = Media::constant(2.0, 1.0);
  const auto a = eikonal_coeffs<Complex>(SurfaceChart::sphere(1.0), media, sp_at({1.0, 0.4}), 1.2, 0.9, 0.5, 0.8, 5);
  const auto b = eikonal_coeffs<Complex>(rotated, media, sp_at({1.0, 0.4}), 1.2, 0.9 - 0.7, 0.5, 0.8, 5);
  for (std::size_t k = 0; k < a.phi.size(); ++k) CHECK(testing::jet_diff(a.phi[k], b.phi[k]) <= 1e-10);
}
