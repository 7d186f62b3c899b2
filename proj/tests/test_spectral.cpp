#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mdtn/spectral.hpp"
#include "test_support.hpp"

using namespace mdtn;
using mdtn::testing::Gen;

namespace {

std::vector<Complex> eigenvalues_sorted(const C3Matrix& m) {
  Eigen::Matrix3cd a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = m(r, c);
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(a);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + 3);
  std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  return ev;
}

}  // namespace

TEST_CASE("split_lambda examples") {
  auto a = split_lambda({10, 2});
  CHECK(a.h == doctest::Approx(0.1));
  CHECK(std::abs(a.z - Complex(1, 0.2)) < 1e-15);
  CHECK(a.theta == doctest::Approx(0.2));
  auto b = split_lambda({2, 5});
  CHECK(b.h == doctest::Approx(0.2));
  CHECK(std::abs(b.z - Complex(0.4, 1)) < 1e-15);
  CHECK(b.theta == doctest::Approx(1.0));
  auto c = split_lambda({-8, 4});
  CHECK(c.h == doctest::Approx(0.125));
  CHECK(std::abs(c.z - Complex(-1, 0.5)) < 1e-15);
  CHECK(c.theta == doctest::Approx(0.5));
  try {
    (void)split_lambda({3, 0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RealFrequency);
  }
}

TEST_CASE("split_lambda invariants on random frequencies") {
  Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    Complex lam(g.uniform(-100, 100), g.uniform(-100, 100));
    auto sp = split_lambda(lam);
    CHECK(std::max(std::abs(sp.z.real()), std::abs(sp.z.imag())) == doctest::Approx(1.0));
    CHECK(std::abs(sp.z - sp.h * lam) < 1e-14);
    CHECK(sp.theta <= 1.0);
  }
}

TEST_CASE("rho examples and defining equation") {
  CHECK(std::abs(rho_of(0.0, kI, 1.0) - kI) < 1e-15);
  // r0 = 2, z^2 eps0 mu0 = -1
  CHECK(std::abs(rho_of(2.0, kI, 1.0) - Complex(0, std::sqrt(3.0))) < 1e-15);
  Gen g(22);
  for (int i = 0; i < 100000; ++i) {
    const double theta = g.log_uniform(1e-3, 1.0);
    const Complex z(g.uniform(0, 1) < 0.5 ? 1.0 : -1.0, theta);
    const double r0 = g.log_uniform(1e-6, 1e6), em = g.uniform(0.1, 10);
    const Complex r = rho_of(r0, z, em);
    CHECK(r.imag() > 0.0);
    CHECK(std::abs(r * r + r0 - z * z * em) <= 1e-13 * (1.0 + r0 + em));
  }
}

TEST_CASE("calB examples") {
  CHECK(max_abs(calB({0, 0, 0})) == 0.0);
  const C3Matrix b = calB({1, 2, 0});
  CHECK(max_abs(b * b - 5.0 * b) < 1e-14);
  Gen g(23);
  for (int i = 0; i < 100; ++i) {
    Vec3<double> nu = g.r3(), w = g.r3();
    nu = (1.0 / std::sqrt(dot(nu, nu))) * nu;
    Vec3<double> beta = w - dot(w, nu) * nu;
    CHECK(norm(calB(beta) * to_complex(nu)) < 1e-14);
  }
}

TEST_CASE("symbol m eigenstructure") {
  // z = i, eps0 = mu0 = 1, r0 = 3
  const Vec3<double> beta{std::sqrt(3.0), 0, 0};
  const Complex rho = rho_of(3.0, kI, 1.0);
  CHECK(std::abs(rho - Complex(0, 2)) < 1e-15);
  auto ev = eigenvalues_sorted(m_matrix(kI, rho, 1.0, beta));
  CHECK(std::abs(ev[0] - 0.5) < 1e-13);
  CHECK(std::abs(ev[1] - 2.0) < 1e-13);
  CHECK(std::abs(ev[2] - 2.0) < 1e-13);

  // zero covector: m = sqrt(eps0/mu0) I
  const Complex z(0.8, 0.3);
  const double eps0 = 2.0, mu0 = 3.0;
  CHECK(max_abs(m_matrix(z, rho_of(0.0, z, eps0 * mu0), mu0, {0, 0, 0}) - std::sqrt(eps0 / mu0) * identity3()) < 1e-14);

  Gen g(24);
  for (int i = 0; i < 200; ++i) {
    const Vec3<double> b = g.r3(3.0);
    const double r0 = dot(b, b);
    const double e0 = g.uniform(0.5, 4), m0 = g.uniform(0.5, 4);
    const Complex zz(g.uniform(-1, 1), g.uniform(0.05, 1));
    const Complex r = rho_of(r0, zz, e0 * m0);
    const C3Matrix m = m_matrix(zz, r, m0, b);
    const Complex t = r / (zz * m0), l = zz * e0 / r;
    CHECK(std::abs(determinant(m) - t * t * l) <= 1e-12 * std::abs(t * t * l));
    CHECK(norm(m * to_complex(b) - l * to_complex(b)) <= 1e-12 * std::abs(l) * std::sqrt(r0));
  }
}

TEST_CASE("symbol m0") {
  const C3Matrix m0 = m0_matrix(1.0, 1.0, {1, 0, 0});
  C3Matrix expect = kI * identity3();
  expect(0, 0) = 0.0;
  CHECK(max_abs(m0 - expect) < 1e-15);
  CHECK(norm(m0_matrix({0.3, 0.7}, 2.0, {1, 2, 3}) * C3Vector{1, 2, 3}) < 1e-14);
  try {
    (void)m0_matrix(1.0, 1.0, {0, 0, 0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroFrequencyCovector);
  }
}

TEST_CASE("m - m0 decays like r0^{-1/2}") {
  const Complex z(1.0, 0.3);
  auto diff = [&](double r0) {
    const Vec3<double> beta{std::sqrt(r0), 0, 0};
    return max_abs(m_matrix(z, rho_of(r0, z, 2.0), 1.5, beta) - m0_matrix(z, 1.5, beta));
  };
  const double slope = std::log(diff(1e6) / diff(1e2)) / std::log(1e4);
  CHECK(slope <= -0.4);
}

TEST_CASE("cutoffs") {
  const double C0 = 10.0;
  CHECK(cutoff_eta(C0 / 2, C0) == 1.0);
  CHECK(cutoff_eta(3 * C0, C0) == 0.0);
  const double mid = cutoff_eta(1.5 * C0, C0);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  // the exp-based profile is symmetric about the midpoint
  CHECK(mid == doctest::Approx(0.5));
  double prev = 1.0;
  for (double r = C0; r <= 2 * C0; r += 0.01) {
    const double v = cutoff_eta(r, C0);
    CHECK(v <= prev);
    prev = v;
    const double fd = (cutoff_eta(r + 1e-6, C0) - cutoff_eta(r - 1e-6, C0)) / 2e-6;
    CHECK(cutoff_eta_derivative(r, C0) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
  }
  CHECK(cutoff_chi(0.0, 2.0, 0.1) == 1.0);
  CHECK(cutoff_chi(0.3, 1.0, 0.1) == 0.0);
  const double c = cutoff_chi(1.5 * 0.1 * 0.125, 0.5, 0.1);
  CHECK(c > 0.0);
  CHECK(c < 1.0);
}

TEST_CASE("bounds on the support of eta do not drift with theta") {
  const double C0 = 10.0;
  std::vector<double> c_im, c_lo, c_hi, c_imp;
  for (double theta : {0.01, 0.03, 0.1}) {
    const Complex z(1.0, theta);
    double im_min = 1e300, lo = 1e300, hi = 0, imp = 0;
    for (double r0 = 0.0; r0 <= 2 * C0; r0 += 1e-4) {
      const Complex r = rho_of(r0, z, 1.0);
      im_min = std::min(im_min, r.imag() / theta);
      lo = std::min(lo, std::abs(r) / std::sqrt(theta));
      hi = std::max(hi, std::abs(r));
      imp = std::max(imp, std::abs(z / r) * std::sqrt(theta));
    }
    c_im.push_back(im_min);
    c_lo.push_back(lo);
    c_hi.push_back(hi);
    c_imp.push_back(imp);
  }
  for (const auto* v : {&c_im, &c_lo, &c_hi, &c_imp}) {
    const auto [mn, mx] = std::minmax_element(v->begin(), v->end());
    CHECK(*mn > 0.0);
    CHECK(*mx / *mn < 2.0);
  }
}

TEST_CASE("symbol_m follows mu scaling through mu0 and rho only") {
  const auto sp = split_lambda({12, 3});
  const auto chart = SurfaceChart::sphere(1.3);
  const auto base = symbol_m(sp, chart, Media::constant(2.0, 1.0));
  const auto scaled = symbol_m(sp, chart, Media::constant(2.0, 4.0));
  CHECK(base.depends_on_mu);
  CHECK(!symbol_m0(sp, chart, Media::constant(1, 1)).depends_on_eps);
  const double x2 = 1.0, x3 = 0.4, xi2 = 0.7, xi3 = -0.2;
  const auto cd = covector_data(chart, x2, x3, xi2, xi3);
  const Complex r1 = rho_of(cd.r0, sp.z, 2.0), r4 = rho_of(cd.r0, sp.z, 8.0);
  CHECK(max_abs(base(x2, x3, xi2, xi3) - m_matrix(sp.z, r1, 1.0, cd.beta)) < 1e-14);
  CHECK(max_abs(scaled(x2, x3, xi2, xi3) - m_matrix(sp.z, r4, 4.0, cd.beta)) < 1e-14);
  auto ev = eigenvalues_sorted(scaled(x2, x3, xi2, xi3));
  const Complex te = r4 / (sp.z * 4.0);
  CHECK(std::min(std::abs(ev[0] - te), std::min(std::abs(ev[1] - te), std::abs(ev[2] - te))) < 1e-12);
}
