#include <boost/multiprecision/cpp_complex.hpp>

#include "doctest.h"
#include "mdtn/jet.hpp"
#include "mdtn/numerics.hpp"
#include "test_support.hpp"

using namespace mdtn;
using mdtn::testing::Gen;
using CJet = Jet<Complex>;

TEST_CASE("sqrt_upper picks the upper root") {
  CHECK(std::abs(sqrt_upper(Complex(-1.0, 0.0)) - kI) < 1e-15);
  CHECK(std::abs(sqrt_upper(Complex(-4.0, -1e-30)) - Complex(0, 2)) < 1e-14);
  Gen g(1);
  for (int i = 0; i < 10000; ++i) {
    Complex w = g.complex(10.0);
    if (w.imag() == 0.0) continue;
    Complex s = sqrt_upper(w);
    CHECK(s.imag() > 0.0);
    CHECK(std::abs(s * s - w) <= 1e-14 * std::abs(w));
  }
}

TEST_CASE("sqrt_upper rejects the non-negative real axis") {
  CHECK_THROWS_AS(sqrt_upper(Complex(2.0, 0.0)), Error);
  CHECK_THROWS_AS(sqrt_upper(Complex(0.0, 0.0)), Error);
  try {
    sqrt_upper(Complex(1.0, 0.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousBranch);
  }
}

TEST_CASE("double cross identity") {
  Gen g(2);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    C3Vector a = g.c3(), b = g.c3(), c = g.c3();
    C3Vector lhs = cross(a, cross(b, c));
    C3Vector rhs = dot(a, c) * b - dot(a, b) * c;
    worst = std::max(worst, norm(lhs - rhs) / (norm(a) * norm(b) * norm(c)));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("cross_matrix and adjugate") {
  Gen g(3);
  C3Vector a = g.c3(), w = g.c3();
  CHECK(norm(cross_matrix(a, Complex{}) * w - cross(a, w)) < 1e-15);
  C3Matrix m;
  for (auto& x : m.m) x = g.complex();
  C3Matrix p = m * adjugate(m);
  CHECK(max_abs(p - determinant(m) * identity3()) < 1e-14);
}

TEST_CASE("solve_dense agrees with a manufactured solution") {
  Gen g(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 6;
    std::vector<Complex> a(n * n), x(n), b(n, Complex{});
    for (auto& v : a) v = g.complex();
    for (auto& v : x) v = g.complex();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b[r] += a[r * n + c] * x[c];
    auto res = solve_dense(a, b, n);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(res.x[i] - x[i]));
    CHECK(err <= 1e-10 * res.pivot_ratio);
  }
}

TEST_CASE("solve_dense flags singular systems") {
  std::vector<Complex> a = {1.0, 2.0, 2.0, 4.0};
  CHECK_THROWS_AS(solve_dense(a, {1.0, 1.0}, 2), Error);
}

TEST_CASE("jet geometric series") {
  CJet x = CJet::variable(1, 3, 0, 0.0);
  CJet inv = inverse(x + Complex(1.0));
  CHECK(std::abs(inv.coeff({0, 0, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(inv.coeff({1, 0, 0}) + 1.0) < 1e-15);
  CHECK(std::abs(inv.coeff({2, 0, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(inv.coeff({3, 0, 0}) + 1.0) < 1e-15);
  CHECK(inv.coeff({4, 0, 0}) == Complex{});
}

TEST_CASE("sqrt_upper of a constant jet") {
  CJet m(1, 3, Complex(-1.0, 0.0));
  CJet s = sqrt_upper(m);
  CHECK(std::abs(s.value() - kI) < 1e-15);
  CHECK(s.max_abs() == doctest::Approx(1.0));
}

TEST_CASE("jet errors") {
  CJet z(2, 4);
  CHECK_THROWS_AS(inverse(z), Error);
  CHECK_THROWS_AS(sqrt_upper(z), Error);
  CJet c(2, 0, 1.0);
  try {
    (void)c.derivative(0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderUnderflow);
  }
}

TEST_CASE("jet ring axioms hold exactly on integer jets") {
  // small-integer coefficients keep every sum and product exact in double
  Gen g(5);
  auto int_jet = [&](int nv, int ord) {
    CJet j(nv, ord);
    for (std::size_t i = 0; i < j.size(); ++i) j[i] = Complex(g.integer(-8, 8), g.integer(-8, 8));
    return j;
  };
  for (int trial = 0; trial < 40; ++trial) {
    const int nv = g.integer(1, 3);
    const int ord = g.integer(0, 6);
    CJet a = int_jet(nv, ord), b = int_jet(nv, ord), c = int_jet(nv, ord);
    CHECK(mdtn::testing::jet_diff(a * b, b * a) == 0.0);
    CHECK(mdtn::testing::jet_diff((a * b) * c, a * (b * c)) == 0.0);
    CHECK(mdtn::testing::jet_diff(a * (b + c), a * b + a * c) == 0.0);
  }
}

TEST_CASE("jet inverse and square root satisfy their defining relations") {
  Gen g(6);
  for (int trial = 0; trial < 40; ++trial) {
    const int nv = g.integer(1, 3);
    const int ord = g.integer(0, 8);
    CJet a = g.jet(nv, ord, 0.3);
    a[0] = Complex(1.0, 0.5) + g.complex(0.2);
    CJet one(nv, ord, 1.0);
    CHECK(mdtn::testing::jet_diff(a * inverse(a), one) <= 1e-13);
    CJet s = sqrt_upper(a);
    CHECK(s.value().imag() > 0.0);
    CHECK(mdtn::testing::jet_diff(s * s, a) <= 1e-13);
  }
}

TEST_CASE("jet derivative and evaluation match a polynomial") {
  // p = (1 + 2u + 3v)^2 in two variables
  CJet u = CJet::variable(2, 5, 0, 0.0), v = CJet::variable(2, 5, 1, 0.0);
  CJet q = Complex(1.0) + Complex(2.0) * u + Complex(3.0) * v;
  CJet p = q * q;
  CJet pu = p.derivative(0);
  CHECK(pu.order() == 4);
  const std::array<Complex, 3> d{0.3, -0.7, 0.0};
  const Complex qd = 1.0 + 2.0 * d[0] + 3.0 * d[1];
  CHECK(std::abs(p.evaluate(d) - qd * qd) < 1e-14);
  CHECK(std::abs(pu.evaluate(d) - 4.0 * qd) < 1e-14);
}

TEST_CASE("jet exp, sin, cos against scalar Taylor data") {
  const Complex x0(0.4, 0.2);
  CJet x = CJet::variable(1, 10, 0, x0);
  CJet e = exp(x), s = sin(x), c = cos(x);
  const std::array<Complex, 3> d{0.01, 0.0, 0.0};
  CHECK(std::abs(e.evaluate(d) - std::exp(x0 + d[0])) < 1e-15);
  CHECK(std::abs(s.evaluate(d) - std::sin(x0 + d[0])) < 1e-15);
  CHECK(std::abs(c.evaluate(d) - std::cos(x0 + d[0])) < 1e-15);
  CJet one(1, 10, 1.0);
  CHECK(mdtn::testing::jet_diff(s * s + c * c, one) < 1e-14);
}

TEST_CASE("lift and slice in the leading variable") {
  Gen g(7);
  Jet<Complex> a = g.jet(2, 5);
  auto lifted = lift_leading(a, 2, 7);
  auto back = slice_leading(lifted, 2);
  CHECK(back.order() == 5);
  CHECK(mdtn::testing::jet_diff(back, a) == 0.0);
}

TEST_CASE("multiprecision jets reach below double roundoff") {
  using HC = boost::multiprecision::cpp_complex_50;
  Jet<HC> x = Jet<HC>::variable(1, 6, 0, HC(1.0, 0.5));
  Jet<HC> r = x * inverse(x);
  CHECK(static_cast<double>(abs(r.value() - HC(1))) < 1e-40);
  CHECK(static_cast<double>(abs(r.coeff({3, 0, 0}))) < 1e-40);
}
