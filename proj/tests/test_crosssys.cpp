#include "crosssys_cases.hpp"
#include "doctest.h"

using namespace mdtn;
using namespace mdtn::testing;

namespace {
double rel(const C3Vector& x, const C3Vector& y) { return norm(x - y) / std::max(norm(x), norm(y) + 1e-300); }
}  // namespace

TEST_CASE("homogeneous system has the zero solution") {
  Gen gen(31);
  auto in = random_cross_input(gen);
  in.asharp = {};
  in.bsharp = {};
  in.g = {};
  auto s = solve_cross_system(in);
  CHECK(norm(s.a) == 0.0);
  CHECK(norm(s.b) == 0.0);
}

TEST_CASE("zero sources reproduce the boundary-value formula for nu x b") {
  Gen gen(32);
  for (int i = 0; i < 200; ++i) {
    auto in = random_cross_input(gen, 0.1, 10.0);
    in.asharp = {};
    in.bsharp = {};
    auto s = solve_cross_system(in);
    const C3Vector nu = to_complex(in.nu), beta = to_complex(in.beta);
    const C3Vector nxg = cross(nu, in.g);
    const C3Vector expect = (1.0 / (in.z * in.mu0)) * (in.rho * nxg + (dot(beta, nxg) / in.rho) * beta);
    CHECK(rel(s.nu_cross_b, expect) <= 1e-13);
    const C3Vector a00 = (dot(nu, cross(beta, in.g)) / in.rho) * nu - nxg;
    CHECK(rel(s.a, a00) <= 1e-13);
  }
}

TEST_CASE("random admissible inputs: residuals and oracle agreement") {
  Gen gen(33);
  double worst_res = 0.0, worst_or = 0.0, worst_nxb = 0.0;
  for (int i = 0; i < 2000; ++i) {
    auto in = random_cross_input(gen);
    auto s = solve_cross_system(in);
    const auto r = cross_residuals(in, s);
    worst_res = std::max(worst_res, r.system());
    worst_nxb = std::max(worst_nxb, r.nxb);
    auto o = cross_oracle(in);
    worst_or = std::max(worst_or, std::max(rel(s.a, o.a), rel(s.b, o.b)));
  }
  CHECK(worst_res <= 1e-12);
  // two independent routes to nu x b, each off by the conditioning eps r0^{1/2}/|rho|
  CHECK(worst_nxb <= 2e-11);
  CHECK(worst_or <= 1e-11);
}

TEST_CASE("solution map is linear") {
  Gen gen(34);
  for (int i = 0; i < 200; ++i) {
    auto in1 = random_cross_input(gen, 0.1, 10.0);
    auto in2 = in1;
    // second right-hand side on the same geometry
    auto other = random_cross_input(gen, 0.1, 10.0);
    const C3Vector nu = to_complex(in1.nu);
    const C3Vector psi0 = in1.rho * nu - to_complex(in1.beta);
    in2.asharp = other.asharp;
    in2.bsharp = (1.0 / (in1.z * in1.mu0)) * (Complex(0.3, -0.1) * psi0 - cross(psi0, in2.asharp));
    in2.g = other.g - dot(other.g, nu) * nu;
    const Complex c(0.7, 1.3);
    auto sum = in1;
    sum.asharp = in1.asharp + c * in2.asharp;
    sum.bsharp = in1.bsharp + c * in2.bsharp;
    sum.g = in1.g + c * in2.g;
    auto s1 = solve_cross_system(in1), s2 = solve_cross_system(in2), s = solve_cross_system(sum);
    CHECK(rel(s.a, s1.a + c * s2.a) <= 1e-13);
    CHECK(rel(s.b, s1.b + c * s2.b) <= 1e-13);
    CHECK(rel(s.nu_cross_b, s1.nu_cross_b + c * s2.nu_cross_b) <= 1e-13);
  }
}

TEST_CASE("normal component formula") {
  Gen gen(35);
  for (int i = 0; i < 200; ++i) {
    auto in = random_cross_input(gen, 0.1, 10.0);
    auto s = solve_cross_system(in);
    const C3Vector nu = to_complex(in.nu), beta = to_complex(in.beta);
    const Complex expect = dot(nu, cross(beta, in.g)) / in.rho -
                           dot(cross(beta, in.asharp), nu) / (in.rho * in.rho) +
                           in.z * in.mu0 * dot(in.bsharp, nu) / (in.rho * in.rho);
    CHECK(std::abs(dot(nu, s.a) - expect) <= 1e-13 * (std::abs(expect) + norm(s.a)));
  }
}

TEST_CASE("psi0 has the expected bilinear length") {
  Gen gen(36);
  for (int i = 0; i < 200; ++i) {
    auto in = random_cross_input(gen);
    const C3Vector psi0 = in.rho * to_complex(in.nu) - to_complex(in.beta);
    const double r0 = dot(in.beta, in.beta);
    CHECK(std::abs(dot(psi0, psi0) - (in.rho * in.rho + r0)) <= 1e-13 * (std::norm(in.rho) + r0));
  }
}

TEST_CASE("invalid inputs are rejected") {
  Gen gen(37);
  auto in = random_cross_input(gen, 1.0, 2.0);
  auto bad = in;
  bad.g = bad.g + 1e-6 * to_complex(in.nu);
  CHECK_THROWS_AS(solve_cross_system(bad), Error);
  bad = in;
  bad.beta = bad.beta + 1e-6 * in.nu;
  CHECK_THROWS_AS(solve_cross_system(bad), Error);
  bad = in;
  bad.rho = 1e-15;
  try {
    (void)solve_cross_system(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateRho);
  }
}
