#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "mdtn/jet.hpp"
#include "mdtn/numerics.hpp"

namespace mdtn::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  /// exp of a uniform sample: log-uniform on [a, b].
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  Complex complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }
  C3Vector c3(double r = 1.0) { return {complex(r), complex(r), complex(r)}; }
  Vec3<double> r3(double r = 1.0) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }
  Jet<Complex> jet(int nvars, int order, double r = 1.0) {
    Jet<Complex> j(nvars, order);
    for (std::size_t i = 0; i < j.size(); ++i) j[i] = complex(r);
    return j;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double jet_diff(const Jet<Complex>& a, const Jet<Complex>& b) { return (a - b).max_abs(); }

}  // namespace mdtn::testing
