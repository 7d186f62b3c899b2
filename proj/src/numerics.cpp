#include "mdtn/numerics.hpp"

namespace mdtn {

DenseSolveResult solve_dense(std::vector<Complex> a, std::vector<Complex> rhs, std::size_t n) {
  DenseSolveResult out;
  out.x = solve_dense_generic(std::move(a), std::move(rhs), n, &out.pivot_ratio);
  return out;
}

DenseSolveResult cross_solve_oracle(const std::vector<HpComplex>& m, const std::vector<HpComplex>& rhs) {
  DenseSolveResult out;
  const auto x = solve_dense_generic(m, rhs, 6, &out.pivot_ratio);
  out.x.resize(6);
  for (std::size_t i = 0; i < 6; ++i) {
    out.x[i] = Complex(static_cast<double>(real(x[i])), static_cast<double>(imag(x[i])));
  }
  return out;
}

DenseSolveResult cross_solve_oracle(const std::vector<Complex>& m, const std::vector<Complex>& rhs) {
  std::vector<HpComplex> a(m.size()), b(rhs.size());
  for (std::size_t i = 0; i < m.size(); ++i) a[i] = HpComplex(m[i].real(), m[i].imag());
  for (std::size_t i = 0; i < rhs.size(); ++i) b[i] = HpComplex(rhs[i].real(), rhs[i].imag());
  return cross_solve_oracle(a, b);
}

}  // namespace mdtn

namespace mdtn {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidInput, "loglog_slope needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mdtn
