#pragma once

// Complex 3-vectors and 3x3 matrices with the bilinear (non-conjugated)
// pairing, the upper-half-plane square root, and a small dense LU solver.
// Vec3/Mat3 are templates so the same algebra runs on complex scalars and
// on jets.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mdtn/error.hpp"
#include "mdtn/highprec.hpp"

namespace mdtn {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

template <class T>
struct Vec3 {
  std::array<T, 3> v{};

  Vec3() = default;
  Vec3(T a, T b, T c) : v{std::move(a), std::move(b), std::move(c)} {}

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] = v[i] + o.v[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] = v[i] - o.v[i];
    return *this;
  }
};

template <class T>
Vec3<T> operator+(Vec3<T> a, const Vec3<T>& b) {
  return a += b;
}
template <class T>
Vec3<T> operator-(Vec3<T> a, const Vec3<T>& b) {
  return a -= b;
}
template <class T>
Vec3<T> operator-(const Vec3<T>& a) {
  return {-a[0], -a[1], -a[2]};
}
template <class T, class S>
Vec3<T> operator*(const S& s, const Vec3<T>& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

/// Bilinear pairing sum a_j b_j (no conjugation).
template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
struct Mat3 {
  std::array<T, 9> m{};  // row-major

  T& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

  Vec3<T> column(std::size_t c) const { return {m[c], m[3 + c], m[6 + c]}; }
  void set_column(std::size_t c, const Vec3<T>& x) {
    for (std::size_t r = 0; r < 3; ++r) m[3 * r + c] = x[r];
  }

  static Mat3 filled(const T& value) {
    Mat3 out;
    out.m.fill(value);
    return out;
  }
  static Mat3 identity(const T& zero, const T& one) {
    Mat3 out = filled(zero);
    out(0, 0) = one;
    out(1, 1) = one;
    out(2, 2) = one;
    return out;
  }
  static Mat3 from_columns(const Vec3<T>& c0, const Vec3<T>& c1, const Vec3<T>& c2) {
    Mat3 out;
    out.set_column(0, c0);
    out.set_column(1, c1);
    out.set_column(2, c2);
    return out;
  }
};

template <class T>
Mat3<T> operator+(Mat3<T> a, const Mat3<T>& b) {
  for (std::size_t i = 0; i < 9; ++i) a.m[i] = a.m[i] + b.m[i];
  return a;
}
template <class T>
Mat3<T> operator-(Mat3<T> a, const Mat3<T>& b) {
  for (std::size_t i = 0; i < 9; ++i) a.m[i] = a.m[i] - b.m[i];
  return a;
}
template <class T, class S>
Mat3<T> operator*(const S& s, Mat3<T> a) {
  for (auto& x : a.m) x = s * x;
  return a;
}
template <class T>
Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
  return out;
}
template <class T>
Vec3<T> operator*(const Mat3<T>& a, const Vec3<T>& x) {
  return {a(0, 0) * x[0] + a(0, 1) * x[1] + a(0, 2) * x[2],
          a(1, 0) * x[0] + a(1, 1) * x[1] + a(1, 2) * x[2],
          a(2, 0) * x[0] + a(2, 1) * x[1] + a(2, 2) * x[2]};
}
template <class T>
Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out(r, c) = a(c, r);
  return out;
}
template <class T>
Mat3<T> outer(const Vec3<T>& a, const Vec3<T>& b) {
  Mat3<T> out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out(r, c) = a[r] * b[c];
  return out;
}
/// Matrix of w -> a x w.
template <class T>
Mat3<T> cross_matrix(const Vec3<T>& a, const T& zero) {
  Mat3<T> out = Mat3<T>::filled(zero);
  out(0, 1) = -a[2];
  out(0, 2) = a[1];
  out(1, 0) = a[2];
  out(1, 2) = -a[0];
  out(2, 0) = -a[1];
  out(2, 1) = a[0];
  return out;
}
template <class T>
T determinant(const Mat3<T>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}
/// Transposed cofactor matrix; a * adjugate(a) = det(a) I.
template <class T>
Mat3<T> adjugate(const Mat3<T>& a) {
  Mat3<T> out;
  out(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  out(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  out(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  out(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  out(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  out(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  out(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  out(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  out(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return out;
}

using C3Vector = Vec3<Complex>;
using C3Matrix = Mat3<Complex>;

inline C3Vector to_complex(const Vec3<double>& x) { return {x[0], x[1], x[2]}; }
inline C3Matrix to_complex_outer(const Vec3<double>& x) { return outer(to_complex(x), to_complex(x)); }

inline double norm(const C3Vector& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}
/// Frobenius norm.
inline double norm(const C3Matrix& a) {
  double s = 0.0;
  for (const auto& x : a.m) s += std::norm(x);
  return std::sqrt(s);
}
inline double max_abs(const C3Matrix& a) {
  double s = 0.0;
  for (const auto& x : a.m) s = std::max(s, std::abs(x));
  return s;
}
inline C3Matrix identity3() { return C3Matrix::identity(Complex{}, Complex{1.0}); }

/// Square root with strictly positive imaginary part. The non-negative real
/// axis is rejected: there the two roots are real and no branch is preferred.
template <class C>
C sqrt_upper(const C& w) {
  using std::imag;
  using std::real;
  using std::sqrt;
  if (imag(w) == 0 && real(w) >= 0) {
    throw Error(ErrorCode::AmbiguousBranch, "sqrt_upper of a non-negative real number");
  }
  C s = sqrt(w);
  if (imag(s) <= 0) s = -s;
  return s;
}

struct DenseSolveResult {
  std::vector<Complex> x;
  double pivot_ratio = 1.0;  // max |pivot| / min |pivot|, a crude condition estimate
};

/// Gaussian elimination with partial pivoting on an n x n row-major matrix.
/// The scalar type may be std::complex<double> or an extended-precision complex.
template <class C>
std::vector<C> solve_dense_generic(std::vector<C> a, std::vector<C> rhs, std::size_t n, double* pivot_ratio) {
  using std::abs;
  if (a.size() != n * n || rhs.size() != n) {
    throw Error(ErrorCode::InvalidInput, "solve_dense: dimension mismatch");
  }
  double scale = 0.0;
  for (const auto& x : a) scale = std::max(scale, static_cast<double>(abs(x)));
  if (scale == 0.0) throw Error(ErrorCode::Singular, "solve_dense: zero matrix");
  double pmax = 0.0, pmin = 1e308;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (abs(a[r * n + k]) > abs(a[p * n + k])) p = r;
    }
    const double piv = static_cast<double>(abs(a[p * n + k]));
    if (piv <= 1e-300 || piv <= scale * 1e-15) {
      throw Error(ErrorCode::Singular, "solve_dense: pivot below threshold");
    }
    pmax = std::max(pmax, piv);
    pmin = std::min(pmin, piv);
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[p * n + c]);
      std::swap(rhs[k], rhs[p]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const C f = a[r * n + k] / a[k * n + k];
      for (std::size_t c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
      rhs[r] -= f * rhs[k];
    }
  }
  std::vector<C> x(n);
  for (std::size_t k = n; k-- > 0;) {
    C s = rhs[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a[k * n + c] * x[c];
    x[k] = s / a[k * n + k];
  }
  if (pivot_ratio) *pivot_ratio = pmax / pmin;
  return x;
}

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

DenseSolveResult solve_dense(std::vector<Complex> a, std::vector<Complex> rhs, std::size_t n);

/// 6x6 dense solve used as an independent check of the closed-form
/// cross-system solver. Runs in 50-digit arithmetic so that the check is not
/// limited by the conditioning of the 6x6 formulation.
DenseSolveResult cross_solve_oracle(const std::vector<Complex>& m, const std::vector<Complex>& rhs);
DenseSolveResult cross_solve_oracle(const std::vector<HpComplex>& m, const std::vector<HpComplex>& rhs);

}  // namespace mdtn
