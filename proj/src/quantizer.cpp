#include "mdtn/quantizer.hpp"

#include <cmath>
#include <random>

#include "mdtn/error.hpp"

namespace mdtn {

GridSymbol GridSymbol::constant(Complex c) {
  return {"const", Dependence::XOnly, [c](double, double, double, double) { return c; }};
}

GridSymbol GridSymbol::x_only(std::string tag, std::function<Complex(double, double)> f) {
  return {std::move(tag), Dependence::XOnly, [f](double x1, double x2, double, double) { return f(x1, x2); }};
}

GridSymbol GridSymbol::xi_only(std::string tag, std::function<Complex(double, double)> f) {
  return {std::move(tag), Dependence::XiOnly, [f](double, double, double a, double b) { return f(a, b); }};
}

GridSymbol GridSymbol::general(std::string tag, std::function<Complex(double, double, double, double)> f) {
  return {std::move(tag), Dependence::General, std::move(f)};
}

GridSymbol operator*(const GridSymbol& a, const GridSymbol& b) {
  GridSymbol out;
  out.tag = a.tag + "*" + b.tag;
  out.dependence = a.dependence == b.dependence ? a.dependence : GridSymbol::Dependence::General;
  out.eval = [a, b](double x1, double x2, double k1, double k2) { return a(x1, x2, k1, k2) * b(x1, x2, k1, k2); };
  return out;
}

double grid_point(int i, int n) { return 2.0 * M_PI * i / n; }

namespace {

int freq(int j, int n) { return j - n / 2; }

double alias_ratio(const GridSymbol& a, double h, int n) {
  // doubled lattice at a few rows; mass outside [-n/2, n/2)^2 against the total
  double inside = 0.0, outside = 0.0;
  for (const int row : {0, n / 3, (2 * n) / 3}) {
    const double x1 = grid_point(row, n), x2 = grid_point((row * 7) % n, n);
    for (int k1 = -n; k1 < n; ++k1) {
      for (int k2 = -n; k2 < n; ++k2) {
        const double m = std::norm(a(x1, x2, -h * k1, -h * k2));
        const bool in = k1 >= -n / 2 && k1 < n / 2 && k2 >= -n / 2 && k2 < n / 2;
        (in ? inside : outside) += m;
      }
    }
  }
  const double total = inside + outside;
  return total > 0.0 ? outside / total : 0.0;
}

}  // namespace

GridOperator quantize(const GridSymbol& a, double h, int n) {
  if (n < 2 || n > 64 || n % 2 != 0) throw Error(ErrorCode::InvalidInput, "grid size must be even, 2..64");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidInput, "h must be positive");
  GridOperator op;
  op.n = n;
  op.h = h;
  op.provenance = a.tag;
  const int N = n * n;
  op.matrix = Eigen::MatrixXcd::Zero(N, N);
  if (a.dependence == GridSymbol::Dependence::XOnly) {
    op.diagonal = true;
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        op.matrix(i1 * n + i2, i1 * n + i2) = a(grid_point(i1, n), grid_point(i2, n), 0.0, 0.0);
      }
    }
    return op;
  }
  if (a.dependence == GridSymbol::Dependence::XiOnly) {
    op.fourier_multiplier = true;
    op.multipliers.resize(N);
    for (int j1 = 0; j1 < n; ++j1) {
      for (int j2 = 0; j2 < n; ++j2) op.multipliers[j1 * n + j2] = a(0.0, 0.0, -h * freq(j1, n), -h * freq(j2, n));
    }
  }
  op.alias_ratio = alias_ratio(a, h, n);
  op.alias_warning = op.alias_ratio > 1e-8;
  // F(y, k) = e^{-i k y}; row(x) = n^{-2} F V F^T with V(k) = a(x, -h k) e^{i k x}
  Eigen::MatrixXcd F(n, n);
  for (int y = 0; y < n; ++y) {
    for (int j = 0; j < n; ++j) F(y, j) = std::exp(Complex(0.0, -freq(j, n) * grid_point(y, n)));
  }
  Eigen::MatrixXcd V(n, n);
  const double norm = 1.0 / N;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const double x1 = grid_point(i1, n), x2 = grid_point(i2, n);
      for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
          const int k1 = freq(j1, n), k2 = freq(j2, n);
          V(j1, j2) = a(x1, x2, -h * k1, -h * k2) * std::exp(Complex(0.0, k1 * x1 + k2 * x2));
        }
      }
      const Eigen::MatrixXcd R = F * V * F.transpose();
      for (int y1 = 0; y1 < n; ++y1) {
        for (int y2 = 0; y2 < n; ++y2) op.matrix(i1 * n + i2, y1 * n + y2) = norm * R(y1, y2);
      }
    }
  }
  return op;
}

double operator_norm(const LinearMap& A, const LinearMap& Aadj, int dim, int max_iter, double tol) {
  // Lanczos on A^* A with full reorthogonalization; the largest Ritz value is
  // the power-iteration limit reached in far fewer products
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
  v.normalize();
  const int m_max = std::min(dim, max_iter);
  std::vector<Eigen::VectorXcd> basis{v};
  std::vector<double> alpha, beta;
  double prev = -1.0, top = 0.0;
  for (int k = 0; k < m_max; ++k) {
    Eigen::VectorXcd w = Aadj(A(basis[static_cast<std::size_t>(k)]));
    alpha.push_back(basis[static_cast<std::size_t>(k)].dot(w).real());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) w -= q.dot(w) * q;
    }
    const double b = w.norm();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int i = 0; i <= k; ++i) {
      T(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i < k) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    if (b <= 1e-14 * std::max(top, 1e-300) || std::abs(top - prev) <= tol * top) break;
    prev = top;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  return std::sqrt(std::max(top, 0.0));
}

Eigen::MatrixXcd unitary_dft(int n) {
  const int N = n * n;
  Eigen::MatrixXcd U(N, N);
  for (int y1 = 0; y1 < n; ++y1) {
    for (int y2 = 0; y2 < n; ++y2) {
      for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
          const double ph = freq(j1, n) * grid_point(y1, n) + freq(j2, n) * grid_point(y2, n);
          U(j1 * n + j2, y1 * n + y2) = std::exp(Complex(0.0, -ph)) / static_cast<double>(n);
        }
      }
    }
  }
  return U;
}

double operator_norm(const GridOperator& op) {
  if (op.diagonal) return op.matrix.diagonal().cwiseAbs().maxCoeff();
  if (op.fourier_multiplier) return op.multipliers.cwiseAbs().maxCoeff();
  return operator_norm([&](const Eigen::VectorXcd& v) { return op.apply(v); },
                       [&](const Eigen::VectorXcd& v) { return op.apply_adjoint(v); },
                       static_cast<int>(op.matrix.rows()));
}

Curve composition_defect(const GridSymbol& a, const GridSymbol& b, const std::vector<double>& hs, int n,
                         int guard) {
  Curve c;
  std::vector<double> xs, ys;
  const GridSymbol ab = a * b;
  const int N = n * n;
  Eigen::MatrixXcd U;
  Eigen::VectorXd mask = Eigen::VectorXd::Ones(N);
  if (guard > 0) {
    U = unitary_dft(n);
    for (int j1 = 0; j1 < n; ++j1) {
      for (int j2 = 0; j2 < n; ++j2) {
        const bool inner = j1 >= guard && j1 < n - guard && j2 >= guard && j2 < n - guard;
        mask[j1 * n + j2] = inner ? 1.0 : 0.0;
      }
    }
  }
  auto project = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    if (guard <= 0) return v;
    return U.adjoint() * (mask.cast<Complex>().cwiseProduct(U * v));
  };
  for (const double h : hs) {
    const GridOperator A = quantize(a, h, n), B = quantize(b, h, n), AB = quantize(ab, h, n);
    const double d = operator_norm(
        [&](const Eigen::VectorXcd& v) {
          const Eigen::VectorXcd p = project(v);
          return project(A.apply(B.apply(p)) - AB.apply(p));
        },
        [&](const Eigen::VectorXcd& v) {
          const Eigen::VectorXcd p = project(v);
          return project(B.apply_adjoint(A.apply_adjoint(p)) - AB.apply_adjoint(p));
        },
        N);
    c.points.push_back({h, 0.0, d});
    if (d > 0.0) {
      xs.push_back(h);
      ys.push_back(d);
    }
  }
  c.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
  return c;
}

Curve boundedness_check(const std::function<GridSymbol(double theta)>& family, const std::vector<double>& thetas,
                        double h, int n) {
  Curve c;
  std::vector<double> xs, ys;
  for (const double t : thetas) {
    const double v = operator_norm(quantize(family(t), h, n));
    c.points.push_back({h, t, v});
    xs.push_back(t);
    ys.push_back(v);
  }
  c.slope = thetas.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
  return c;
}

}  // namespace mdtn
