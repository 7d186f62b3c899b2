#pragma once

// Truncated multivariate Taylor polynomials with a dense coefficient table
// up to a total order. Coefficients are Taylor coefficients (not derivatives),
// so f = sum_alpha c_alpha u^alpha with u the displacement from the base point.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "mdtn/error.hpp"
#include "mdtn/numerics.hpp"

namespace mdtn {

using MultiIndex = std::array<int, 3>;

namespace detail {

struct JetLayout {
  int nvars = 0;
  int order = 0;
  std::vector<MultiIndex> index;  // graded: all degree-0 terms, then degree 1, ...
  std::vector<int> degree_start;  // degree_start[d] = first index of degree d; size order+2
  struct Triple {
    int a, b, out;
  };
  std::vector<Triple> products;
  // deriv[var][i] = (source index in this layout, factor) for output index i of
  // the order-1 layout.
  std::array<std::vector<std::pair<int, int>>, 3> deriv;

  int find(const MultiIndex& alpha) const;
};

std::shared_ptr<const JetLayout> jet_layout(int nvars, int order);

template <class C>
inline void mul_add(C& acc, const C& x, const C& y) {
  acc = acc + x * y;
}
// std::complex multiplication checks for inf/nan; jets never need that.
inline void mul_add(std::complex<double>& acc, const std::complex<double>& x, const std::complex<double>& y) {
  acc = {acc.real() + x.real() * y.real() - x.imag() * y.imag(), acc.imag() + x.real() * y.imag() + x.imag() * y.real()};
}

}  // namespace detail

inline constexpr int kDefaultJetOrder = 8;

template <class C>
class Jet {
 public:
  using Scalar = C;

  Jet() = default;

  /// Constant jet in `nvars` variables truncated at total `order`.
  Jet(int nvars, int order, const C& value = C{})
      : layout_(detail::jet_layout(nvars, order)), c_(layout_->index.size(), C{}) {
    c_[0] = value;
  }

  /// The coordinate function u_var + base.
  static Jet variable(int nvars, int order, int var, const C& base) {
    if (var < 0 || var >= nvars) throw Error(ErrorCode::InvalidInput, "Jet::variable: bad variable");
    Jet j(nvars, order, base);
    if (order >= 1) {
      MultiIndex e{0, 0, 0};
      e[static_cast<std::size_t>(var)] = 1;
      j.c_[static_cast<std::size_t>(j.layout_->find(e))] = C(1);
    }
    return j;
  }

  int nvars() const { return layout_->nvars; }
  int order() const { return layout_->order; }
  std::size_t size() const { return c_.size(); }
  const MultiIndex& multi_index(std::size_t i) const { return layout_->index[i]; }
  const C& operator[](std::size_t i) const { return c_[i]; }
  C& operator[](std::size_t i) { return c_[i]; }

  const C& value() const { return c_[0]; }

  /// Coefficient of u^alpha; zero above the truncation order.
  C coeff(const MultiIndex& alpha) const {
    const int k = layout_->find(alpha);
    return k < 0 ? C{} : c_[static_cast<std::size_t>(k)];
  }
  void set_coeff(const MultiIndex& alpha, const C& value) {
    const int k = layout_->find(alpha);
    if (k < 0) throw Error(ErrorCode::InvalidInput, "Jet::set_coeff: index above order");
    c_[static_cast<std::size_t>(k)] = value;
  }

  Jet truncated(int new_order) const {
    if (new_order >= order()) return *this;
    Jet out(nvars(), new_order);
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = c_[i];
    return out;
  }

  /// Partial derivative in variable `var`; the result is one order lower.
  Jet derivative(int var) const {
    if (var < 0 || var >= nvars()) throw Error(ErrorCode::InvalidInput, "Jet::derivative: bad variable");
    if (order() == 0) throw Error(ErrorCode::OrderUnderflow, "derivative of an order-0 jet");
    Jet out(nvars(), order() - 1);
    const auto& table = layout_->deriv[static_cast<std::size_t>(var)];
    for (std::size_t i = 0; i < out.c_.size(); ++i) {
      out.c_[i] = C(table[i].second) * c_[static_cast<std::size_t>(table[i].first)];
    }
    return out;
  }

  /// Value of the polynomial at base + displacement.
  C evaluate(const std::array<C, 3>& d) const {
    C s{};
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == C{}) continue;
      C term = c_[i];
      const auto& a = layout_->index[i];
      for (std::size_t v = 0; v < 3; ++v)
        for (int p = 0; p < a[v]; ++p) term = term * d[v];
      s = s + term;
    }
    return s;
  }

  /// max |c_alpha| over all coefficients.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : c_) {
      using std::abs;
      const double a = static_cast<double>(abs(x));
      if (a > m) m = a;
    }
    return m;
  }

  Jet operator-() const {
    Jet out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const int m = a.order() < b.order() ? a.order() : b.order();
    Jet out = a.truncated(m);
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] + b.c_[i];
    return out;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const int m = a.order() < b.order() ? a.order() : b.order();
    Jet out = a.truncated(m);
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] - b.c_[i];
    return out;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const Jet& lo = a.order() <= b.order() ? a : b;
    Jet out(lo.nvars(), lo.order());
    for (const auto& t : lo.layout_->products) {
      detail::mul_add(out.c_[static_cast<std::size_t>(t.out)], a.c_[static_cast<std::size_t>(t.a)],
                      b.c_[static_cast<std::size_t>(t.b)]);
    }
    return out;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

  friend Jet operator+(Jet a, const C& s) {
    a.c_[0] = a.c_[0] + s;
    return a;
  }
  friend Jet operator+(const C& s, Jet a) { return std::move(a) + s; }
  friend Jet operator-(Jet a, const C& s) {
    a.c_[0] = a.c_[0] - s;
    return a;
  }
  friend Jet operator-(const C& s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, const C& s) {
    for (auto& x : a.c_) x = x * s;
    return a;
  }
  friend Jet operator*(const C& s, Jet a) { return std::move(a) * s; }
  friend Jet operator/(Jet a, const C& s) {
    const C r = C(1) / s;
    return std::move(a) * r;
  }
  friend Jet operator/(const C& s, const Jet& a) { return inverse(a) * s; }

  /// f(value + du) = sum_k t[k] du^k, du = jet minus its constant term.
  Jet compose(const std::vector<C>& t) const {
    Jet du = *this;
    du.c_[0] = C{};
    Jet r(nvars(), order(), t.back());
    for (std::size_t k = t.size() - 1; k-- > 0;) r = r * du + t[k];
    return r;
  }

  friend Jet inverse(const Jet& a) {
    const C a0 = a.value();
    if (a0 == C{}) throw Error(ErrorCode::ZeroConstantTerm, "inverse of a jet with zero constant term");
    std::vector<C> t(static_cast<std::size_t>(a.order()) + 1);
    const C r = C(1) / a0;
    C p = r;
    for (auto& x : t) {
      x = p;
      p = -p * r;
    }
    return a.compose(t);
  }

  /// Square root with the given choice of root at the base point.
  static Jet sqrt_with_root(const Jet& a, const C& root) {
    const C a0 = a.value();
    if (a0 == C{}) throw Error(ErrorCode::ZeroConstantTerm, "square root of a jet with zero constant term");
    std::vector<C> t(static_cast<std::size_t>(a.order()) + 1);
    const C r = C(1) / a0;
    C binom(1);  // binomial(1/2, k)
    C p = root;
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = binom * p;
      binom = binom * C(0.5 - static_cast<double>(k)) / C(static_cast<double>(k + 1));
      p = p * r;
    }
    return a.compose(t);
  }

  friend Jet exp(const Jet& a) {
    using std::exp;
    std::vector<C> t(static_cast<std::size_t>(a.order()) + 1);
    C p = exp(a.value());
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = p;
      p = p / C(static_cast<double>(k + 1));
    }
    return a.compose(t);
  }
  friend Jet sin(const Jet& a) { return sincos_compose(a, 0); }
  friend Jet cos(const Jet& a) { return sincos_compose(a, 1); }

 private:
  static void check_compatible(const Jet& a, const Jet& b) {
    if (a.nvars() != b.nvars()) throw Error(ErrorCode::InvalidInput, "jets over different variable sets");
  }
  static Jet sincos_compose(const Jet& a, int phase) {
    using std::cos;
    using std::sin;
    const C s = sin(a.value());
    const C c = cos(a.value());
    const C cyc[4] = {s, c, -s, -c};
    std::vector<C> t(static_cast<std::size_t>(a.order()) + 1);
    C fact(1);
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k > 0) fact = fact * C(static_cast<double>(k));
      t[k] = cyc[(k + static_cast<std::size_t>(phase)) % 4] / fact;
    }
    return a.compose(t);
  }

  std::shared_ptr<const detail::JetLayout> layout_;
  std::vector<C> c_;
};

template <class C>
Jet<C> sqrt_upper(const Jet<C>& a) {
  C root = sqrt_upper(a.value());
  return Jet<C>::sqrt_with_root(a, root);
}

/// Principal-branch square root (used for positive real quantities).
template <class C>
Jet<C> sqrt_principal(const Jet<C>& a) {
  using std::sqrt;
  return Jet<C>::sqrt_with_root(a, sqrt(a.value()));
}

/// Embeds a jet in the last nvars-1 variables of a jet with one more leading
/// variable, multiplied by u_0^power.
template <class C>
Jet<C> lift_leading(const Jet<C>& a, int power, int new_order) {
  Jet<C> out(a.nvars() + 1, new_order);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& al = a.multi_index(i);
    MultiIndex b{power, al[0], al[1]};
    int deg = b[0] + b[1] + b[2];
    if (deg > new_order) continue;
    out.set_coeff(b, a[i]);
  }
  return out;
}

/// Coefficient of u_0^k as a jet in the remaining variables.
template <class C>
Jet<C> slice_leading(const Jet<C>& a, int k) {
  if (k > a.order()) throw Error(ErrorCode::OrderUnderflow, "slice above truncation order");
  Jet<C> out(a.nvars() - 1, a.order() - k);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& al = out.multi_index(i);
    out[i] = a.coeff({k, al[0], al[1]});
  }
  return out;
}

}  // namespace mdtn
