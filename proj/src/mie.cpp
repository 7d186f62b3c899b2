#include "mdtn/mie.hpp"

#include <cmath>

#include "mdtn/error.hpp"
#include "mdtn/spectral.hpp"
#include "mdtn/transport.hpp"

namespace mdtn {

namespace {

const Complex I(0.0, 1.0);

// sin x and cos x times exp(-|Im x|)
std::pair<Complex, Complex> scaled_sin_cos(Complex x) {
  const double a = std::abs(x.imag());
  const Complex ep = std::exp(Complex(-x.imag() - a, x.real()));  // e^{ix} e^{-a}
  const Complex em = std::exp(Complex(x.imag() - a, -x.real()));  // e^{-ix} e^{-a}
  return {(ep - em) / (2.0 * I), (ep + em) / 2.0};
}

RiccatiBessel series(int l, Complex x) {
  const double a = std::abs(x.imag());
  const double log_df = std::lgamma(2.0 * l + 2.0) - l * std::log(2.0) - std::lgamma(l + 1.0);
  Complex t = std::exp(static_cast<double>(l + 1) * std::log(x) - log_df - a);
  const Complex q = -x * x / 2.0;
  Complex psi = 0.0, dpsi = 0.0;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) t *= q / (static_cast<double>(k) * (2.0 * l + 2.0 * k + 1.0));
    psi += t;
    dpsi += static_cast<double>(l + 1 + 2 * k) * t;
    if (k > 2 && std::abs(t) <= 1e-18 * std::abs(psi)) break;
  }
  return {psi, dpsi / x, a};
}

RiccatiBessel upward(int l, Complex x, bool second) {
  const auto [s, c] = scaled_sin_cos(x);
  Complex f0 = second ? c : s;
  Complex f1 = second ? c / x + s : s / x - c;
  if (l == 0) return {f0, second ? -s : c, std::abs(x.imag())};
  for (int n = 1; n < l; ++n) {
    const Complex f2 = static_cast<double>(2 * n + 1) / x * f1 - f0;
    f0 = f1;
    f1 = f2;
  }
  return {f1, f0 - static_cast<double>(l) / x * f1, std::abs(x.imag())};
}

// r_n = psi_n / psi_{n-1} for n = 1..l by the backward continued fraction.
std::vector<Complex> downward_ratios(int l, Complex x) {
  const int top = l + static_cast<int>(std::abs(x)) + 60;
  std::vector<Complex> r(static_cast<std::size_t>(l) + 1, Complex(0.0));
  Complex next = 0.0;
  for (int n = top; n >= 1; --n) {
    const Complex cur = 1.0 / (static_cast<double>(2 * n + 1) / x - next);
    if (n <= l) r[static_cast<std::size_t>(n)] = cur;
    next = cur;
  }
  return r;
}

RiccatiBessel downward(int l, Complex x) {
  const auto [s, c] = scaled_sin_cos(x);
  if (l == 0) return {s, c, std::abs(x.imag())};
  const auto r = downward_ratios(l, x);
  // anchor on whichever of psi_0, psi_1 is better conditioned
  const Complex psi1_direct = s / x - c;
  Complex psi = std::abs(s) >= std::abs(psi1_direct) ? s * r[1] : psi1_direct;
  for (int n = 2; n <= l; ++n) psi *= r[static_cast<std::size_t>(n)];
  const Complex dpsi = psi * (1.0 / r[static_cast<std::size_t>(l)] - static_cast<double>(l) / x);
  return {psi, dpsi, std::abs(x.imag())};
}

BesselMethod pick(int l, Complex x) {
  if (std::abs(x) < 1.0) return BesselMethod::Series;
  // upward is stable only while the decaying companion cannot take over, which
  // fails for n below |x| once |Im x| is sizeable
  if (std::abs(x) >= static_cast<double>(l) && std::abs(x.imag()) <= 5.0) return BesselMethod::Upward;
  return BesselMethod::Downward;
}

// psi'/psi without forming psi itself (no underflow for l >> |x|)
Complex log_derivative(int l, Complex x) {
  if (pick(l, x) != BesselMethod::Series) {
    const auto r = downward_ratios(l, x);
    return 1.0 / r[static_cast<std::size_t>(l)] - static_cast<double>(l) / x;
  }
  const RiccatiBessel rb = riccati_bessel(l, x);
  if (rb.psi == 0.0) return std::numeric_limits<double>::infinity();
  return rb.dpsi / rb.psi;
}

}  // namespace

RiccatiBessel riccati_bessel(int l, Complex x, BesselMethod method) {
  if (l < 0) throw Error(ErrorCode::InvalidInput, "negative order");
  if (x == 0.0) throw Error(ErrorCode::InvalidInput, "x = 0");
  if (method == BesselMethod::Auto) method = pick(l, x);
  switch (method) {
    case BesselMethod::Series:
      return series(l, x);
    case BesselMethod::Upward:
      return upward(l, x, false);
    default:
      return downward(l, x);
  }
}

RiccatiBessel riccati_bessel_second(int l, Complex x) {
  if (l < 0) throw Error(ErrorCode::InvalidInput, "negative order");
  if (x == 0.0) throw Error(ErrorCode::InvalidInput, "x = 0");
  return upward(l, x, true);
}

const char* polarization_name(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

ModeImpedance exact_mode_impedance(int l, Complex lambda, double eps, double mu, double radius, Polarization pol) {
  if (l < 1) throw Error(ErrorCode::InvalidInput, "l must be >= 1");
  if (!(eps > 0 && mu > 0 && radius > 0)) throw Error(ErrorCode::InvalidInput, "eps, mu, R must be positive");
  const Complex x = lambda * std::sqrt(eps * mu) * radius;
  const Complex q = log_derivative(l, x);  // psi'/psi
  const double admittance = std::sqrt(eps / mu);
  ModeImpedance out{l, pol, lambda, eps, mu, radius, Complex(0.0)};
  if (pol == Polarization::TE) {
    if (!std::isfinite(std::abs(q)) || std::abs(q) > 1e12) {
      throw Error(ErrorCode::InteriorResonance, "psi_l(kR) vanishes (TE)");
    }
    out.value = I * admittance * q;
  } else {
    if (std::abs(q) < 1e-12) throw Error(ErrorCode::InteriorResonance, "psi_l'(kR) vanishes (TM)");
    out.value = -I * admittance / q;
  }
  return out;
}

Complex principal_mode_value(int l, Complex lambda, double eps, double mu, double radius, double h,
                             Polarization pol) {
  const Complex z = h * lambda;
  const double r0 = h * h * l * (l + 1.0) / (radius * radius);
  const Complex rho = rho_of(r0, z, eps * mu);
  return pol == Polarization::TE ? rho / (z * mu) : z * eps / rho;
}

Complex first_order_mode_value(int l, Complex lambda, double eps, double mu, double radius, double h,
                               Polarization pol) {
  const SurfaceChart chart = SurfaceChart::sphere(radius);
  const double x2 = M_PI / 2, x3 = 0.0;
  const double xi3 = h * std::sqrt(l * (l + 1.0));
  const auto at = transport_setup(chart, Media::constant(eps, mu), spectral_from_z(h * lambda, h), x2, x3, 0.0, xi3, 2);
  const BoundarySymbol bs = boundary_symbol(at);
  const CovectorData cd = covector_data(chart, x2, x3, 0.0, xi3);
  const double nb = std::sqrt(cd.r0);
  const Vec3<double> tm{cd.beta[0] / nb, cd.beta[1] / nb, cd.beta[2] / nb};
  const C3Vector f = to_complex(pol == Polarization::TM ? tm : cross(cd.nu, tm));
  const C3Matrix sym = bs.m + h * bs.m_tilde_full;
  return dot(f, sym * f);
}

std::vector<DtnCompareRow> dtn_compare(const std::vector<int>& ls, Complex lambda, double eps, double mu,
                                       double radius, double h, bool check_regime) {
  const SpectralParameter sp = spectral_from_z(h * lambda, h);
  if (check_regime && sp.theta < std::pow(h, 0.4)) {
    throw Error(ErrorCode::InvalidInput, "theta below h^{2/5}");
  }
  std::vector<DtnCompareRow> rows;
  for (const int l : ls) {
    for (const Polarization pol : {Polarization::TE, Polarization::TM}) {
      DtnCompareRow row;
      row.l = l;
      row.pol = pol;
      row.lambda = lambda;
      try {
        row.exact = exact_mode_impedance(l, lambda, eps, mu, radius, pol).value;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InteriorResonance) throw;
        row.resonant = true;
        rows.push_back(row);
        continue;
      }
      row.order0 = principal_mode_value(l, lambda, eps, mu, radius, h, pol);
      row.order1 = first_order_mode_value(l, lambda, eps, mu, radius, h, pol);
      row.err0 = std::abs(row.exact - row.order0);
      row.err1 = std::abs(row.exact - row.order1);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace mdtn
