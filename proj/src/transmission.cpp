#include "mdtn/transmission.hpp"

#include <cmath>
#include <functional>

#include "mdtn/error.hpp"

namespace mdtn {

namespace {

struct DetEval {
  ScaledComplex d;
  double terms = 0.0;  // |first term| + |second term|, same scaling as d
};

DetEval determinant_terms(const TransmissionConfig& cfg, int l, Polarization pol, Complex lambda) {
  if (l < 1) throw Error(ErrorCode::InvalidInput, "l must be >= 1");
  const Complex x1 = lambda * std::sqrt(cfg.eps1 * cfg.mu1) * cfg.radius;
  const Complex x2 = lambda * std::sqrt(cfg.eps2 * cfg.mu2) * cfg.radius;
  const RiccatiBessel b1 = riccati_bessel(l, x1), b2 = riccati_bessel(l, x2);
  const double w1 = cfg.c1 * std::sqrt(cfg.eps1 / cfg.mu1), w2 = cfg.c2 * std::sqrt(cfg.eps2 / cfg.mu2);
  Complex t1, t2;
  if (pol == Polarization::TE) {
    t1 = w1 * b1.dpsi * b2.psi;
    t2 = w2 * b1.psi * b2.dpsi;
  } else {
    t1 = w1 * b1.psi * b2.dpsi;
    t2 = w2 * b1.dpsi * b2.psi;
  }
  return {{t1 - t2, b1.log_scale + b2.log_scale}, std::abs(t1) + std::abs(t2)};
}

using ScaledFn = std::function<DetEval(Complex)>;

constexpr double kZeroTol = 1e-10;

void check_off_zero(const DetEval& e, Complex at) {
  if (!(std::abs(e.d.value) > kZeroTol * e.terms)) {
    throw Error(ErrorCode::ContourThroughZero,
                "determinant vanishes on the contour near " + std::to_string(at.real()) + "+" +
                    std::to_string(at.imag()) + "i");
  }
}

double segment_arg(const ScaledFn& f, Complex a, Complex b, const DetEval& fa, const DetEval& fb, int depth) {
  // accept only when the midpoint confirms the phase increment (guards aliasing)
  const Complex m = 0.5 * (a + b);
  const DetEval fm = f(m);
  check_off_zero(fm, m);
  const double j1 = std::arg(fm.d.value / fa.d.value), j2 = std::arg(fb.d.value / fm.d.value);
  const double whole = std::arg(fb.d.value / fa.d.value);
  const double mag = std::abs(fb.d.value / fa.d.value);
  if (std::abs(j1) <= M_PI / 8 && std::abs(j2) <= M_PI / 8 && std::abs(j1 + j2 - whole) < 1e-9 && mag < 3.0 &&
      mag > 1.0 / 3.0) {
    return whole;
  }
  if (depth > 40) throw Error(ErrorCode::ContourThroughZero, "edge refinement limit reached");
  return segment_arg(f, a, m, fa, fm, depth + 1) + segment_arg(f, m, b, fm, fb, depth + 1);
}

// rate: bound on |d arg f / d lambda| used to set the initial sampling.
// vertices: closed polygon, counterclockwise, last vertex joined to the first.
int winding(const ScaledFn& f, const std::function<double(Complex)>& rate, const std::vector<Complex>& vertices) {
  double total = 0.0;
  for (std::size_t e = 0; e < vertices.size(); ++e) {
    const Complex a = vertices[e], b = vertices[(e + 1) % vertices.size()];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    Complex pa = a;
    DetEval fa = f(a);
    check_off_zero(fa, a);
    double t = 0.0;
    while (t < 1.0) {
      const double step = std::min(0.25, (M_PI / 8) / rate(pa)) / len;
      t = std::min(1.0, t + step);
      const Complex pb = a + (b - a) * t;
      const DetEval fb = f(pb);
      check_off_zero(fb, pb);
      total += segment_arg(f, pa, pb, fa, fb, 0);
      pa = pb;
      fa = fb;
    }
  }
  return static_cast<int>(std::lround(total / (2 * M_PI)));
}

Complex newton_polish(const TransmissionConfig& cfg, int l, Polarization pol, Complex start) {
  Complex x = start;
  for (int it = 0; it < 60; ++it) {
    const double l0 = mode_determinant_scaled(cfg, l, pol, x).log_scale;
    auto g = [&](Complex y) {
      const ScaledComplex s = mode_determinant_scaled(cfg, l, pol, y);
      return s.value * std::exp(s.log_scale - l0);
    };
    const double d = 1e-6 * std::max(1.0, std::abs(x));
    const Complex gx = g(x);
    const Complex dg = (g(x + d) - g(x - d)) / (2.0 * d);
    if (dg == 0.0) break;
    const Complex step = gx / dg;
    x -= step;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

bool TransmissionConfig::satisfies_hypotheses() const { return hypothesis_label().empty(); }

std::string TransmissionConfig::hypothesis_label() const {
  const bool ratio = std::abs(c1 / mu1 - c2 / mu2) <= 1e-12 * std::abs(c1 / mu1);
  const bool speeds = std::abs(eps1 * mu1 - eps2 * mu2) > 1e-12 * std::abs(eps1 * mu1);
  if (ratio && speeds) return "";
  return "outside-hypotheses";
}

Complex ScaledComplex::unscaled() const { return value * std::exp(log_scale); }

ScaledComplex mode_determinant_scaled(const TransmissionConfig& cfg, int l, Polarization pol, Complex lambda) {
  return determinant_terms(cfg, l, pol, lambda).d;
}

Complex mode_determinant(const TransmissionConfig& cfg, int l, Polarization pol, Complex lambda) {
  return mode_determinant_scaled(cfg, l, pol, lambda).unscaled();
}

int count_zeros(const TransmissionConfig& cfg, int l, Polarization pol, const Rect& rect) {
  if (rect.degenerate()) return 0;
  return count_zeros_polygon(cfg, l, pol,
                             {Complex(rect.re0, rect.im0), Complex(rect.re1, rect.im0), Complex(rect.re1, rect.im1),
                              Complex(rect.re0, rect.im1)});
}

int count_zeros_polygon(const TransmissionConfig& cfg, int l, Polarization pol, const std::vector<Complex>& vertices) {
  const double k = 2.0 * cfg.radius * (std::sqrt(cfg.eps1 * cfg.mu1) + std::sqrt(cfg.eps2 * cfg.mu2));
  auto rate = [&](Complex x) { return (2.0 * l + 2.0) / std::max(std::abs(x), 1e-3) + k; };
  return winding([&](Complex x) { return determinant_terms(cfg, l, pol, x); }, rate, vertices);
}

std::vector<Complex> find_zeros(const TransmissionConfig& cfg, int l, Polarization pol, const Rect& rect,
                                double min_size) {
  const int n = count_zeros(cfg, l, pol, rect);
  if (n <= 0) return {};
  const double wre = rect.re1 - rect.re0, wim = rect.im1 - rect.im0;
  if (std::max(wre, wim) < min_size) {
    const Complex root = newton_polish(cfg, l, pol, Complex(rect.re0 + wre / 2, rect.im0 + wim / 2));
    return std::vector<Complex>(static_cast<std::size_t>(n), root);
  }
  // split the longer side; nudge the cut if it runs through a zero
  for (const double frac : {0.5, 0.4871, 0.5137, 0.4623}) {
    Rect a = rect, b = rect;
    if (wre >= wim) {
      a.re1 = b.re0 = rect.re0 + frac * wre;
    } else {
      a.im1 = b.im0 = rect.im0 + frac * wim;
    }
    try {
      std::vector<Complex> out = find_zeros(cfg, l, pol, a, min_size);
      const std::vector<Complex> rest = find_zeros(cfg, l, pol, b, min_size);
      out.insert(out.end(), rest.begin(), rest.end());
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ContourThroughZero) throw;
    }
  }
  throw Error(ErrorCode::ContourThroughZero, "could not split rectangle away from zeros");
}

namespace {

// winding on a tile, re-splitting horizontally when an edge meets a zero
int tile_winding(const TransmissionConfig& cfg, int l, Polarization pol, const Rect& r, int depth, int& retries) {
  try {
    return count_zeros(cfg, l, pol, r);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ContourThroughZero || depth >= 3) throw;
  }
  ++retries;
  Rect a = r, b = r;
  a.im1 = b.im0 = r.im0 + 0.4871 * (r.im1 - r.im0);
  return tile_winding(cfg, l, pol, a, depth + 1, retries) + tile_winding(cfg, l, pol, b, depth + 1, retries);
}

}  // namespace

std::vector<Rect> region_tiles(const TransmissionConfig& cfg, double C) {
  std::vector<Rect> tiles;
  const int ncol = static_cast<int>(std::ceil(cfg.lambda_max / cfg.tile_width - 1e-9));
  for (int c = 0; c < ncol; ++c) {
    const double re0 = c * cfg.tile_width, re1 = std::min(cfg.lambda_max, (c + 1) * cfg.tile_width);
    const Rect r{re0, re1, std::max(cfg.im_min, C * std::pow(re0 + 1.0, cfg.p)), cfg.im_max};
    if (!r.degenerate()) tiles.push_back(r);
  }
  return tiles;
}

std::vector<Complex> region_outline(const std::vector<Rect>& tiles) {
  std::vector<Complex> v;
  if (tiles.empty()) return v;
  for (const Rect& r : tiles) {
    v.emplace_back(r.re0, r.im0);
    v.emplace_back(r.re1, r.im0);
  }
  v.emplace_back(tiles.back().re1, tiles.back().im1);
  v.emplace_back(tiles.front().re0, tiles.front().im1);
  return v;
}

RegionReport region_scan(const TransmissionConfig& cfg, double C, bool stop_at_first) {
  RegionReport rep;
  rep.C = C;
  rep.label = cfg.hypothesis_label();
  rep.hypotheses_ok = rep.label.empty();
  const std::vector<Rect> tiles = region_tiles(cfg, C);
  if (tiles.empty()) return rep;
  const std::vector<Complex> outline = region_outline(tiles);
  const Rect box{tiles.front().re0, tiles.back().re1, tiles.front().im0, cfg.im_max};
  for (int l = 1; l <= cfg.L; ++l) {
    for (const Polarization pol : {Polarization::TE, Polarization::TM}) {
      // the outline winding is the sum of the tile windings; tiles are only
      // visited when it is nonzero or the outline meets a zero
      bool per_tile = false;
      try {
        const int w = count_zeros_polygon(cfg, l, pol, outline);
        rep.tiles.push_back({box, l, pol, w, true});
        per_tile = w != 0;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ContourThroughZero) throw;
        ++rep.retries;
        per_tile = true;
      }
      if (!per_tile) continue;
      for (const Rect& r : tiles) {
        const int w = tile_winding(cfg, l, pol, r, 0, rep.retries);
        rep.tiles.push_back({r, l, pol, w, false});
        rep.total += w;
        if (w != 0) {
          const auto z = find_zeros(cfg, l, pol, r);
          rep.violators.insert(rep.violators.end(), z.begin(), z.end());
          if (stop_at_first) return rep;
        }
      }
    }
  }
  return rep;
}

std::vector<Complex> strip_zeros(const TransmissionConfig& cfg, double C, double im_lo, int l_max) {
  std::vector<Complex> out;
  const int ncol = static_cast<int>(std::ceil(cfg.lambda_max / cfg.tile_width - 1e-9));
  for (int c = 0; c < ncol; ++c) {
    const double re0 = c * cfg.tile_width, re1 = std::min(cfg.lambda_max, (c + 1) * cfg.tile_width);
    const Rect r{re0, re1, im_lo, C * std::pow(re1 + 1.0, cfg.p)};
    if (r.degenerate()) continue;
    for (int l = 1; l <= l_max; ++l) {
      for (const Polarization pol : {Polarization::TE, Polarization::TM}) {
        for (const Complex z : find_zeros(cfg, l, pol, r)) {
          if (z.real() > 0 && z.real() <= cfg.lambda_max && z.imag() >= im_lo &&
              z.imag() < C * std::pow(z.real() + 1.0, cfg.p)) {
            out.push_back(z);
          }
        }
      }
    }
  }
  return out;
}

double calibrate_C(const TransmissionConfig& cfg, double C_hi, double tol) {
  if (region_scan(cfg, C_hi, true).total != 0) {
    throw Error(ErrorCode::InvalidInput, "upper bracket for C is not root-free");
  }
  double lo = 0.0, hi = C_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (region_scan(cfg, mid, true).total == 0 ? hi : lo) = mid;
  }
  return hi;
}

TransmissionSymbols transmission_symbols(Complex z, double r0, const Vec3<double>& beta, double eps1, double mu1,
                                         double eps2, double mu2, double c1) {
  if (std::abs(eps1 * mu1 - eps2 * mu2) <= 1e-14 * eps1 * mu1) {
    throw Error(ErrorCode::CoincidentMedia, "eps1 mu1 = eps2 mu2");
  }
  TransmissionSymbols s;
  s.rho1 = rho_of(r0, z, eps1 * mu1);
  s.rho2 = rho_of(r0, z, eps2 * mu2);
  const C3Matrix B = calB(beta), Id = identity3();
  const Complex pr = s.rho1 * s.rho2;
  s.w = z * z * (c1 / mu1) * (eps1 * mu1 - eps2 * mu2);
  s.T = ((c1 / mu1) * (s.rho1 - s.rho2)) * (Id - (1.0 / pr) * B);
  s.Ttilde = (1.0 / (s.rho1 + s.rho2)) * (Id - (1.0 / pr) * B);
  s.T1 = ((s.rho1 + s.rho2) / std::sqrt(1.0 + r0)) * (Id + (1.0 / (pr - r0)) * B);
  return s;
}

SymbolTriple symbol_T(const SpectralParameter& sp, const SurfaceChart& chart, const Media& media1,
                      const Media& media2, double c1, double c2) {
  auto at = [=](double x2, double x3, double xi2, double xi3) {
    const CovectorData cd = covector_data(chart, x2, x3, xi2, xi3);
    const auto m1 = boundary_media(chart, media1, x2, x3), m2 = boundary_media(chart, media2, x2, x3);
    if (std::abs(c1 / m1[1] - c2 / m2[1]) > 1e-12 * c1 / m1[1]) {
      throw Error(ErrorCode::InvalidInput, "c1/mu1 != c2/mu2");
    }
    return transmission_symbols(sp.z, cd.r0, cd.beta, m1[0], m1[1], m2[0], m2[1], c1);
  };
  SymbolTriple out;
  out.T = {"T", true, true, [=](double a, double b, double c, double d) { return at(a, b, c, d).T; }};
  out.Ttilde = {"Ttilde", true, true, [=](double a, double b, double c, double d) { return at(a, b, c, d).Ttilde; }};
  out.T1 = {"T1", true, true, [=](double a, double b, double c, double d) { return at(a, b, c, d).T1; }};
  return out;
}

}  // namespace mdtn
