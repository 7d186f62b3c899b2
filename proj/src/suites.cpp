#include "mdtn/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "mdtn/crosssys.hpp"
#include "mdtn/eikonal.hpp"
#include "mdtn/mie.hpp"
#include "mdtn/numerics.hpp"
#include "mdtn/parallel.hpp"
#include "mdtn/quantizer.hpp"
#include "mdtn/spectral.hpp"
#include "mdtn/transport.hpp"

namespace mdtn {

bool SuiteReport::passed() const { return first_failure() == nullptr; }

const Check* SuiteReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass()) return &c;
  }
  return nullptr;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Check at_most(std::string name, double value, double tol) { return {std::move(name), value, -kInf, tol}; }
Check at_least(std::string name, double value, double bound) { return {std::move(name), value, bound, kInf}; }

// Per-index stream so that the sample does not depend on the worker count.
std::mt19937_64 point_rng(std::uint64_t seed, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

const char* chart_name(const SurfaceChart& c) {
  switch (c.kind) {
    case ChartKind::Plane: return "plane";
    case ChartKind::Sphere: return "sphere";
    case ChartKind::Ellipsoid: return "ellipsoid";
  }
  return "?";
}

double frob(const C3Matrix& m) {
  double s = 0;
  for (const auto& x : m.m) s += std::norm(x);
  return std::sqrt(s);
}

constexpr int kIdentities = 6;
const char* const kIdentityNames[kIdentities] = {"gamma_tangency", "beta_tangency", "B_squared",
                                                 "boundary_value", "inversion",     "T1_Ttilde"};

std::array<double, kIdentities> identities_at(const IdentityOptions& opt, std::size_t index) {
  auto rng = point_rng(opt.seed, index);
  const double x2 = uniform(rng, 0.2, M_PI - 0.2), x3 = uniform(rng, -M_PI, M_PI);
  const double xi2 = uniform(rng, -5, 5), xi3 = uniform(rng, -5, 5);
  const double theta = uniform(rng, 0.05, 1.0);
  const Complex z(uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0, theta);
  C3Vector g{Complex(uniform(rng, -1, 1), uniform(rng, -1, 1)), Complex(uniform(rng, -1, 1), uniform(rng, -1, 1)),
             Complex(uniform(rng, -1, 1), uniform(rng, -1, 1))};

  std::array<double, kIdentities> r{};
  const auto gs = gamma_series<Complex>(opt.chart, x2, x3, opt.gamma_order, 0);
  const C3Vector nu_c = vec_value(gs.nu);
  for (int k = 0; k <= opt.gamma_order; ++k) {
    C3Matrix gk = mat_value(gs.gamma[static_cast<std::size_t>(k)]);
    if (k == 1 && opt.gamma_perturbation != 0.0) gk.set_column(1, gk.column(1) + Complex(opt.gamma_perturbation) * nu_c);
    for (std::size_t c = 1; c < 3; ++c) {
      const C3Vector col = gk.column(c);
      r[0] = std::max(r[0], std::abs(dot(nu_c, col)) / (1.0 + norm(col)));
    }
  }

  const CovectorData cd = covector_data(opt.chart, x2, x3, xi2, xi3);
  const double bn = std::sqrt(dot(cd.beta, cd.beta));
  r[1] = std::abs(dot(cd.nu, cd.beta)) / (1.0 + bn);

  const C3Matrix B = calB(cd.beta);
  const double r0 = cd.r0;
  r[2] = frob(B * B - Complex(r0) * B) / std::max(r0 * r0, 1e-300);

  const auto em = boundary_media(opt.chart, opt.media, x2, x3);
  CrossSystemInput in;
  in.nu = cd.nu;
  in.beta = cd.beta;
  in.z = z;
  in.eps0 = em[0];
  in.mu0 = em[1];
  in.rho = rho_of(r0, z, em[0] * em[1]);
  const C3Vector nu = to_complex(cd.nu), beta = to_complex(cd.beta);
  in.g = g - dot(g, nu) * nu;
  const auto sol = solve_cross_system(in);
  const C3Vector nxg = cross(nu, in.g);
  const C3Vector expect = in.rho * nxg + (dot(beta, nxg) / in.rho) * beta;
  const double scale = std::abs(in.rho) * norm(in.g) + bn * bn * norm(in.g) / std::abs(in.rho);
  r[3] = norm(Complex(z * in.mu0) * sol.nu_cross_b - expect) / scale;

  const TransmissionSymbols ts = transmission_symbols(z, r0, cd.beta, em[0], em[1], 2.0 * em[0], em[1], 1.0);
  const Complex p12 = ts.rho1 * ts.rho2;
  const C3Matrix I = identity3();
  const C3Matrix left = I + (1.0 / (p12 - r0)) * B, right = I - (1.0 / p12) * B;
  r[4] = frob(left * right - I) / (frob(left) * frob(right));
  const double bracket = std::sqrt(1.0 + r0);
  r[5] = frob(ts.T1 * ts.Ttilde - Complex(1.0 / bracket) * I) * bracket;
  return r;
}

}  // namespace

SuiteReport identity_suite(const IdentityOptions& opt) {
  if (opt.points < 1) throw Error(ErrorCode::InvalidInput, "identity suite needs at least one point");
  const auto per_point = parallel_map<std::array<double, kIdentities>>(
      static_cast<std::size_t>(opt.points), opt.threads, [&](std::size_t i) { return identities_at(opt, i); });
  std::array<double, kIdentities> worst{};
  for (const auto& r : per_point) {
    for (int k = 0; k < kIdentities; ++k) worst[k] = std::max(worst[k], r[k]);
  }
  SuiteReport rep;
  rep.table.header = {"identity", "chart", "points", "worst_relative_residual", "tolerance"};
  for (int k = 0; k < kIdentities; ++k) {
    rep.table.rows.push_back({std::string(kIdentityNames[k]), std::string(chart_name(opt.chart)),
                              static_cast<long long>(opt.points), worst[k], opt.tol});
    rep.checks.push_back(at_most(std::string(kIdentityNames[k]) + "/" + chart_name(opt.chart), worst[k], opt.tol));
  }
  return rep;
}

SuiteReport eikonal_suite(const EikonalSuiteOptions& opt) {
  SuiteReport rep;
  rep.table.header = {"chart", "N", "x1", "residual"};
  const SpectralParameter sp = spectral_from_z(opt.z, opt.h);
  struct Out {
    std::vector<std::pair<double, double>> samples;
    double slope = 0.0;
    double flat = 0.0;
  };
  const auto outs = parallel_map<Out>(opt.orders.size(), opt.threads, [&](std::size_t i) {
    const int N = opt.orders[i];
    Out o;
    const auto ps = eikonal_coeffs<HpComplex>(opt.chart, opt.media, sp, opt.x2, opt.x3, opt.xi2, opt.xi3, N);
    const double hi = std::min(opt.x1_hi, ps.retained_limit());
    std::vector<double> xs, ys;
    for (int s = 0; s < opt.samples; ++s) {
      const double x1 = std::exp(std::log(opt.x1_lo) + (std::log(hi) - std::log(opt.x1_lo)) * s / (opt.samples - 1));
      const double r = static_cast<double>(abs(eikonal_residual(ps, HpReal(x1), opt.media)));
      o.samples.emplace_back(x1, r);
      xs.push_back(x1);
      ys.push_back(r);
    }
    o.slope = loglog_slope(xs, ys);
    const Media flat_media = opt.media.is_constant() ? opt.media : Media::constant(opt.media.eps.a, opt.media.mu.a);
    const auto flat = eikonal_coeffs<Complex>(SurfaceChart::plane(), flat_media, sp, 0.0, 0.0, opt.xi2, opt.xi3, N);
    for (int s = 0; s < opt.samples; ++s) {
      const double x1 = std::exp(std::log(opt.x1_lo) + (std::log(opt.x1_hi) - std::log(opt.x1_lo)) * s / (opt.samples - 1));
      o.flat = std::max(o.flat, std::abs(eikonal_residual(flat, x1, flat_media)));
    }
    return o;
  });
  for (std::size_t i = 0; i < opt.orders.size(); ++i) {
    const int N = opt.orders[i];
    for (const auto& [x1, r] : outs[i].samples) {
      rep.table.rows.push_back({std::string(chart_name(opt.chart)), static_cast<long long>(N), x1, r});
    }
    rep.checks.push_back(at_least("slope/N=" + std::to_string(N), outs[i].slope, N - opt.slope_margin));
    rep.checks.push_back(at_most("plane/N=" + std::to_string(N), outs[i].flat, opt.flat_tol));
  }
  return rep;
}

SuiteReport residual_suite(const ResidualSuiteOptions& opt) {
  const SpectralParameter sp = spectral_from_z(opt.z, opt.h);
  const auto at = transport_setup(opt.chart, opt.media, sp, opt.x2, opt.x3, opt.xi2, opt.xi3, opt.N);
  SuiteReport rep;
  rep.table.header = {"datum", "j", "k", "first_equation", "second_equation"};
  auto vmax = [](const JetVec& v) {
    return std::max({std::abs(v[0].value()), std::abs(v[1].value()), std::abs(v[2].value())});
  };
  double worst = 0, worst_bc = 0, worst_norm = 0;
  for (int c = 0; c < 3; ++c) {
    for (int j = 0; j < opt.N; ++j) {
      for (int k = 0; k < opt.N; ++k) {
        const auto r = transport_equation_coefficient(at, c, j, k);
        const double a = vmax(r.first), b = vmax(r.second);
        rep.table.rows.push_back({static_cast<long long>(c), static_cast<long long>(j), static_cast<long long>(k), a, b});
        worst = std::max({worst, a, b});
      }
    }
  }
  const C3Vector nu = vec_value(at.ps.geom.nu);
  for (int j = 1; j < opt.N; ++j) {
    const C3Matrix a = at.A_value(j, 0);
    for (std::size_t c = 0; c < 3; ++c) worst_bc = std::max(worst_bc, norm(cross(nu, a.column(c))));
  }
  for (int c = 0; c < 3; ++c) {
    for (int k = 1; k < opt.N; ++k) worst_norm = std::max(worst_norm, std::abs(normalization_coefficient(at, c, k).value()));
  }
  rep.checks.push_back(at_most("transport_coefficients", worst, opt.tol));
  rep.checks.push_back(at_most("boundary_condition", worst_bc, opt.boundary_tol));
  rep.checks.push_back(at_most("normalization", worst_norm, opt.tol));
  return rep;
}

SuiteReport dtn_suite(const DtnSuiteOptions& opt) {
  if (opt.hs.size() < 2) throw Error(ErrorCode::InvalidInput, "dtn sweep needs at least two values of h");
  const auto per_h = parallel_map<std::vector<DtnCompareRow>>(opt.hs.size(), opt.threads, [&](std::size_t i) {
    const double h = opt.hs[i];
    const int l = std::max(1, static_cast<int>(std::lround(1.0 / (2.0 * h))));
    return dtn_compare({l}, Complex(1.0, opt.theta) / h, opt.eps, opt.mu, opt.radius, h);
  });
  SuiteReport rep;
  rep.table.header = {"h", "l", "pol", "lambda_re", "lambda_im", "exact_re", "exact_im", "err_order0", "err_order1"};
  for (const Polarization pol : {Polarization::TE, Polarization::TM}) {
    std::vector<double> e0, e1;
    for (std::size_t i = 0; i < opt.hs.size(); ++i) {
      for (const auto& r : per_h[i]) {
        if (r.pol != pol) continue;
        rep.table.rows.push_back({opt.hs[i], static_cast<long long>(r.l), std::string(polarization_name(pol)),
                                  r.lambda.real(), r.lambda.imag(), r.exact.real(), r.exact.imag(), r.err0, r.err1});
        if (r.resonant) rep.notes.push_back("interior resonance at l = " + std::to_string(r.l));
        e0.push_back(r.err0);
        e1.push_back(r.err1);
      }
    }
    const std::string name = polarization_name(pol);
    rep.checks.push_back(at_least("slope_order0/" + name, loglog_slope(opt.hs, e0), opt.min_slope0));
    rep.checks.push_back(at_least("slope_order1/" + name, loglog_slope(opt.hs, e1), opt.min_slope1));
  }
  return rep;
}

SuiteReport impedance_bound_suite(const ImpedanceBoundOptions& opt) {
  const std::size_t nl = static_cast<std::size_t>(opt.l_max);
  const auto per_theta = parallel_map<std::vector<double>>(opt.thetas.size(), opt.threads, [&](std::size_t t) {
    const double theta = opt.thetas[t];
    const Complex lambda = Complex(1.0, theta) / opt.h;
    std::vector<double> q(nl);
    for (std::size_t i = 0; i < nl; ++i) {
      const int l = static_cast<int>(i) + 1;
      const double bracket = std::sqrt(1.0 + opt.h * opt.h * l * (l + 1.0) / (opt.radius * opt.radius));
      for (const Polarization pol : {Polarization::TE, Polarization::TM}) {
        const Complex Z = exact_mode_impedance(l, lambda, opt.eps, opt.mu, opt.radius, pol).value;
        q[i] = std::max(q[i], std::abs(Z) * std::sqrt(theta) / bracket);
      }
    }
    return q;
  });
  SuiteReport rep;
  rep.table.header = {"theta", "l", "scaled_impedance"};
  double top = 0, bottom = kInf;
  for (std::size_t t = 0; t < opt.thetas.size(); ++t) {
    double m = 0;
    for (std::size_t i = 0; i < nl; ++i) {
      rep.table.rows.push_back({opt.thetas[t], static_cast<long long>(i + 1), per_theta[t][i]});
      m = std::max(m, per_theta[t][i]);
    }
    top = std::max(top, m);
    bottom = std::min(bottom, m);
  }
  rep.checks.push_back(at_most("theta_variation", top / bottom, opt.max_variation));
  return rep;
}

namespace {

void add_tiles(SuiteReport& rep, const RegionReport& rr) {
  for (const auto& t : rr.tiles) {
    rep.table.rows.push_back({t.rect.re0, t.rect.re1, t.rect.im0, t.rect.im1, static_cast<long long>(t.l),
                              std::string(polarization_name(t.pol)), static_cast<long long>(t.winding),
                              std::string(t.outline ? "outline" : "tile")});
  }
  for (const auto& v : rr.violators) {
    rep.notes.push_back("root in region: " + std::to_string(v.real()) + " + " + std::to_string(v.imag()) + "i");
  }
}

}  // namespace

SuiteReport te_scan_suite(const TeScanOptions& opt) {
  SuiteReport rep;
  rep.table.header = {"re0", "re1", "im0", "im1", "l", "pol", "winding", "contour"};
  const TransmissionConfig& cfg = opt.cfg;
  if (!cfg.satisfies_hypotheses()) rep.notes.push_back(cfg.hypothesis_label());
  double C = cfg.C;
  if (opt.mode == TeScanMode::Calibrate) {
    C = calibrate_C(cfg, opt.C_hi, opt.C_tol);
    rep.notes.push_back("calibrated C = " + std::to_string(C));
  }
  const RegionReport rr = region_scan(cfg, C);
  add_tiles(rep, rr);
  rep.notes.push_back("roots in region = " + std::to_string(rr.total) + ", contour retries = " + std::to_string(rr.retries));
  switch (opt.mode) {
    case TeScanMode::Informational:
      rep.checks.push_back({"region_roots", static_cast<double>(rr.total), -kInf, kInf});
      break;
    case TeScanMode::Certify:
      rep.checks.push_back(at_most("region_roots", rr.total, 0));
      break;
    case TeScanMode::Calibrate: {
      rep.checks.push_back({"calibrated_C", C, 0.0, opt.C_hi});
      rep.checks.push_back(at_most("region_roots", rr.total, 0));
      const auto strip = strip_zeros(cfg, C, cfg.im_min, opt.strip_l_max);
      if (!strip.empty()) {
        // roots come out ordered by mode, then by real part
        rep.notes.push_back("strip roots = " + std::to_string(strip.size()) + ", first " +
                            std::to_string(strip.front().real()) + " + " + std::to_string(strip.front().imag()) + "i");
      }
      rep.checks.push_back(at_least("strip_roots", static_cast<double>(strip.size()), 1));
      break;
    }
  }
  return rep;
}

SuiteReport quantizer_suite(const QuantizerSuiteOptions& opt) {
  // xi-bump on the right, trigonometric multiplier on the left: the order in
  // which left quantization is not exact
  const GridSymbol bump = GridSymbol::xi_only("bump", [](double a, double b) {
    return std::exp(-((a - 0.3) * (a - 0.3) + (b - 0.2) * (b - 0.2)));
  });
  const GridSymbol trig = GridSymbol::x_only("trig", [](double a, double b) {
    return Complex(1.0 + 0.5 * std::cos(a) + 0.3 * std::sin(b));
  });
  SuiteReport rep;
  rep.table.header = {"quantity", "h", "theta", "defect_norm", "bound_norm"};
  const Curve comp = composition_defect(bump, trig, opt.hs, opt.n);
  for (const auto& p : comp.points) rep.table.rows.push_back({std::string("composition"), p.h, 0.0, p.value, p.h});

  const GridOperator one = quantize(GridSymbol::constant(1.0), opt.hs.front(), opt.n);
  const double norm_one = operator_norm(one);
  rep.table.rows.push_back({std::string("identity_norm"), opt.hs.front(), 0.0, norm_one, 1.0});

  auto inv_rho = [](double theta) {
    return GridSymbol::xi_only("rho^-1", [theta](double a, double b) {
      return 1.0 / rho_of(a * a + b * b, Complex(1.0, theta), 1.0);
    });
  };
  const Curve growth = boundedness_check(inv_rho, opt.thetas, opt.bound_h, opt.n);
  for (const auto& p : growth.points) {
    rep.table.rows.push_back({std::string("rho_inverse"), p.h, p.theta, p.value, 1.0 / std::sqrt(p.theta)});
  }
  rep.checks.push_back({"composition_slope", comp.slope, opt.slope_target - opt.slope_window,
                        opt.slope_target + opt.slope_window});
  rep.checks.push_back(at_most("identity_norm_error", std::abs(norm_one - 1.0), 0.0));
  rep.checks.push_back({"rho_inverse_exponent", -growth.slope, opt.exponent_target - opt.exponent_window,
                        opt.exponent_target + opt.exponent_window});
  return rep;
}

}  // namespace mdtn
