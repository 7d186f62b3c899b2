#include "mdtn/transport.hpp"

#include <cmath>

#include "mdtn/spectral.hpp"

namespace mdtn {

namespace {

JetVec zero_vec(int order) {
  const CJet z(2, order);
  return {z, z, z};
}

JetVec scale(const CJet& s, const JetVec& v) { return {s * v[0], s * v[1], s * v[2]}; }
JetVec scale(Complex s, const JetVec& v) { return {v[0] * s, v[1] * s, v[2] * s}; }

Vec3<Complex> value(const JetVec& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

C3Matrix columns_of(const std::vector<std::vector<std::vector<JetVec>>>& t, int j, int k) {
  C3Matrix out;
  for (int c = 0; c < 3; ++c) out.set_column(static_cast<std::size_t>(c), value(t[c][j][k]));
  return out;
}

JetMat jet_columns_of(const std::vector<std::vector<std::vector<JetVec>>>& t, int j, int k) {
  JetMat out;
  for (int c = 0; c < 3; ++c) out.set_column(static_cast<std::size_t>(c), t[c][j][k]);
  return out;
}

struct SeriesAccess {
  const PhaseSeries<Complex>& ps;
  bool flat_media;
  CJet mu(int k) const {
    const auto& s = ps.media.mu[static_cast<std::size_t>(k)];
    return flat_media && k > 0 ? CJet(2, s.order()) : s;
  }
  CJet eps(int k) const {
    const auto& s = ps.media.eps[static_cast<std::size_t>(k)];
    return flat_media && k > 0 ? CJet(2, s.order()) : s;
  }
};

}  // namespace

JetMat AmplitudeTable::A(int j, int k) const { return jet_columns_of(a, j, k); }
JetMat AmplitudeTable::B(int j, int k) const { return jet_columns_of(b, j, k); }
C3Matrix AmplitudeTable::A_value(int j, int k) const { return columns_of(a, j, k); }
C3Matrix AmplitudeTable::B_value(int j, int k) const { return columns_of(b, j, k); }

C3Matrix AmplitudeTable::boundary_block(int j) const {
  const Vec3<Complex> nu = value(ps.geom.nu);
  C3Matrix out;
  for (int c = 0; c < 3; ++c) out.set_column(static_cast<std::size_t>(c), cross(nu, value(b[c][j][0])));
  return out;
}

JetVec curl_coefficient(const GammaSeries<Complex>& g, const std::vector<JetVec>& v, int k) {
  JetVec out = zero_vec(g.order);
  const int n = static_cast<int>(v.size());
  for (int l = 0; l <= k; ++l) {
    const JetMat& gam = g.gamma[static_cast<std::size_t>(k - l)];
    if (l < n) {
      const JetVec& vl = v[static_cast<std::size_t>(l)];
      out += cross(gam.column(1), vec_derivative(vl, 0));
      out += cross(gam.column(2), vec_derivative(vl, 1));
    }
    if (l + 1 < n) out += scale(Complex(l + 1), cross(gam.column(0), v[static_cast<std::size_t>(l + 1)]));
  }
  return out;
}

namespace {

// Literal hierarchy: a_{0,k} along nu, and every a_{j,k} (j >= 1) from the
// algebraic system with nu x a = 0. Leaves the second equation unbalanced for j >= 1.
void literal_levels(const PhaseSeries<Complex>& ps, const SeriesAccess& s, int N, const JetVec& g,
                    std::vector<std::vector<JetVec>>& a, std::vector<std::vector<JetVec>>& b) {
  const int M = ps.geom.order;
  const auto& psi = ps.psi;
  const JetVec& nu = ps.geom.nu;
  const Complex z = ps.sp.z;
  const CJet eps0 = s.eps(0), mu0 = s.mu(0);
  const CJet zmu0_inv = inverse(mu0 * z);
  const CJet rho_inv = inverse(ps.rho);
  const JetVec zero = zero_vec(M);
  const Complex I(0, 1);
  const auto s00 = cross_solve<CJet>(ps.rho, nu, ps.beta, z, eps0, mu0, zero, zero, g);
  a[0].push_back(s00.a);
  b[0].push_back(s00.b);
  std::vector<CJet> at_scalar(static_cast<std::size_t>(N), CJet(2, M));
  for (int k = 1; k < N; ++k) {
    CJet acc = dot(psi[static_cast<std::size_t>(k)], a[0][0]);
    for (int l = 1; l < k; ++l) acc = acc + dot(psi[static_cast<std::size_t>(l)], nu) * at_scalar[static_cast<std::size_t>(k - l)];
    at_scalar[static_cast<std::size_t>(k)] = -(acc * rho_inv);
    a[0].push_back(scale(at_scalar[static_cast<std::size_t>(k)], nu));
  }
  for (int k = 1; k < N; ++k) {
    JetVec rhs = zero;
    for (int l = 0; l <= k; ++l) rhs += cross(psi[static_cast<std::size_t>(k - l)], a[0][static_cast<std::size_t>(l)]);
    for (int l = 0; l < k; ++l) rhs -= scale(s.mu(k - l) * z, b[0][static_cast<std::size_t>(l)]);
    b[0].push_back(scale(zmu0_inv, rhs));
  }
  for (int j = 1; j < N; ++j) {
    const auto& ap = a[static_cast<std::size_t>(j - 1)];
    const auto& bp = b[static_cast<std::size_t>(j - 1)];
    auto& aj = a[static_cast<std::size_t>(j)];
    auto& bj = b[static_cast<std::size_t>(j)];
    for (int k = 0; k < N; ++k) {
      JetVec as = scale(I, curl_coefficient(ps.geom, ap, k));
      JetVec bs = scale(I, curl_coefficient(ps.geom, bp, k));
      for (int l = 0; l < k; ++l) {
        const JetVec& p = psi[static_cast<std::size_t>(k - l)];
        as -= cross(p, aj[static_cast<std::size_t>(l)]) - scale(s.mu(k - l) * z, bj[static_cast<std::size_t>(l)]);
        bs -= cross(p, bj[static_cast<std::size_t>(l)]) + scale(s.eps(k - l) * z, aj[static_cast<std::size_t>(l)]);
      }
      const auto sol = cross_solve<CJet>(ps.rho, nu, ps.beta, z, eps0, mu0, as, bs, zero);
      aj.push_back(sol.a);
      bj.push_back(sol.b);
    }
  }
}

// Hierarchy with ray transport. Eliminating b_j from the two equations of level
// j leaves <P, a_j> P = R_j with P = gamma grad phi and
//   R_j = i (z mu Curl b_{j-1} + P x Curl a_{j-1}),
// so R_j must be parallel to P at every x1-order. The x1-order k-1 of R_{j+1}
// contains i k (nu x (psi0 x t) + psi0 x (nu x t)) = i k (<nu,t> psi0 - 2 rho t)
// for the part t of a_{j,k} with <psi0, t> = 0; that fixes t. The P-component
// of a_{j,k} comes from <P, a_j> = s_j. Each level carries k = 0 .. N.
void transport_levels(const PhaseSeries<Complex>& ps, const SeriesAccess& s, int N, const JetVec& g,
                      std::vector<std::vector<JetVec>>& a, std::vector<std::vector<JetVec>>& b) {
  const int M = ps.geom.order;
  const auto& psi = ps.psi;
  const JetVec& nu = ps.geom.nu;
  const Complex z = ps.sp.z;
  const CJet eps0 = s.eps(0), mu0 = s.mu(0);
  const CJet zmu0_inv = inverse(mu0 * z);
  const CJet rho_inv = inverse(ps.rho);
  const JetVec& psi0 = psi[0];
  const CJet psi0_sq_inv = inverse(dot(psi0, psi0));
  const JetVec zero = zero_vec(M);
  const Complex I(0, 1);

  std::vector<CJet> s_cur(static_cast<std::size_t>(N) + 1, CJet(2, M));  // <P, a_j>_k
  for (int j = 0; j < N; ++j) {
    auto& aj = a[static_cast<std::size_t>(j)];
    auto& bj = b[static_cast<std::size_t>(j)];
    const std::vector<JetVec> none;
    const auto& ap = j > 0 ? a[static_cast<std::size_t>(j - 1)] : none;
    const auto& bp = j > 0 ? b[static_cast<std::size_t>(j - 1)] : none;
    auto prev_curl = [&](const std::vector<JetVec>& v, int k) {
      return j > 0 ? scale(I, curl_coefficient(ps.geom, v, k)) : zero;
    };
    // b_{j,k} from the first equation, given a_{j,0..k} and b_{j,0..k-1}
    auto solve_b = [&](int k) {
      JetVec rhs = scale(Complex(-1), prev_curl(ap, k));
      for (int l = 0; l <= k; ++l) rhs += cross(psi[static_cast<std::size_t>(k - l)], aj[static_cast<std::size_t>(l)]);
      for (int l = 0; l < k; ++l) rhs -= scale(s.mu(k - l) * z, bj[static_cast<std::size_t>(l)]);
      return scale(zmu0_inv, rhs);
    };
    std::vector<JetVec> ca, cb;  // curl coefficients of level j, final once a_{j,k+1} is
    std::vector<CJet> s_next;    // <P, a_{j+1}>_k
    // V_q = R_{j+1,q} - sum_{m>=1} s_next[q-m] psi_m
    auto compute_v = [&](int q) {
      JetVec r = zero;
      for (int l = 0; l <= q; ++l) {
        r += scale(s.mu(q - l) * z, cb[static_cast<std::size_t>(l)]);
        r += cross(psi[static_cast<std::size_t>(q - l)], ca[static_cast<std::size_t>(l)]);
      }
      r = scale(I, r);
      for (int m = 1; m <= q; ++m) r -= scale(s_next[static_cast<std::size_t>(q - m)], psi[static_cast<std::size_t>(m)]);
      return r;
    };

    const auto s0 = cross_solve<CJet>(ps.rho, nu, ps.beta, z, eps0, mu0, prev_curl(ap, 0), prev_curl(bp, 0),
                                      j == 0 ? g : zero);
    aj.push_back(s0.a);
    bj.push_back(s0.b);
    for (int k = 1; k <= N; ++k) {
      CJet sigma = s_cur[static_cast<std::size_t>(k)];
      for (int l = 0; l < k; ++l) sigma = sigma - dot(psi[static_cast<std::size_t>(k - l)], aj[static_cast<std::size_t>(l)]);
      aj.push_back(scale(sigma * rho_inv, nu));
      bj.push_back(solve_b(k));
      ca.push_back(curl_coefficient(ps.geom, aj, k - 1));
      cb.push_back(curl_coefficient(ps.geom, bj, k - 1));
      const JetVec w = scale(inverse(ps.rho * Complex(0, 2.0 * k)), compute_v(k - 1));
      const JetVec t = w - scale(dot(psi0, w) * psi0_sq_inv, psi0);
      aj.back() += t;
      bj.back() = solve_b(k);
      ca.back() = curl_coefficient(ps.geom, aj, k - 1);
      cb.back() = curl_coefficient(ps.geom, bj, k - 1);
      s_next.push_back(dot(compute_v(k - 1), psi0) * psi0_sq_inv);
    }
    ca.push_back(curl_coefficient(ps.geom, aj, N));
    cb.push_back(curl_coefficient(ps.geom, bj, N));
    s_next.push_back(dot(compute_v(N), psi0) * psi0_sq_inv);
    s_cur = s_next;
  }
}

}  // namespace

AmplitudeColumn transport_datum(const PhaseSeries<Complex>& ps, const Media& media, int N, const C3Vector& ft,
                                const TransportOptions& opt) {
  (void)media;
  const int need = opt.literal ? N : N + 1;
  if (N < 1 || ps.N < need) throw Error(ErrorCode::InvalidInput, "phase series too short for this transport order");
  if (ps.flattened && !opt.literal) {
    throw Error(ErrorCode::InvalidInput, "ray transport is singular for a flattened phase; see boundary_symbol");
  }
  const SeriesAccess s{ps, opt.flattened_media};
  const int M = ps.geom.order;
  const JetVec f{CJet(2, M, ft[0]), CJet(2, M, ft[1]), CJet(2, M, ft[2])};
  const JetVec g = -cross(ps.geom.nu, f);
  AmplitudeColumn out;
  out.a.resize(static_cast<std::size_t>(N));
  out.b.resize(static_cast<std::size_t>(N));
  try {
    if (opt.literal) {
      literal_levels(ps, s, N, g, out.a, out.b);
    } else {
      transport_levels(ps, s, N, g, out.a, out.b);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OrderUnderflow) {
      throw Error(ErrorCode::OrderBudgetExceeded, "jet order too small for the transport hierarchy");
    }
    throw;
  }
  return out;
}

AmplitudeTable transport_coeffs(const PhaseSeries<Complex>& ps, const Media& media, int N,
                                const TransportOptions& opt) {
  AmplitudeTable at;
  at.ps = ps;
  at.media = media;
  at.N = N;
  for (int c = 0; c < 3; ++c) {
    C3Vector e{Complex(0), Complex(0), Complex(0)};
    e[static_cast<std::size_t>(c)] = Complex(1);
    AmplitudeColumn col = transport_datum(ps, media, N, e, opt);
    at.a.push_back(std::move(col.a));
    at.b.push_back(std::move(col.b));
  }
  return at;
}

AmplitudeTable transport_setup(const SurfaceChart& chart, const Media& media, const SpectralParameter& sp, double x2,
                               double x3, double xi2, double xi3, int N, bool flattened, bool literal) {
  EikonalOptions eo;
  eo.jet_order = 2 * N + 4;
  eo.flattened = flattened;
  const auto ps = eikonal_coeffs<Complex>(chart, media, sp, x2, x3, xi2, xi3, N + 1, eo);
  TransportOptions to;
  to.flattened_media = flattened;
  to.literal = literal;
  return transport_coeffs(ps, media, N, to);
}

std::pair<JetVec, JetVec> transport_equation_coefficient(const AmplitudeTable& at, int c, int j, int k) {
  const SeriesAccess s{at.ps, false};
  const auto& psi = at.ps.psi;
  const Complex z = at.ps.sp.z;
  const auto& a = at.a[c][j];
  const auto& b = at.b[c][j];
  JetVec first = zero_vec(at.ps.geom.order), second = first;
  for (int l = 0; l <= k; ++l) {
    const JetVec& p = psi[static_cast<std::size_t>(k - l)];
    first += cross(p, a[static_cast<std::size_t>(l)]) - scale(s.mu(k - l) * z, b[static_cast<std::size_t>(l)]);
    second += cross(p, b[static_cast<std::size_t>(l)]) + scale(s.eps(k - l) * z, a[static_cast<std::size_t>(l)]);
  }
  if (j >= 1) {
    first -= scale(Complex(0, 1), curl_coefficient(at.ps.geom, at.a[c][j - 1], k));
    second -= scale(Complex(0, 1), curl_coefficient(at.ps.geom, at.b[c][j - 1], k));
  }
  return {first, second};
}

CJet normalization_coefficient(const AmplitudeTable& at, int c, int k) {
  CJet acc = dot(at.ps.psi[0], at.a[c][0][static_cast<std::size_t>(k)]);
  for (int l = 1; l <= k; ++l) {
    acc = acc + dot(at.ps.psi[static_cast<std::size_t>(l)], at.a[c][0][static_cast<std::size_t>(k - l)]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Boundary symbol

C3Matrix BoundarySymbol::full(double h) const {
  C3Matrix out = C3Matrix::filled(Complex(0));
  double p = 1.0;
  for (const auto& blk : blocks) {
    out = out + Complex(p) * blk;
    p *= h;
  }
  return out;
}

namespace {

using XiMat = Mat3<CJet>;

// sum_j sum_alpha -i d_alpha nu_j  d_xi_alpha(f) iota_nu I_j, with f given as
// first-order jets in (xi2, xi3).
C3Matrix commutator_term(const JetVec& nu_x, const XiMat& f) {
  const Vec3<Complex> nu = value(nu_x);
  const C3Matrix iota = cross_matrix(nu, Complex(0));
  C3Matrix out = C3Matrix::filled(Complex(0));
  for (int alpha = 0; alpha < 2; ++alpha) {
    const MultiIndex ax = alpha == 0 ? MultiIndex{1, 0, 0} : MultiIndex{0, 1, 0};
    C3Matrix df;
    for (std::size_t i = 0; i < 9; ++i) df.m[i] = f.m[i].coeff(ax);
    for (int j = 0; j < 3; ++j) {
      const Complex dnu = nu_x[static_cast<std::size_t>(j)].coeff(ax);
      if (dnu == Complex(0)) continue;
      Vec3<Complex> e{Complex(0), Complex(0), Complex(0)};
      e[static_cast<std::size_t>(j)] = Complex(1);
      const C3Matrix Ij = cross_matrix(e, Complex(0));
      out = out + (Complex(0, -1) * dnu) * (df * (iota * Ij));
    }
  }
  return out;
}

// iota_nu B_{1,0} continued to eps mu = 0 with mu0 kept. The construction
// divides by <psi0, psi0> = z^2 eps mu, but the limit is regular; it is taken
// as the mean over a circle of complex eps mu values well inside the disc where
// rho stays away from zero.
C3Matrix flattened_b10(const AmplitudeTable& at, int nodes, double flat_radius, int jet_order) {
  const auto& ps = at.ps;
  const auto& geom = ps.geom;
  const Complex z = ps.sp.z;
  const double mu0 = std::real(ps.media.mu[0].value());
  const Vec3<Complex> bc = value(ps.beta);
  const double r0 = std::real(dot(bc, bc));
  if (!(r0 > 0)) throw Error(ErrorCode::ZeroFrequencyCovector, "flattened symbol needs r0 > 0");
  const double radius = flat_radius * r0 / std::norm(z);
  EikonalOptions eo;
  eo.jet_order = jet_order;
  eo.check_im_phi = false;
  C3Matrix sum = C3Matrix::filled(Complex(0));
  for (int i = 0; i < nodes; ++i) {
    const Complex w = std::polar(radius, 2.0 * M_PI * (i + 0.5) / nodes);
    eo.constant_media = std::array<Complex, 2>{w / mu0, Complex(mu0)};
    const auto pw = eikonal_coeffs<Complex>(geom.chart, at.media, ps.sp, geom.x2, geom.x3, ps.xi2, ps.xi3, 3, eo);
    const AmplitudeTable tw = transport_coeffs(pw, at.media, 2);
    sum = sum + tw.boundary_block(1);
  }
  return Complex(1.0 / nodes) * sum;
}

}  // namespace

BoundarySymbol boundary_symbol(const AmplitudeTable& at, const BoundarySymbolOptions& opt) {
  if (opt.J < 0 || opt.J > at.N - 1) throw Error(ErrorCode::InvalidInput, "truncation J must lie in 0..N-1");
  if (at.N < 2) throw Error(ErrorCode::InvalidInput, "the first-order symbol needs N >= 2");
  const auto& ps = at.ps;
  const auto& geom = ps.geom;
  BoundarySymbol out;
  for (int j = 0; j <= opt.J; ++j) out.blocks.push_back(at.boundary_block(j));
  out.leading = out.blocks[0];
  out.b10 = at.boundary_block(1);

  const Complex z = ps.sp.z;
  const double mu0 = std::real(ps.media.mu[0].value());
  const double eps0 = std::real(ps.media.eps[0].value());
  const Vec3<Complex> bc = value(ps.beta);
  const Vec3<double> beta{std::real(bc[0]), std::real(bc[1]), std::real(bc[2])};
  out.r0 = dot(beta, beta);
  out.m = m_matrix(z, ps.rho.value(), mu0, beta);
  out.eta = cutoff_eta(out.r0, opt.C0);

  // first-order jets in xi'
  const CJet x2 = CJet::variable(2, 1, 0, Complex(ps.xi2));
  const CJet x3 = CJet::variable(2, 1, 1, Complex(ps.xi3));
  const auto& g0 = geom.gamma[0];
  const Vec3<Complex> t2 = value(g0.column(1)), t3 = value(g0.column(2));
  const JetVec bj{x2 * t2[0] + x3 * t3[0], x2 * t2[1] + x3 * t3[1], x2 * t2[2] + x3 * t3[2]};
  const CJet r0 = dot(bj, bj);
  const CJet one(2, 1, Complex(1));
  const XiMat Bm = outer(bj, bj);
  const XiMat Id = XiMat::identity(CJet(2, 1), one);
  const CJet izmu = CJet(2, 1, Complex(0, 1) / (z * mu0));
  const CJet sq = sqrt_principal(r0);
  const CJet eta = CJet(2, 1, Complex(out.eta)) + (r0 - Complex(out.r0)) * Complex(cutoff_eta_derivative(out.r0, opt.C0));
  const XiMat m0 = (izmu * sq) * (Id - inverse(r0) * Bm);
  const XiMat cut_m0 = (one - eta) * m0;
  out.n = commutator_term(geom.nu, cut_m0);

  const CJet rho = sqrt_upper(CJet(2, 1, z * z * (eps0 * mu0)) - r0);
  const XiMat mj = CJet(2, 1, Complex(1) / (z * mu0)) * (rho * Id + inverse(rho) * Bm);
  out.n_full = commutator_term(geom.nu, mj);

  out.b_flat = Complex(1.0 - out.eta) * flattened_b10(at, opt.flat_nodes, opt.flat_radius, opt.flat_jet_order);
  out.m_tilde = out.n + out.b_flat;
  out.m_tilde_full = out.n_full + out.b10;
  return out;
}

// ---------------------------------------------------------------------------
// Maxwell residual

std::pair<C3Vector, C3Vector> maxwell_residual(const AmplitudeTable& at, double x1, double h, const C3Vector& ft) {
  const auto& ps = at.ps;
  if (!(x1 > 0) || x1 > ps.retained_limit() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutsideRetainedRegion, "x1 outside (0, 2 delta min(1, |rho|^3)]");
  }
  Complex phi;
  Vec3<Complex> grad;
  phase_at(ps, x1, phi, grad);
  const C3Matrix gam = gamma_exact(ps.geom, x1);
  const auto em = media_exact(at.media, ps.geom, x1);
  const Complex z = ps.sp.z;

  // amplitude values and first derivatives (d1, d2, d3) at the base point
  auto assemble = [&](const std::vector<std::vector<std::vector<JetVec>>>& t, C3Vector& v, std::array<C3Vector, 3>& d) {
    const C3Vector zero{Complex(0), Complex(0), Complex(0)};
    v = zero;
    d = {zero, zero, zero};
    for (int c = 0; c < 3; ++c) {
      double hj = 1.0;
      for (int j = 0; j < at.N; ++j) {
        double xk = 1.0, xkm = 0.0;
        for (std::size_t k = 0; k < t[c][j].size(); ++k) {
          const JetVec& w = t[c][j][k];
          if (w[0].order() < 1) throw Error(ErrorCode::OrderBudgetExceeded, "amplitude jets lack first derivatives");
          const Complex f = ft[static_cast<std::size_t>(c)] * hj;
          for (std::size_t i = 0; i < 3; ++i) {
            v[i] += f * xk * w[i].value();
            d[0][i] += f * (static_cast<double>(k) * xkm) * w[i].value();
            d[1][i] += f * xk * w[i].coeff({1, 0, 0});
            d[2][i] += f * xk * w[i].coeff({0, 1, 0});
          }
          xkm = xk;
          xk *= x1;
        }
        hj *= h;
      }
    }
  };
  C3Vector a, b;
  std::array<C3Vector, 3> da, db;
  assemble(at.a, a, da);
  assemble(at.b, b, db);
  auto curl = [&](const std::array<C3Vector, 3>& d) {
    C3Vector out{Complex(0), Complex(0), Complex(0)};
    for (std::size_t m = 0; m < 3; ++m) out += cross(gam.column(m), d[m]);
    return out;
  };
  const C3Vector p = gam * grad;
  const Complex I(0, 1);
  const C3Vector v1 = I * cross(p, a) - (I * z * em[1]) * b + Complex(h) * curl(da);
  const C3Vector v2 = I * cross(p, b) + (I * z * em[0]) * a + Complex(h) * curl(db);
  return {v1, v2};
}

}  // namespace mdtn
