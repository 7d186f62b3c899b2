#pragma once

// Independent re-expansion of the transport hierarchy in 3-variable jets.
// Shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <vector>

#include "mdtn/transport.hpp"

namespace mdtn::testing {

// Rebuilds both Maxwell equations of level j in (x1, x2, x3)-jets from the raw
// series (phase, gamma, amplitudes) and returns the largest x1^k coefficient,
// k < N, at the base point.
struct JetOracle {
  const AmplitudeTable& at;
  int total;  // total order of the 3-variable jets

  CJet lift(const std::vector<CJet>& series) const {
    CJet out(3, total);
    for (std::size_t k = 0; k < series.size() && static_cast<int>(k) <= total; ++k) {
      out = out + lift_leading(series[k], static_cast<int>(k), total);
    }
    return out;
  }
  JetVec lift_vec(const std::vector<JetVec>& series) const {
    JetVec out;
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<CJet> comp;
      for (const auto& v : series) comp.push_back(v[i]);
      out[i] = lift(comp);
    }
    return out;
  }
  Mat3<CJet> gamma() const {
    Mat3<CJet> out;
    for (std::size_t i = 0; i < 9; ++i) {
      std::vector<CJet> comp;
      for (const auto& g : at.ps.geom.gamma) comp.push_back(g.m[i]);
      out.m[i] = lift(comp);
    }
    return out;
  }
  JetVec curl(const Mat3<CJet>& g, const JetVec& v) const {
    JetVec out{CJet(3, total), CJet(3, total), CJet(3, total)};
    for (int m = 0; m < 3; ++m) out += cross(g.column(static_cast<std::size_t>(m)), vec_derivative(v, m));
    return out;
  }
  std::pair<double, double> worst(int c, int j) const {
    const Complex z = at.ps.sp.z;
    const Mat3<CJet> g = gamma();
    const CJet phi = lift(at.ps.phi);
    const JetVec grad{phi.derivative(0), phi.derivative(1), phi.derivative(2)};
    const JetVec P = g * grad;
    const CJet eps = lift(at.ps.media.eps), mu = lift(at.ps.media.mu);
    const JetVec a = lift_vec(at.a[c][j]), b = lift_vec(at.b[c][j]);
    JetVec e1 = cross(P, a) - (mu * z) * b;
    JetVec e2 = cross(P, b) + (eps * z) * a;
    if (j > 0) {
      e1 -= Complex(0, 1) * curl(g, lift_vec(at.a[c][j - 1]));
      e2 -= Complex(0, 1) * curl(g, lift_vec(at.b[c][j - 1]));
    }
    double w1 = 0, w2 = 0;
    for (int k = 0; k < at.N; ++k) {
      for (std::size_t i = 0; i < 3; ++i) {
        w1 = std::max(w1, std::abs(e1[i].coeff({k, 0, 0})));
        w2 = std::max(w2, std::abs(e2[i].coeff({k, 0, 0})));
      }
    }
    return {w1, w2};
  }
};

}  // namespace mdtn::testing
