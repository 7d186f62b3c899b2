#include "mdtn/geometry.hpp"

#include <cstdio>
#include <sstream>

namespace mdtn {

std::string SurfaceChart::label() const {
  char buf[160];
  switch (kind) {
    case ChartKind::Plane:
      return "plane";
    case ChartKind::Sphere:
      std::snprintf(buf, sizeof buf, "sphere(%.17g)", radius);
      return buf;
    case ChartKind::Ellipsoid:
      std::snprintf(buf, sizeof buf, "ellipsoid(%.17g,%.17g,%.17g)", semi_axes[0], semi_axes[1], semi_axes[2]);
      return buf;
  }
  return "unknown";
}

bool SurfaceChart::in_domain(double x2, double /*x3*/) const {
  if (kind == ChartKind::Plane) return true;
  return x2 >= theta_margin && x2 <= M_PI - theta_margin;
}

void SurfaceChart::require_domain(double x2, double x3) const {
  if (!in_domain(x2, x3)) throw Error(ErrorCode::InvalidInput, "point outside the chart domain");
}

CovectorData covector_data(const SurfaceChart& chart, double x2, double x3, double xi2, double xi3) {
  const auto g = gamma_series<Complex>(chart, x2, x3, 0, 0);
  const C3Vector nu = vec_value(g.nu);
  const C3Vector beta = vec_value(beta_jets(g, xi2, xi3));
  CovectorData out;
  for (std::size_t i = 0; i < 3; ++i) {
    out.nu[i] = nu[i].real();
    out.beta[i] = beta[i].real();
  }
  out.r0 = dot(out.beta, out.beta);
  return out;
}

namespace {

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "bad number in media formula: '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw Error(ErrorCode::ConfigError, "bad number in media formula: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

MediaFormula MediaFormula::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = colon == std::string::npos ? "const" : text.substr(0, colon);
  const std::string args = colon == std::string::npos ? text : text.substr(colon + 1);
  const auto v = parse_numbers(args);
  auto need = [&](std::size_t n) {
    if (v.size() != n) throw Error(ErrorCode::ConfigError, "media formula '" + text + "' has the wrong number of constants");
  };
  MediaFormula f;
  if (kind == "const") {
    need(1);
    f = constant(v[0]);
  } else if (kind == "linear") {
    need(4);
    f.kind = MediaKind::Linear;
    f.a = v[0];
    f.c = {v[1], v[2], v[3]};
  } else if (kind == "radial") {
    need(2);
    f.kind = MediaKind::Radial;
    f.a = v[0];
    f.b = v[1];
  } else if (kind == "exp") {
    need(5);
    f.kind = MediaKind::Exponential;
    f.a = v[0];
    f.b = v[1];
    f.c = {v[2], v[3], v[4]};
  } else {
    throw Error(ErrorCode::ConfigError, "unknown media formula kind '" + kind + "'");
  }
  return f;
}

std::string MediaFormula::describe() const {
  char buf[256];
  switch (kind) {
    case MediaKind::Constant:
      std::snprintf(buf, sizeof buf, "const:%.17g", a);
      break;
    case MediaKind::Linear:
      std::snprintf(buf, sizeof buf, "linear:%.17g,%.17g,%.17g,%.17g", a, c[0], c[1], c[2]);
      break;
    case MediaKind::Radial:
      std::snprintf(buf, sizeof buf, "radial:%.17g,%.17g", a, b);
      break;
    case MediaKind::Exponential:
      std::snprintf(buf, sizeof buf, "exp:%.17g,%.17g,%.17g,%.17g,%.17g", a, b, c[0], c[1], c[2]);
      break;
  }
  return buf;
}

}  // namespace mdtn
