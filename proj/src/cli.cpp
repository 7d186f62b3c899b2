#include "mdtn/cli.hpp"

#include <sstream>

#include "mdtn/error.hpp"

namespace mdtn {

namespace {

struct CommandInfo {
  Command command;
  const char* name;
  const char* section;
};

constexpr CommandInfo kCommands[] = {
    {Command::Identities, "identities", "identities"}, {Command::Eikonal, "eikonal", "eikonal"},
    {Command::Residual, "residual", "residual"},       {Command::DtnCompare, "dtn-compare", "dtn"},
    {Command::TeScan, "te-scan", "te"},                {Command::Quantizer, "quantizer", "quantizer"},
};

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

SurfaceChart read_chart(KeyValueConfig& kv) {
  const std::string kind = kv.text("chart", "sphere");
  if (kind == "plane") return SurfaceChart::plane();
  if (kind == "sphere") return SurfaceChart::sphere(kv.positive("radius", 1.0));
  if (kind == "ellipsoid") {
    const auto ax = kv.numbers("semi_axes", {1.0, 1.3, 0.8});
    if (ax.size() != 3 || !(ax[0] > 0 && ax[1] > 0 && ax[2] > 0)) config_error("semi_axes: expected three positive values");
    return SurfaceChart::ellipsoid(ax[0], ax[1], ax[2]);
  }
  config_error("chart: expected plane, sphere or ellipsoid, got '" + kind + "'");
}

MediaFormula read_media(KeyValueConfig& kv, const std::string& key) {
  const std::string text = kv.text(key, "1");
  try {
    return MediaFormula::parse(text);
  } catch (const Error& e) {
    config_error(key + ": " + e.what());
  }
}

std::array<double, 4> read_point(KeyValueConfig& kv, const std::string& key) {
  const auto p = kv.numbers(key, {1.0, 0.2, 0.8, 1.2});
  if (p.size() != 4) config_error(key + ": expected x2, x3, xi2, xi3");
  return {p[0], p[1], p[2], p[3]};
}

double tolerance(KeyValueConfig& kv, const std::string& key, double builtin, const RunOverrides& o) {
  return kv.positive(key, o.tolerance.value_or(builtin));
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  config_error("unknown command '" + name + "'");
}

const char* command_name(Command c) {
  for (const auto& k : kCommands) {
    if (k.command == c) return k.name;
  }
  return "?";
}

const char* command_section(Command c) {
  for (const auto& k : kCommands) {
    if (k.command == c) return k.section;
  }
  return "?";
}

RunConfig resolve_config(Command command, KeyValueConfig& kv, const RunOverrides& o) {
  RunConfig cfg;
  cfg.command = command;
  if (o.output_dir) kv.set("output", *o.output_dir);
  if (o.threads) kv.set("threads", std::to_string(*o.threads));
  if (o.seed) kv.set("seed", std::to_string(*o.seed));
  kv.text("command", command_name(command));
  cfg.output_dir = kv.text("output", ".");
  cfg.threads = kv.integer("threads", 1, 1);
  cfg.seed = static_cast<std::uint64_t>(kv.integer("seed", 1, 0));

  const std::string s = std::string(command_section(command)) + ".";
  if (command == Command::Identities || command == Command::Eikonal || command == Command::Residual) {
    cfg.chart = read_chart(kv);
    cfg.media = {read_media(kv, "eps"), read_media(kv, "mu")};
  }
  switch (command) {
    case Command::Identities: {
      auto& x = cfg.identities;
      x.chart = cfg.chart;
      x.media = cfg.media;
      x.points = kv.integer(s + "points", x.points, 1);
      x.tol = tolerance(kv, s + "tolerance", x.tol, o);
      x.gamma_order = kv.integer(s + "gamma_order", x.gamma_order, 0);
      x.gamma_perturbation = kv.number(s + "gamma_perturbation", 0.0);
      x.seed = cfg.seed;
      x.threads = cfg.threads;
      break;
    }
    case Command::Eikonal: {
      auto& x = cfg.eikonal;
      x.chart = cfg.chart;
      x.media = cfg.media;
      x.orders = kv.integers(s + "orders", x.orders, 1);
      const auto range = kv.numbers(s + "x1_range", {x.x1_lo, x.x1_hi});
      if (range.size() != 2 || !(range[0] > 0 && range[1] > range[0])) config_error(s + "x1_range: expected 0 < lo < hi");
      x.x1_lo = range[0];
      x.x1_hi = range[1];
      x.samples = kv.integer(s + "samples", x.samples, 2);
      const auto pt = read_point(kv, s + "point");
      x.x2 = pt[0], x.x3 = pt[1], x.xi2 = pt[2], x.xi3 = pt[3];
      x.z = kv.complex(s + "z", x.z);
      x.h = kv.positive(s + "h", x.h);
      x.slope_margin = kv.positive(s + "slope_margin", x.slope_margin);
      x.flat_tol = tolerance(kv, s + "tolerance", x.flat_tol, o);
      x.threads = cfg.threads;
      break;
    }
    case Command::Residual: {
      auto& x = cfg.residual;
      x.chart = cfg.chart;
      x.media = cfg.media;
      x.N = kv.integer(s + "N", x.N, 1);
      const auto pt = read_point(kv, s + "point");
      x.x2 = pt[0], x.x3 = pt[1], x.xi2 = pt[2], x.xi3 = pt[3];
      x.z = kv.complex(s + "z", x.z);
      x.h = kv.positive(s + "h", x.h);
      x.tol = tolerance(kv, s + "tolerance", x.tol, o);
      x.boundary_tol = kv.positive(s + "boundary_tolerance", x.boundary_tol);
      break;
    }
    case Command::DtnCompare: {
      auto& x = cfg.dtn;
      x.eps = kv.positive(s + "eps", x.eps);
      x.mu = kv.positive(s + "mu", x.mu);
      x.radius = kv.positive(s + "radius", x.radius);
      x.theta = kv.positive(s + "theta", x.theta);
      x.hs = kv.numbers(s + "h", x.hs);
      if (x.hs.size() < 2) config_error(s + "h: need at least two values");
      for (const double h : x.hs) {
        if (!(h > 0)) config_error(s + "h: values must be positive");
      }
      x.min_slope0 = kv.number(s + "min_slope0", x.min_slope0);
      x.min_slope1 = kv.number(s + "min_slope1", x.min_slope1);
      x.threads = cfg.threads;
      break;
    }
    case Command::TeScan: {
      auto& x = cfg.te;
      auto& c = x.cfg;
      const std::string mode = kv.text(s + "mode", "certify");
      if (mode == "informational") {
        x.mode = TeScanMode::Informational;
      } else if (mode == "certify") {
        x.mode = TeScanMode::Certify;
      } else if (mode == "calibrate") {
        x.mode = TeScanMode::Calibrate;
      } else {
        config_error(s + "mode: expected informational, certify or calibrate");
      }
      c.eps1 = kv.positive(s + "eps1", c.eps1);
      c.mu1 = kv.positive(s + "mu1", c.mu1);
      c.eps2 = kv.positive(s + "eps2", c.eps2);
      c.mu2 = kv.positive(s + "mu2", c.mu2);
      c.c1 = kv.positive(s + "c1", c.c1);
      c.c2 = kv.positive(s + "c2", c.c2);
      c.radius = kv.positive(s + "radius", c.radius);
      c.L = kv.integer(s + "L", c.L, 1);
      c.C = kv.number(s + "C", c.C);
      if (c.C < 0) config_error(s + "C: must be non-negative");
      c.p = kv.positive(s + "p", c.p);
      c.lambda_max = kv.positive(s + "lambda_max", c.lambda_max);
      c.im_max = kv.positive(s + "im_max", c.im_max);
      c.im_min = kv.positive(s + "im_min", c.im_min);
      c.tile_width = kv.positive(s + "tile_width", c.tile_width);
      x.C_hi = kv.positive(s + "C_hi", x.C_hi);
      x.C_tol = kv.positive(s + "C_tol", x.C_tol);
      x.strip_l_max = kv.integer(s + "strip_l_max", x.strip_l_max, 1);
      break;
    }
    case Command::Quantizer: {
      auto& x = cfg.quantizer;
      x.n = kv.integer(s + "n", x.n, 2);
      x.hs = kv.numbers(s + "h", x.hs);
      x.thetas = kv.numbers(s + "thetas", x.thetas);
      for (const double v : x.hs) {
        if (!(v > 0)) config_error(s + "h: values must be positive");
      }
      for (const double v : x.thetas) {
        if (!(v > 0)) config_error(s + "thetas: values must be positive");
      }
      x.bound_h = kv.positive(s + "bound_h", x.bound_h);
      break;
    }
  }
  std::vector<std::string> others;
  for (const auto& k : kCommands) {
    if (k.command != command) others.push_back(std::string(k.section) + ".");
  }
  // chart and media keys are shared by the geometric commands only
  if (command == Command::DtnCompare || command == Command::TeScan || command == Command::Quantizer) {
    for (const char* key : {"chart", "radius", "semi_axes", "eps", "mu"}) others.emplace_back(key);
  }
  kv.reject_unused(others);
  cfg.resolved = kv.resolved();
  return cfg;
}

std::string render_csv(const RunConfig& cfg, const SuiteReport& rep) {
  std::ostringstream out;
  out << "# mdtn " << command_name(cfg.command) << "\n";
  out << "# resolved configuration:\n";
  for (const auto& [k, v] : cfg.resolved) out << "#   " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < rep.table.header.size(); ++i) out << (i ? "," : "") << rep.table.header[i];
  out << "\n";
  for (const auto& row : rep.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
  for (const auto& c : rep.checks) {
    out << "# check " << c.name << " value=" << format_number(c.value) << " range=[" << format_number(c.lo) << ", "
        << format_number(c.hi) << "] " << (c.pass() ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& n : rep.notes) out << "# note " << n << "\n";
  return out.str();
}

RunOutput run_suite(const RunConfig& cfg) {
  RunOutput out;
  SuiteReport rep;
  try {
    switch (cfg.command) {
      case Command::Identities: rep = identity_suite(cfg.identities); break;
      case Command::Eikonal: rep = eikonal_suite(cfg.eikonal); break;
      case Command::Residual: rep = residual_suite(cfg.residual); break;
      case Command::DtnCompare: rep = dtn_suite(cfg.dtn); break;
      case Command::TeScan: rep = te_scan_suite(cfg.te); break;
      case Command::Quantizer: rep = quantizer_suite(cfg.quantizer); break;
    }
  } catch (const Error& e) {
    out.status = 2;
    out.summary.push_back(std::string(command_name(cfg.command)) + ": ERROR " + e.what());
    return out;
  }
  out.csv = render_csv(cfg, rep);
  const Check* bad = rep.first_failure();
  out.status = bad ? 1 : 0;
  for (const auto& c : rep.checks) {
    if (!c.pass()) {
      out.summary.push_back(std::string(command_name(cfg.command)) + ": FAIL " + c.name + " value=" +
                            format_number(c.value) + " range=[" + format_number(c.lo) + ", " + format_number(c.hi) + "]");
    }
  }
  for (const auto& n : rep.notes) out.summary.push_back(std::string(command_name(cfg.command)) + ": " + n);
  out.summary.push_back(std::string(command_name(cfg.command)) + ": " + (bad ? "FAIL" : "PASS") + " (" +
                        std::to_string(rep.checks.size()) + " checks)");
  return out;
}

}  // namespace mdtn
