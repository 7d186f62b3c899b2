#include "mdtn/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mdtn/error.hpp"

namespace mdtn {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

}  // namespace

double parse_number(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  auto one = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      config_error(key + ": not a number: '" + text + "'");
    }
    if (used != s.size()) config_error(key + ": not a number: '" + text + "'");
    return v;
  };
  const double v = slash == std::string::npos ? one(t) : one(trim(t.substr(0, slash))) / one(trim(t.substr(slash + 1)));
  if (!std::isfinite(v)) config_error(key + ": value is not finite");
  return v;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) config_error("line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    if (cfg.values_.count(key)) config_error("line " + std::to_string(lineno) + ": repeated key " + key);
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KeyValueConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string* KeyValueConfig::raw(const std::string& key) {
  const auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  used_[key] = true;
  return &it->second;
}

void KeyValueConfig::record(const std::string& key, const std::string& value) {
  for (auto& kv : resolved_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  resolved_.emplace_back(key, value);
}

std::string KeyValueConfig::text(const std::string& key, const std::string& fallback) {
  const std::string* r = raw(key);
  const std::string v = r ? *r : fallback;
  record(key, v);
  return v;
}

double KeyValueConfig::number(const std::string& key, double fallback) {
  const std::string* r = raw(key);
  const double v = r ? parse_number(*r, key) : fallback;
  record(key, format_number(v));
  return v;
}

double KeyValueConfig::positive(const std::string& key, double fallback) {
  const double v = number(key, fallback);
  if (!(v > 0.0)) config_error(key + ": must be positive");
  return v;
}

int KeyValueConfig::integer(const std::string& key, int fallback, int min_value) {
  const std::string* r = raw(key);
  double v = r ? parse_number(*r, key) : fallback;
  if (v != std::floor(v) || std::abs(v) > 1e9) config_error(key + ": must be an integer");
  if (v < min_value) config_error(key + ": must be at least " + std::to_string(min_value));
  record(key, std::to_string(static_cast<int>(v)));
  return static_cast<int>(v);
}

std::vector<double> KeyValueConfig::numbers(const std::string& key, const std::vector<double>& fallback) {
  const std::string* r = raw(key);
  std::vector<double> out;
  if (r) {
    for (const auto& item : split_list(*r)) out.push_back(parse_number(item, key));
  } else {
    out = fallback;
  }
  if (out.empty()) config_error(key + ": empty list");
  std::string shown;
  for (std::size_t i = 0; i < out.size(); ++i) shown += (i ? ", " : "") + format_number(out[i]);
  record(key, shown);
  return out;
}

std::vector<int> KeyValueConfig::integers(const std::string& key, const std::vector<int>& fallback, int min_value) {
  std::vector<double> fb(fallback.begin(), fallback.end());
  const std::vector<double> v = numbers(key, fb);
  std::vector<int> out;
  for (const double x : v) {
    if (x != std::floor(x) || x < min_value || x > 1e9) {
      config_error(key + ": entries must be integers >= " + std::to_string(min_value));
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::complex<double> KeyValueConfig::complex(const std::string& key, std::complex<double> fallback) {
  const std::string* r = raw(key);
  std::complex<double> v = fallback;
  if (r) {
    const auto parts = split_list(*r);
    if (parts.empty() || parts.size() > 2) config_error(key + ": expected 're' or 're, im'");
    v = {parse_number(parts[0], key), parts.size() == 2 ? parse_number(parts[1], key) : 0.0};
  }
  record(key, format_number(v.real()) + ", " + format_number(v.imag()));
  return v;
}

void KeyValueConfig::reject_unused(const std::vector<std::string>& ignored_prefixes) const {
  for (const auto& kv : values_) {
    if (used_.count(kv.first)) continue;
    bool ignored = false;
    for (const auto& p : ignored_prefixes) ignored = ignored || kv.first.rfind(p, 0) == 0;
    if (!ignored) config_error("unknown key " + kv.first);
  }
}

}  // namespace mdtn
