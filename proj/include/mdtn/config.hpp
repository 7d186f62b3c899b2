#pragma once

// Key-value configuration files:
//
//   # comment
//   chart = ellipsoid
//   semi_axes = 1, 1.3, 0.8
//   [dtn]
//   h = 1/40, 1/80        # read as dtn.h
//
// Numbers accept a/b fractions. Every lookup records the value it resolved
// (given or default) so a run can echo its full configuration.

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mdtn {

class KeyValueConfig {
 public:
  /// Throws ConfigError on malformed lines or repeated keys.
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string text(const std::string& key, const std::string& fallback);
  double number(const std::string& key, double fallback);
  /// Finite and > 0.
  double positive(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback, int min_value);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback, int min_value);
  std::complex<double> complex(const std::string& key, std::complex<double> fallback);

  /// Resolved keys in lookup order.
  const std::vector<std::pair<std::string, std::string>>& resolved() const { return resolved_; }
  /// ConfigError naming the first key that was given but never looked up,
  /// skipping keys that start with one of the ignored prefixes.
  void reject_unused(const std::vector<std::string>& ignored_prefixes = {}) const;

 private:
  const std::string* raw(const std::string& key);
  void record(const std::string& key, const std::string& value);

  std::map<std::string, std::string> values_;
  std::map<std::string, bool> used_;
  std::vector<std::pair<std::string, std::string>> resolved_;
};

/// Parses "3", "-2.5e-3" or "1/40"; ConfigError otherwise.
double parse_number(const std::string& text, const std::string& key);

/// 17 significant digits, %g style.
std::string format_number(double x);

}  // namespace mdtn
