#ifndef EXPNORMAL_REPORT_HPP
#define EXPNORMAL_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace expnormal {

struct CheckEntry {
  std::string name;
  std::string inputs;
  double observed = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Structured result of a named check suite. Overall pass is derived from
/// the entries, never stored separately.
struct VerificationReport {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::vector<CheckEntry> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.passed; });
  }

  const CheckEntry* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  void add(std::string name, std::string inputs, double observed, double threshold, bool passed) {
    checks.push_back({std::move(name), std::move(inputs), observed, threshold, passed});
  }

  void append(const VerificationReport& other) {
    for (const auto& c : other.checks) checks.push_back({other.suite + "." + c.name, c.inputs, c.observed, c.threshold, c.passed});
  }
};

/// {suite, seed, checks: [{name, inputs, observed, threshold, passed}], passed}.
/// seed is null for suites that draw no samples.
inline nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json(nullptr);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"inputs", c.inputs},
                           {"observed", c.observed},
                           {"threshold", c.threshold},
                           {"passed", c.passed}});
  }
  j["passed"] = report.passed();
  return j;
}

}  // namespace expnormal

#endif  // EXPNORMAL_REPORT_HPP
