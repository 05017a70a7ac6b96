#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bicon {

inline constexpr int kSchemaVersion = 1;

/// One verified condition: what was checked, whether it held, and the
/// measured constant together with the sampling effort behind it.
struct CheckResult {
  std::string condition;
  bool pass = false;
  double measured_constant = 0.0;
  long long grid_size = 0; ///< grid points, sample points or pairs
  double tolerance = 0.0;
  std::optional<std::uint64_t> seed;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto &c : checks)
      if (!c.pass)
        return false;
    return true;
  }

  const CheckResult *find(const std::string &condition) const {
    for (const auto &c : checks)
      if (c.condition == condition)
        return &c;
    return nullptr;
  }

  CheckResult &add(CheckResult c) {
    checks.push_back(std::move(c));
    return checks.back();
  }
};

// JSON has no inf/nan; those constants serialize as strings.
inline nlohmann::json json_number(double v) {
  if (std::isfinite(v))
    return v;
  if (std::isnan(v))
    return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline nlohmann::json to_json(const CheckResult &c) {
  nlohmann::json j{{"condition", c.condition},
                   {"pass", c.pass},
                   {"measured_constant", json_number(c.measured_constant)},
                   {"grid_size", c.grid_size},
                   {"tolerance", json_number(c.tolerance)}};
  if (c.seed)
    j["seed"] = *c.seed;
  if (!c.detail.empty())
    j["detail"] = c.detail;
  return j;
}

inline nlohmann::json to_json(const VerificationReport &r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto &c : r.checks)
    checks.push_back(to_json(c));
  return {{"schema_version", kSchemaVersion},
          {"suite", r.suite},
          {"pass", r.all_pass()},
          {"checks", std::move(checks)}};
}

} // namespace bicon
