#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace wgcasimir::sweep {

enum class ValidationLevel { quick, full };

ValidationLevel parse_level(const std::string& name);

/// One checked quantity: pass when `value` compares to `tolerance` as `comparison` says.
struct Measurement {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  /// "<", "<=" or ">=".
  std::string comparison = "<";
  bool pass = false;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  bool passed = false;
  double runtime_seconds = 0.0;
  double runtime_budget_seconds = 0.0;
  std::vector<Measurement> measurements;
  /// Reported values and diagnostics that do not gate the criterion.
  std::vector<std::string> info;
};

struct ValidationReport {
  std::string level;
  std::vector<CriterionReport> criteria;

  bool passed() const;
};

/// quick runs criteria 1, 2 and 6; full runs 1-10.
ValidationReport validate(ValidationLevel level, unsigned threads = 0);

/// One line per criterion: "[PASS] criterion 3: ..." with the decisive numbers.
std::string summary_line(const CriterionReport& report);

void to_json(nlohmann::json& j, const ValidationReport& report);

}  // namespace wgcasimir::sweep
