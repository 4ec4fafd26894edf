#pragma once

// Reproduction gate: every closed-form claim checked against the simulators
// at a pinned tolerance. Used by the acceptance test binary and by
// `atomslit report`.

#include "atomslit/scenarios.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace atomslit {

struct Check {
  std::string name;
  double deviation;
  double tolerance;
  bool passed;
};

struct CriterionResult {
  int id;
  std::string title;
  std::vector<Check> checks;
  std::vector<ScenarioSpec> specs;  // scenarios exercised, for the report echo

  bool passed() const;
  // The check closest to (or furthest past) its tolerance.
  const Check* worst() const;
};

// `tol_scale` multiplies every tolerance; anything <= 0 makes the gate
// unpassable (used to verify that failures propagate).
std::vector<CriterionResult> run_acceptance(double tol_scale = 1.0);

bool all_passed(const std::vector<CriterionResult>& results);

nlohmann::ordered_json acceptance_json(const std::vector<CriterionResult>& results, double tol_scale);

// One line per criterion: "[PASS] 1 <title> (max dev ..., tol ...)".
std::string acceptance_summary(const std::vector<CriterionResult>& results);

}  // namespace atomslit
