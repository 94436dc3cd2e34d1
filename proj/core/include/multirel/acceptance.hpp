#pragma once

// The acceptance suite: numbered criteria, each a batch of exhaustive or
// sampled checks with a time budget. Shared by `selftest` and the test
// driver.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "multirel/closures.hpp"

namespace multirel {

struct AcceptanceOptions {
  unsigned jobs = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  double budget_seconds = 0;
  std::string error;  // set when a check threw

  bool within_budget() const { return seconds <= budget_seconds; }
  bool pass() const;
  /// First failing check, or the budget overrun, in one line.
  std::string summary() const;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> tags;  // module names and topics, for --filter
  double budget_seconds;
  std::function<void(std::vector<Check>&, const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& criteria();

/// Empty filter matches everything; otherwise the criterion number, a tag,
/// or a case-insensitive substring of the title.
bool matches(const Criterion& c, std::string_view filter);

CriterionResult run_criterion(const Criterion& c, const AcceptanceOptions& opt = {});

}  // namespace multirel
