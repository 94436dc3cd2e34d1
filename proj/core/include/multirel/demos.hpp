#pragma once

// Scripted reproductions of small worked examples: each demo builds the
// relations involved, computes the claimed (in)equalities and reports them.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>  // nlohmann

#include "multirel/closures.hpp"

namespace multirel {

struct DemoReport {
  std::string name;
  std::string claim;               // the statement being reproduced
  std::vector<std::string> lines;  // constructed relations, `name = value`
  std::vector<Check> checks;
  bool pass() const;
};

const std::vector<std::string>& demo_names();

/// Throws UnknownDemo for an unregistered name.
DemoReport run_demo(std::string_view name);

std::string to_text(const DemoReport& r);
nlohmann::json to_json(const DemoReport& r);

}  // namespace multirel
