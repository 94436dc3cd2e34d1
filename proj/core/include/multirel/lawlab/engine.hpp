#pragma once

// Exhaustive and sampled law checking with canonical counterexamples.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann

#include "multirel/lawlab/ast.hpp"

namespace multirel::lawlab {

enum class Mode { Exhaustive, Sample };
enum class Goal { Check, Find };

std::string_view to_string(Mode m);

struct EngineOptions {
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  unsigned max_space_bits = 24;  // exhaustive cap 2^24
};

struct LawReport {
  std::string law;
  std::string verdict;  // valid | counterexample | sampled_pass | witness | none_found
  unsigned space_bits = 0;
  std::uint64_t checked = 0;
  std::vector<std::pair<std::string, Relation>> binding;
  std::int64_t elapsed_ms = 0;
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;

  /// Exit status contribution: true for valid, sampled_pass and witness.
  bool success() const { return verdict == "valid" || verdict == "sampled_pass" || verdict == "witness"; }
};

nlohmann::json to_json(const Universe& u, const LawReport& r);
std::string to_text(const Universe& u, const LawReport& r);

/// A law ready to run: typechecked, with its search variables fixed.
///
/// Search variables are the declared variables occurring free in the law (in
/// declaration order), followed by the binders of leading quantifiers of the
/// goal's kind (forall for check, exists for find), which are peeled off so a
/// counterexample or witness can be reported for them. An untyped binder
/// named like a declared variable takes that variable's type.
struct PreparedLaw {
  std::string name;
  std::vector<VarDecl> search;
  std::vector<int> search_slots;  // environment slot of each search variable
  FormulaPtr body;
  int slots = 0;
};

PreparedLaw prepare_law(const Universe& u, const std::vector<VarDecl>& decls, const Law& law, Goal goal);

/// log2 of the number of assignments to `vars`.
unsigned space_bits(const Universe& u, const std::vector<VarDecl>& vars);
/// Number of assignments; throws SpaceTooLarge past 2^63.
std::uint64_t estimate_space(const Universe& u, const std::vector<VarDecl>& vars);

/// Check: valid iff the body holds for every assignment. Find: witness iff it
/// holds for some. Exhaustive reports carry the canonically smallest finding:
/// variables in order, first variable most significant, each enumerated by
/// ascending encoding. Throws SpaceTooLarge past the cap in exhaustive mode.
LawReport run_law(const Universe& u, const PreparedLaw& law, Goal goal, const EngineOptions& opt);

/// Runs every law of a file against the universe its `set` lines declare.
std::vector<LawReport> run_file(const LawFile& file, Goal goal, const EngineOptions& opt,
                                const UniverseLimits& limits = {});

Universe universe_of(const LawFile& file, const UniverseLimits& limits = {});

}  // namespace multirel::lawlab
