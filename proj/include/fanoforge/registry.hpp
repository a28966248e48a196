#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fanoforge/fan.hpp"
#include "fanoforge/ledger.hpp"

// Scenario registry: every worked example is a JSON file under
// <data>/scenarios, evaluated by one engine and diffed against its
// expectations.

namespace fanoforge {

enum class ScenarioKind { Fan, EffModel, LedgerChain, Note };
const char* to_string(ScenarioKind k);
ScenarioKind parse_scenario_kind(const std::string& s);

struct Expectation {
  std::string key;
  nlohmann::json value;
  std::string provenance;  // "reference" or "derived"
  std::string via;         // table row, formula, or the oracle used
};

struct Scenario {
  std::string id;
  ScenarioKind kind = ScenarioKind::Note;
  std::string title;
  std::string anchor;  // the formula or label the entry is keyed to
  nlohmann::json payload;
  std::vector<Expectation> expected;  // empty for notes
};

/// Throws InputError on a malformed document. Every expectation must carry
/// provenance "reference" or "derived" with a non-empty "via"; notes carry
/// none.
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& s);

struct CheckItem {
  std::string key;
  nlohmann::json expected;
  nlohmann::json computed;  // null when the engine did not produce the key
  bool ok = false;
};

struct CheckReport {
  std::string id;
  std::vector<CheckItem> items;
  bool passed() const;
  size_t mismatches() const;
};

/// $FANOFORGE_DATA if set, otherwise the data directory of the source tree.
std::filesystem::path default_data_dir();

/// Builds a fan from {"base": {"projective": n} | {"product": [a, b]} |
/// {"file": path}, "steps": [{"star": [rays]} | {"flip_exceptional_lines": true}]}.
/// Star steps name rays by their vectors. Files are relative to data_dir.
/// When `before_flips` is given it receives the fan just before the first
/// flip step (or the final fan when there is none).
Fan build_fan(const nlohmann::json& construction, const std::filesystem::path& data_dir,
              Fan* before_flips = nullptr);

/// Validity, Betti numbers, primitive relations, Fano test and, for Fano
/// fans, chi(-K) and the normalized volume of the anticanonical polytope.
nlohmann::json fan_info(const Fan& f);

class Registry {
 public:
  /// Loads every *.json under data_dir/scenarios, sorted by id. Duplicate ids
  /// are an InputError.
  static Registry load(const std::filesystem::path& data_dir);
  static Registry load_default() { return load(default_data_dir()); }

  const std::filesystem::path& data_dir() const { return data_dir_; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  /// InputError for an unknown id.
  const Scenario& get(const std::string& id) const;

  /// Runs the engine for the scenario and returns every computed invariant.
  nlohmann::json evaluate(const Scenario& s) const;

  /// Diffs evaluate() against the expectations. PreconditionError for
  /// notes; engine errors propagate.
  CheckReport check(const std::string& id) const;

  /// check() for every non-note scenario, in id order.
  std::vector<CheckReport> check_all() const;

 private:
  std::filesystem::path data_dir_;
  std::vector<Scenario> scenarios_;
};

/// Golden artifacts: tables/{p4,quadric,cubic}.<ext> in the given format and
/// tables/invariants.txt with the invariant line of every ledger-chain
/// scenario that is not a table. Keys are paths relative to the golden root.
std::map<std::string, std::string> emit_tables(const Registry& registry, TableFormat format,
                                               std::optional<int> max_s = std::nullopt);

}  // namespace fanoforge
