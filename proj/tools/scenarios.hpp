#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace toral::cli {

struct ScenarioOutcome {
  bool passed{false};
  /// Observed outcome in one line.
  std::string observed;
  nlohmann::json details = nlohmann::json::object();
};

/// A bundled example. The expected outcome is qualitative; every run
/// re-derives it from the deciders and checks it against the oracle.
struct Scenario {
  std::string name;
  std::vector<std::string> tags;
  std::string note;
  std::string expected;
  std::function<ScenarioOutcome()> run;

  bool matches(const std::string& filter) const;
};

const std::vector<Scenario>& bundled_scenarios();

}  // namespace toral::cli
