#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "toral/bigint.hpp"
#include "toral/mat2.hpp"

namespace toral {

enum class Answer {
  Mixing,
  NotMixing,
  JointlyMixing,
  NotJointlyMixing,
  RelativelyJointlyMixing,
  NotRelativelyJointlyMixing,
  SufficientConditionHolds,
  Unknown,
};

std::string_view to_string(Answer a);
/// Throws Error(ParseError) on an unknown name.
Answer parse_answer(std::string_view name);
bool is_negative(Answer a);

/// Groups of integers; frequency witnesses are one pair per group.
using Witness = std::vector<std::vector<Int>>;

/// Decision outcome. Negative answers always carry a witness.
///
/// A reason "WitnessPeriod:m" restricts the witness identity to n = 0 mod m.
struct Verdict {
  Answer answer{Answer::Unknown};
  std::optional<Witness> witness;
  std::vector<std::string> reasons;

  bool has_reason(std::string_view code) const;
  /// Period m of the witness identity; 1 when absent.
  long period() const;
  void set_period(long m);
  /// Witness groups read back as vectors in Z^2.
  std::vector<Vec2> frequencies() const;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Witness to_witness(const std::vector<Vec2>& xs);

nlohmann::json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);
/// One-line human summary.
std::string to_string(const Verdict& v);

}  // namespace toral
