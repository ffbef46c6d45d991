#include "toral/verdict.hpp"

#include <array>

#include "toral/error.hpp"

namespace toral {

namespace {

constexpr std::array<std::pair<Answer, std::string_view>, 8> kAnswers{{
    {Answer::Mixing, "Mixing"},
    {Answer::NotMixing, "NotMixing"},
    {Answer::JointlyMixing, "JointlyMixing"},
    {Answer::NotJointlyMixing, "NotJointlyMixing"},
    {Answer::RelativelyJointlyMixing, "RelativelyJointlyMixing"},
    {Answer::NotRelativelyJointlyMixing, "NotRelativelyJointlyMixing"},
    {Answer::SufficientConditionHolds, "SufficientConditionHolds"},
    {Answer::Unknown, "Unknown"},
}};

constexpr std::string_view kPeriodPrefix = "WitnessPeriod:";

nlohmann::json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw Error(Errc::ParseError, "witness entry must be an integer");
}

}  // namespace

std::string_view to_string(Answer a) {
  for (const auto& [k, name] : kAnswers)
    if (k == a) return name;
  return "Unknown";
}

Answer parse_answer(std::string_view name) {
  for (const auto& [k, n] : kAnswers)
    if (n == name) return k;
  throw Error(Errc::ParseError, "unknown answer '" + std::string(name) + "'");
}

bool is_negative(Answer a) {
  return a == Answer::NotMixing || a == Answer::NotJointlyMixing || a == Answer::NotRelativelyJointlyMixing;
}

bool Verdict::has_reason(std::string_view code) const {
  for (const auto& r : reasons)
    if (r == code) return true;
  return false;
}

long Verdict::period() const {
  for (const auto& r : reasons)
    if (r.starts_with(kPeriodPrefix)) return std::stol(r.substr(kPeriodPrefix.size()));
  return 1;
}

void Verdict::set_period(long m) {
  std::erase_if(reasons, [](const std::string& r) { return r.starts_with(kPeriodPrefix); });
  if (m != 1) reasons.push_back(std::string(kPeriodPrefix) + std::to_string(m));
}

std::vector<Vec2> Verdict::frequencies() const {
  std::vector<Vec2> out;
  if (!witness) return out;
  for (const auto& g : *witness) {
    if (g.size() != 2) throw Error(Errc::InvalidArgument, "witness group is not a frequency pair");
    out.emplace_back(g[0], g[1]);
  }
  return out;
}

Witness to_witness(const std::vector<Vec2>& xs) {
  Witness w;
  for (const Vec2& x : xs) w.push_back({x.x, x.y});
  return w;
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["answer"] = std::string(to_string(v.answer));
  if (v.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& g : *v.witness) {
      nlohmann::json row = nlohmann::json::array();
      for (const Int& e : g) row.push_back(int_to_json(e));
      w.push_back(std::move(row));
    }
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["reasons"] = v.reasons;
  return j;
}

Verdict verdict_from_json(const nlohmann::json& j) {
  Verdict v;
  v.answer = parse_answer(j.at("answer").get<std::string>());
  if (!j.at("witness").is_null()) {
    Witness w;
    for (const auto& row : j.at("witness")) {
      std::vector<Int> g;
      for (const auto& e : row) g.push_back(int_from_json(e));
      w.push_back(std::move(g));
    }
    v.witness = std::move(w);
  }
  v.reasons = j.at("reasons").get<std::vector<std::string>>();
  return v;
}

std::string to_string(const Verdict& v) {
  std::string s(to_string(v.answer));
  if (v.witness) {
    s += " witness=(";
    for (std::size_t i = 0; i < v.witness->size(); ++i) {
      if (i) s += ", ";
      s += "(";
      for (std::size_t k = 0; k < (*v.witness)[i].size(); ++k) {
        if (k) s += ",";
        s += (*v.witness)[i][k].get_str();
      }
      s += ")";
    }
    s += ")";
  }
  if (!v.reasons.empty()) {
    s += " reasons=[";
    for (std::size_t i = 0; i < v.reasons.size(); ++i) s += (i ? "," : "") + v.reasons[i];
    s += "]";
  }
  return s;
}

}  // namespace toral
