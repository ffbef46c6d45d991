#include "scenarios.hpp"

#include <algorithm>

#include "toral/decider.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/family.hpp"
#include "toral/grid.hpp"
#include "toral/recurrence.hpp"
#include "toral/two_unipotent.hpp"
#include "toral/verify.hpp"

namespace toral::cli {
namespace {

const Mat2Z kCat{2, 1, 1, 1};
const Mat2Z kCat2{1, 1, 1, 2};
const Mat2Z kShear{1, 1, 0, 1};
const Mat2Z kShearT{1, 0, 1, 1};

constexpr long kScanBox = 3;
constexpr long kScanHorizon = 80;
constexpr long kScanMaxN0 = 60;

PowerFamily powers(const Mat2Z& m) { return {m, parse_poly("n")}; }

bool scan_clean(const std::vector<Family>& seqs, nlohmann::json& details) {
  StabilizationReport rep = scan_sequences(seqs, kScanBox, kScanHorizon);
  details["scan_n0"] = rep.n0;
  details["scan_hits"] = rep.hits;
  return rep.n0 <= kScanMaxN0;
}

nlohmann::json verdict_json(const Verdict& v) { return to_json(v); }

ScenarioOutcome expect_negative(const std::vector<Family>& seqs, const Verdict& v, Answer want, long n_max) {
  ScenarioOutcome o;
  o.details["verdict"] = verdict_json(v);
  bool ok = v.answer == want && verify_frequency_witness(seqs, v, n_max);
  o.details["witness_checked_to"] = n_max;
  o.passed = ok;
  o.observed = to_string(v) + (ok ? ", witness verified" : ", witness check failed");
  return o;
}

ScenarioOutcome expect_positive(const std::vector<Family>& seqs, const Verdict& v, Answer want) {
  ScenarioOutcome o;
  o.details["verdict"] = verdict_json(v);
  bool scan = scan_clean(seqs, o.details);
  o.passed = v.answer == want && scan;
  o.observed = to_string(v) + ", character scan stabilizes at n0=" + std::to_string(o.details["scan_n0"].get<long>());
  return o;
}

std::vector<Family> as_families(const std::vector<PolyMatFamily>& fs) { return {fs.begin(), fs.end()}; }

PolyMatFamily poly_family(const char* text) {
  Family f = parse_family(text);
  return std::get<PolyMatFamily>(f);
}

ScenarioOutcome conjugate_triple() {
  Mat2Z a = kShear, b = kShearT;
  std::vector<Mat2Z> ts{kCat, a.adjugate() * kCat * a, b.adjugate() * kCat * b};
  std::vector<Family> seqs;
  for (const Mat2Z& t : ts) seqs.push_back(powers(t));
  Verdict v = decide_joint_powers(ts);
  ScenarioOutcome o = expect_negative(seqs, v, Answer::NotJointlyMixing, 30);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Verdict p = decide_joint_powers({ts[i], ts[j]});
      nlohmann::json d;
      bool ok = p.answer == Answer::JointlyMixing && scan_clean({seqs[i], seqs[j]}, d);
      d["verdict"] = verdict_json(p);
      o.details["pairs"].push_back(d);
      o.passed = o.passed && ok;
    }
  o.observed += "; every pair JointlyMixing";
  return o;
}

ScenarioOutcome bounded_eigenvalue_family() {
  // U^-n T U^n: trace is constant, so the eigenvalues stay bounded.
  PolyMatFamily f = poly_family("[[1,1],[0,1]]^(-n) * [[2,1],[1,1]] * [[1,1],[0,1]]^(n)");
  ScenarioOutcome o;
  o.details["family"] = to_string(f);
  bool bounded = (f.a + f.d).degree() <= 0;
  o.passed = bounded;
  std::vector<std::vector<unsigned long>> exps{{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  for (const auto& e : exps) {
    std::vector<PolyMatFamily> fs;
    for (unsigned long k : e) fs.push_back(family_power(f, k));
    Verdict v = decide_joint_polyfamilies(fs);
    ScenarioOutcome sub = expect_negative(as_families(fs), v, Answer::NotJointlyMixing, 1000);
    sub.details["exponents"] = e;
    o.details["cases"].push_back(sub.details);
    o.passed = o.passed && sub.passed;
  }
  o.observed = std::string(bounded ? "constant trace" : "trace not constant") +
               "; powers (1,2), (1,3), (2,3), (1,2,3) NotJointlyMixing with verified witnesses";
  return o;
}

std::vector<Scenario> make_scenarios() {
  std::vector<Scenario> s;
  s.push_back({"element-hyperbolic", {"element"}, "hyperbolic elements are mixing", "Mixing", [] {
                 return expect_positive({powers(kCat)}, decide_element_mixing(kCat), Answer::Mixing);
               }});
  s.push_back({"element-shear", {"element", "unipotent"}, "unipotent elements are not mixing", "NotMixing", [] {
                 return expect_negative({powers(kShear)}, decide_element_mixing(kShear), Answer::NotMixing, 1000);
               }});
  s.push_back({"family-linear", {"family", "remark"}, "linear family with a constant kernel", "NotMixing", [] {
                 PolyMatFamily f = poly_family("[[n, n - 1], [1, 1]]");
                 return expect_negative({f}, decide_polyfamily_mixing(f), Answer::NotMixing, 1000);
               }});
  s.push_back({"family-quadratic", {"family", "remark"}, "mixing polynomial family", "Mixing", [] {
                 PolyMatFamily f = poly_family("[[n, n^2 - 1], [1, n]]");
                 return expect_positive({f}, decide_polyfamily_mixing(f), Answer::Mixing);
               }});
  s.push_back({"power-remark-quadratic",
               {"joint", "family", "remark"},
               "a mixing family together with its square is not jointly mixing",
               "NotJointlyMixing",
               [] {
                 PolyMatFamily f = poly_family("[[n, n^2 - 1], [1, n]]");
                 std::vector<PolyMatFamily> fs{f, family_power(f, 2)};
                 return expect_negative(as_families(fs), decide_joint_polyfamilies(fs), Answer::NotJointlyMixing,
                                        1000);
               }});
  s.push_back({"power-remark-cubic",
               {"joint", "family", "remark", "rokhlin"},
               "jointly mixing although the norm-ratio condition fails",
               "JointlyMixing",
               [] {
                 PolyMatFamily f = poly_family("[[n^2, n^3 - 1], [1, n]]");
                 std::vector<PolyMatFamily> fs{f, family_power(f, 2)};
                 ScenarioOutcome o =
                     expect_positive(as_families(fs), decide_joint_polyfamilies(fs), Answer::JointlyMixing);
                 RokhlinReport r = rokhlin_report(f, {IntPoly(1), IntPoly(2)}, 2, 40);
                 o.details["ratio_trend"] = to_string(r.trend);
                 o.passed = o.passed && r.trend == Trend::Unbounded;
                 o.observed += "; norm ratio " + std::string(to_string(r.trend));
                 return o;
               }});
  s.push_back({"conjugate-triple",
               {"joint", "triple"},
               "three conjugates of one hyperbolic matrix share a modulus",
               "NotJointlyMixing; pairs JointlyMixing",
               conjugate_triple});
  s.push_back({"bounded-eigenvalue-family",
               {"joint", "family"},
               "powers of a family with bounded eigenvalues",
               "NotJointlyMixing",
               bounded_eigenvalue_family});
  s.push_back({"unipotent-pair-noncommuting",
               {"unipotent", "family"},
               "product of noncommuting unipotent powers",
               "Mixing",
               [] {
                 PolyMatFamily f = poly_family("[[1,1],[0,1]]^(-n) * [[1,0],[1,1]]^(n)");
                 return expect_positive({f}, decide_polyfamily_mixing(f), Answer::Mixing);
               }});
  s.push_back({"unipotent-pair-commuting",
               {"unipotent", "family"},
               "product of commuting unipotent powers",
               "NotMixing",
               [] {
                 PolyMatFamily f = poly_family("[[1,1],[0,1]]^(-n) * [[1,2],[0,1]]^(n)");
                 return expect_negative({f}, decide_polyfamily_mixing(f), Answer::NotMixing, 1000);
               }});
  s.push_back({"relative-transverse-shears", {"relative"}, "transverse shears with exponents n, n^2",
               "RelativelyJointlyMixing", [] {
                 ScenarioOutcome o;
                 Verdict v = decide_relative_joint_unipotent({kShear, kShearT}, {parse_poly("n"), parse_poly("n^2")});
                 o.details["verdict"] = verdict_json(v);
                 o.passed = v.answer == Answer::RelativelyJointlyMixing;
                 o.observed = to_string(v);
                 return o;
               }});
  s.push_back({"relative-same-shear", {"relative"}, "one shear with exponents n, n+1", "NotRelativelyJointlyMixing",
               [] {
                 ScenarioOutcome o;
                 std::vector<Mat2Z> us{kShear, kShear};
                 std::vector<IntPoly> as{parse_poly("n"), parse_poly("n + 1")};
                 Verdict v = decide_relative_joint_unipotent(us, as);
                 o.details["verdict"] = verdict_json(v);
                 o.passed = v.answer == Answer::NotRelativelyJointlyMixing && verify_relative_witness(us, as, v, 1000);
                 o.observed = to_string(v) + (o.passed ? ", witness verified" : "");
                 return o;
               }});
  s.push_back({"rokhlin-classical", {"rokhlin"}, "constant family, exponents n and 2n", "ratio tends to zero", [] {
                 ScenarioOutcome o;
                 Verdict v = check_rokhlin_sufficient({kCat, kCat}, {parse_poly("n"), parse_poly("2*n")});
                 Verdict j = decide_joint_powers({kCat, mat_pow(kCat, Int(2))});
                 RokhlinReport r =
                     rokhlin_report(PolyMatFamily::constant(kCat), {parse_poly("n"), parse_poly("2*n")}, 1, 40);
                 o.details["sufficient"] = verdict_json(v);
                 o.details["joint_powers"] = verdict_json(j);
                 o.details["ratio_trend"] = to_string(r.trend);
                 o.passed = v.answer == Answer::SufficientConditionHolds && j.answer == Answer::JointlyMixing &&
                            r.trend == Trend::TendsToZero;
                 o.observed = to_string(v) + "; ratio " + std::string(to_string(r.trend));
                 return o;
               }});
  s.push_back({"rokhlin-remark-nonmixing", {"rokhlin", "remark"}, "ratio report cross-referenced with the decider",
               "NotJointlyMixing", [] {
                 ScenarioOutcome o;
                 RokhlinReport r =
                     rokhlin_report(poly_family("[[n, n^2 - 1], [1, n]]"), {IntPoly(1), IntPoly(2)}, 2, 40);
                 o.details["report"] = r.to_json();
                 o.passed = r.cross_reference && r.cross_reference->answer == Answer::NotJointlyMixing;
                 o.observed = "ratio " + std::string(to_string(r.trend)) + "; decider " +
                              (r.cross_reference ? to_string(*r.cross_reference) : std::string("none"));
                 return o;
               }});
  s.push_back({"order2-counterexample", {"triple", "joint"}, "conjugates g^-i h g^i, i = 1, 2, 3",
               "NotJointlyMixing; pairs JointlyMixing", [] {
                 ScenarioOutcome o;
                 Order2Counterexample c = order2_counterexample(kCat, kCat2);
                 o.details["triple"] = verdict_json(c.triple);
                 bool pairs = std::all_of(c.pairs.begin(), c.pairs.end(),
                                          [](const Verdict& v) { return v.answer == Answer::JointlyMixing; });
                 o.passed = c.verified && c.triple.answer == Answer::NotJointlyMixing && pairs;
                 o.observed = to_string(c.triple) + (c.verified ? ", witness verified" : ", witness failed");
                 return o;
               }});
  s.push_back({"two-unipotent-limit", {"recurrence"}, "triple recurrence for noncommuting shears",
               "limit above mu(D)^3", [] {
                 ScenarioOutcome o;
                 GridSet d = GridSet::rect(Rat(0), Rat(1, 2), Rat(0), Rat(1, 2), 2);
                 TwoUnipotentLimit l = limit_two_unipotents(d, d, d, kShearT, kShear, 200);
                 double series = rectangle_reduced_series(Rat(0), Rat(1, 2), Rat(0), Rat(1, 2), l.w, 200);
                 o.details["value"] = l.value.real();
                 o.details["tail_bound"] = l.tail_bound;
                 o.details["reduced_series"] = series;
                 o.passed = std::abs(l.value.real() - series) < 1e-9 && l.value.real() - l.tail_bound > 1.0 / 64;
                 o.observed = "limit " + std::to_string(l.value.real()) + " +- " + std::to_string(l.tail_bound);
                 return o;
               }});
  s.push_back({"krengel-cat", {"krengel"}, "orthogonality along a cyclic hyperbolic subgroup", "all correlations zero",
               [] {
                 ScenarioOutcome o;
                 KrengelCertificate c = krengel_orthogonal(parse_trigpoly("1 0 1; 0 1 1"), kCat);
                 o.details["modulus"] = c.modulus;
                 o.details["transport_set"] = c.transport_set;
                 o.passed = c.all_zero() && !c.correlations.empty();
                 o.observed = "M=" + std::to_string(c.modulus);
                 return o;
               }});
  s.push_back({"find-unipotent", {"subgroup"}, "parabolic elements in small subgroups",
               "shear found; cyclic hyperbolic none", [] {
                 ScenarioOutcome o;
                 UnipotentSearch a = find_unipotent({kShear}, 3);
                 UnipotentSearch b = find_unipotent({kCat}, 8);
                 o.passed = a.found && a.word.size() == 1 && !b.found;
                 o.observed = "shear: " + to_string(a.word) + "; cat map: none up to 8";
                 return o;
               }});
  return s;
}

}  // namespace

bool Scenario::matches(const std::string& filter) const {
  if (filter.empty() || name.find(filter) != std::string::npos) return true;
  return std::find(tags.begin(), tags.end(), filter) != tags.end();
}

const std::vector<Scenario>& bundled_scenarios() {
  static const std::vector<Scenario> all = make_scenarios();
  return all;
}

}  // namespace toral::cli
