#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scenarios.hpp"
#include "toral/decider.hpp"
#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/family.hpp"
#include "toral/grid.hpp"
#include "toral/lattice.hpp"
#include "toral/recurrence.hpp"
#include "toral/trig.hpp"
#include "toral/verify.hpp"

namespace toral::cli {
namespace {

using nlohmann::json;

constexpr long kDefaultQ = 4096;
constexpr long kWitnessCheckN = 100;
constexpr long kScanHorizon = 80;
constexpr long kScanMaxN0 = 60;
constexpr long kTripleCheckN = 30;

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool json_out{false};
  std::string csv_path;
};

long default_q() {
  const char* env = std::getenv("TORAL_Q");
  if (env == nullptr || *env == '\0') return kDefaultQ;
  try {
    long q = std::stol(env);
    if (q >= 1) return q;
  } catch (const std::exception&) {
  }
  throw Error(Errc::InvalidArgument, std::string("TORAL_Q must be a positive integer, got '") + env + "'");
}

bool is_literal(const std::string& s) { return s.find_first_of("n^*") == std::string::npos; }

std::pair<long, long> parse_range(const std::string& text) {
  auto pos = text.find("..");
  try {
    if (pos == std::string::npos) return {1, std::stol(text)};
    return {std::stol(text.substr(0, pos)), std::stol(text.substr(pos + 2))};
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "range '" + text + "': expected a..b or b");
  }
}

std::vector<unsigned long> parse_exponent_list(const std::string& text) {
  std::vector<unsigned long> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    long k = 0;
    try {
      k = std::stol(item);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "powers '" + text + "': expected a comma-separated list of positive integers");
    }
    if (k < 1) throw Error(Errc::InvalidArgument, "powers must be >= 1");
    ks.push_back(static_cast<unsigned long>(k));
  }
  if (ks.empty()) throw Error(Errc::ParseError, "powers: empty list");
  return ks;
}

/// Rectangle "x0 x1 y0 y1 @ q", inline JSON, or a JSON file path.
GridSet parse_set(const std::string& text) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(" \t"));
  if (!s.empty() && s.front() == '{') {
    json j = json::parse(s, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::ParseError, "grid set: invalid JSON");
    return gridset_from_json(j);
  }
  if (s.find('@') != std::string::npos) return parse_rect(s);
  std::ifstream in(s);
  if (!in) throw Error(Errc::ParseError, "grid set '" + text + "': not a rectangle, JSON object or readable file");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::ParseError, "grid set file '" + text + "': invalid JSON");
  return gridset_from_json(j);
}

PolyMatFamily as_poly(const Family& f) {
  if (const auto* p = std::get_if<PolyMatFamily>(&f)) return *p;
  return expand_unipotent_products({std::get<PowerFamily>(f)});
}

Family sequence_of(const std::string& text) {
  if (is_literal(text)) return PowerFamily{parse_matrix(text), parse_poly("n")};
  return parse_family(text);
}

std::string vec_list(const std::vector<Vec2>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + to_string(vs[i]);
  return s;
}

void emit(Ctx& c, const json& j, const std::string& human) {
  if (c.json_out)
    c.out << j.dump(2) << "\n";
  else
    c.out << human;
}

bool write_csv(Ctx& c, const std::string& body) {
  if (c.csv_path.empty()) return true;
  std::ofstream f(c.csv_path);
  if (!f) {
    c.err << "error: cannot write CSV to " << c.csv_path << "\n";
    return false;
  }
  f << body;
  return true;
}

/// Oracle check of a verdict: negative answers by their witness, positive
/// answers by a character scan. Unknown passes.
bool oracle_agrees(const std::vector<Family>& seqs, const Verdict& v, long n_max, json& oracle, std::string& line) {
  if (is_negative(v.answer)) {
    bool ok = verify_frequency_witness(seqs, v, n_max);
    oracle = {{"kind", "witness"}, {"checked_to", n_max}, {"passed", ok}};
    line = ok ? "witness verified for n <= " + std::to_string(n_max) : "witness FAILED";
    return ok;
  }
  if (v.answer == Answer::Mixing || v.answer == Answer::JointlyMixing ||
      v.answer == Answer::SufficientConditionHolds) {
    long box = seqs.size() >= 3 ? 2 : 3;
    StabilizationReport rep = scan_sequences(seqs, box, kScanHorizon);
    bool ok = rep.n0 <= kScanMaxN0;
    oracle = {{"kind", "character_scan"}, {"box", box},         {"horizon", rep.horizon},
              {"n0", rep.n0},             {"hits", rep.hits}, {"passed", ok}};
    line = "character scan over [-" + std::to_string(box) + "," + std::to_string(box) + "] clean from n0=" +
           std::to_string(rep.n0) + (ok ? "" : " (exceeds " + std::to_string(kScanMaxN0) + ")");
    return ok;
  }
  oracle = {{"kind", "none"}, {"passed", true}};
  line = "no oracle check for this answer";
  return true;
}

int report_verdict(Ctx& c, const std::string& command, const json& input, const std::vector<Family>& seqs,
                   const Verdict& v, long n_max) {
  json oracle;
  std::string line;
  bool ok = oracle_agrees(seqs, v, n_max, oracle, line);
  json j{{"command", command}, {"input", input}, {"verdict", to_json(v)}, {"oracle", oracle}};
  std::string human = "answer:  " + std::string(to_string(v.answer)) + "\n";
  if (v.witness) human += "witness: " + json(to_json(v)["witness"]).dump() + "\n";
  if (!v.reasons.empty()) {
    human += "reasons:";
    for (const auto& r : v.reasons) human += " " + r;
    human += "\n";
  }
  human += "oracle:  " + line + "\n";
  emit(c, j, human);
  if (!ok) {
    c.err << "decision-contract violation: " << line << "\n";
    return kContractViolation;
  }
  return kOk;
}

Verdict decide_power_family(const PowerFamily& f) {
  MatClass cls = classify(f.base);
  if (cls.hyperbolic()) {
    if (f.exponent.degree() <= 0)
      return decide_polyfamily_mixing(PolyMatFamily::constant(evaluate(f, Int(0))));
    return {Answer::Mixing, std::nullopt, {"HyperbolicBase", "UnboundedExponent"}};
  }
  if (cls.finite_order() && !f.base.is_plus_minus_identity()) {
    // T^m = I, and a(n) = a(0) mod m whenever n = 0 mod m.
    Mat2Z m0 = evaluate(f, Int(0));
    std::vector<Vec2> w{Vec2(1, 0), Vec2(Int(-m0.a), Int(-m0.b))};
    if (sgn(w[1].y) > 0 || (sgn(w[1].y) == 0 && sgn(w[1].x) > 0)) {
      w[0] = -w[0];
      w[1] = -w[1];
    }
    Verdict v{Answer::NotMixing, to_witness(w), {"FiniteOrderBase"}};
    v.set_period(cls.order);
    return v;
  }
  return decide_polyfamily_mixing(expand_unipotent_products({f}));
}

int cmd_classify(Ctx& c, const std::string& text) {
  Mat2Z m = parse_matrix(text);
  MatClass cls = classify(m);
  json j{{"command", "classify"}, {"matrix", to_string(m)}, {"class", to_string(cls)},
         {"trace", to_string(m.trace())}};
  std::string human = "matrix: " + to_string(m) + "\nclass:  " + to_string(cls) + "\ntrace:  " + to_string(m.trace()) +
                      "\n";
  if (cls.hyperbolic()) {
    EigenData e = eigen_data(m);
    j["lambda"] = e.lambda.to_string();
    j["lambda_approx"] = e.lambda.to_double();
    j["field_d"] = to_string(e.d);
    human += "lambda: " + e.lambda.to_string() + " ~ " + std::to_string(e.lambda.to_double()) + "\n";
  } else if (cls.unipotent()) {
    j["fixed_vector"] = to_string(fixed_vector(m));
    human += "fixed:  " + to_string(fixed_vector(m)) + "\n";
  }
  emit(c, j, human);
  return kOk;
}

int cmd_decide_mixing(Ctx& c, const std::string& text, long n_max) {
  if (is_literal(text)) {
    Mat2Z m = parse_matrix(text);
    return report_verdict(c, "decide-mixing", {{"matrix", to_string(m)}}, {PowerFamily{m, parse_poly("n")}},
                          decide_element_mixing(m), n_max);
  }
  Family f = parse_family(text);
  Verdict v = std::holds_alternative<PolyMatFamily>(f) ? decide_polyfamily_mixing(std::get<PolyMatFamily>(f))
                                                        : decide_power_family(std::get<PowerFamily>(f));
  return report_verdict(c, "decide-mixing", {{"family", to_string(f)}}, {f}, v, n_max);
}

int cmd_decide_joint(Ctx& c, const std::vector<std::string>& texts, bool commuting, const std::string& powers,
                     long n_max) {
  std::vector<Family> seqs;
  json input = json::array();
  Verdict v;
  bool literal = std::all_of(texts.begin(), texts.end(), is_literal);
  if (!powers.empty()) {
    if (texts.size() != 1) throw Error(Errc::InvalidArgument, "--powers takes exactly one family");
    auto ks = parse_exponent_list(powers);
    if (literal) {
      Mat2Z t = parse_matrix(texts[0]);
      std::vector<Mat2Z> ts;
      for (unsigned long k : ks) ts.push_back(mat_pow(t, Int(k)));
      for (const Mat2Z& m : ts) {
        seqs.push_back(PowerFamily{m, parse_poly("n")});
        input.push_back(to_string(m));
      }
      v = commuting ? decide_commuting_joint(ts) : decide_joint_powers(ts);
    } else {
      PolyMatFamily f = as_poly(parse_family(texts[0]));
      std::vector<PolyMatFamily> fs;
      for (unsigned long k : ks) fs.push_back(family_power(f, k));
      for (const auto& g : fs) {
        seqs.push_back(g);
        input.push_back(to_string(g));
      }
      v = decide_joint_polyfamilies(fs);
    }
  } else if (literal) {
    std::vector<Mat2Z> ts;
    for (const auto& t : texts) ts.push_back(parse_matrix(t));
    for (const Mat2Z& m : ts) {
      seqs.push_back(PowerFamily{m, parse_poly("n")});
      input.push_back(to_string(m));
    }
    v = commuting ? decide_commuting_joint(ts) : decide_joint_powers(ts);
  } else {
    if (commuting) throw Error(Errc::InvalidArgument, "--commuting takes constant matrices (sequences T_i^n)");
    std::vector<PolyMatFamily> fs;
    for (const auto& t : texts) fs.push_back(as_poly(sequence_of(t)));
    for (const auto& g : fs) {
      seqs.push_back(g);
      input.push_back(to_string(g));
    }
    v = decide_joint_polyfamilies(fs);
  }
  return report_verdict(c, "decide-joint", input, seqs, v, n_max);
}

int cmd_decide_relative(Ctx& c, const std::vector<std::string>& us_text, const std::vector<std::string>& as_text,
                        long n_max) {
  if (us_text.size() != as_text.size())
    throw Error(Errc::InvalidArgument, "give one --a exponent per --U matrix");
  std::vector<Mat2Z> us;
  std::vector<IntPoly> as;
  json input = json::array();
  for (std::size_t i = 0; i < us_text.size(); ++i) {
    us.push_back(parse_matrix(us_text[i]));
    as.push_back(parse_poly(as_text[i]));
    input.push_back({{"U", to_string(us.back())}, {"a", as.back().to_string()}});
  }
  Verdict v = decide_relative_joint_unipotent(us, as);
  bool ok = true;
  json oracle{{"kind", "none"}, {"passed", true}};
  std::string line = "no oracle check for this answer";
  if (is_negative(v.answer)) {
    ok = verify_relative_witness(us, as, v, n_max);
    oracle = {{"kind", "relative_witness"}, {"checked_to", n_max}, {"passed", ok}};
    line = ok ? "witness verified for n <= " + std::to_string(n_max) : "witness FAILED";
  }
  json j{{"command", "decide-relative"}, {"input", input}, {"verdict", to_json(v)}, {"oracle", oracle}};
  emit(c, j, "answer:  " + to_string(v) + "\noracle:  " + line + "\n");
  if (!ok) {
    c.err << "decision-contract violation: " << line << "\n";
    return kContractViolation;
  }
  return kOk;
}

int cmd_rokhlin(Ctx& c, const std::vector<std::string>& ts_text, const std::string& family,
                const std::vector<std::string>& as_text, const std::string& range) {
  std::vector<IntPoly> as;
  for (const auto& a : as_text) as.push_back(parse_poly(a));
  if (!family.empty()) {
    PolyMatFamily f = as_poly(parse_family(family));
    auto [lo, hi] = parse_range(range);
    RokhlinReport r = rokhlin_report(f, as, lo, hi);
    json j = r.to_json();
    j["command"] = "rokhlin-check";
    j["family"] = to_string(f);
    std::ostringstream h;
    h << "family: " << to_string(f) << "\n"
      << std::setw(6) << "n" << std::setw(10) << "gamma" << std::setw(16) << "log ratio lo" << std::setw(16)
      << "log ratio hi" << "\n";
    for (const auto& row : r.rows)
      h << std::setw(6) << row.n << std::setw(10) << to_string(row.gamma) << std::setw(16) << row.log_ratio_lo
        << std::setw(16) << row.log_ratio_hi << "\n";
    h << "trend:  " << to_string(r.trend) << " (the ratio condition is sufficient only)\n";
    if (r.cross_reference) h << "decider: " << to_string(*r.cross_reference) << "\n";
    emit(c, j, h.str());
    return kOk;
  }
  if (ts_text.size() != as.size()) throw Error(Errc::InvalidArgument, "give one --a exponent per --T matrix");
  std::vector<Mat2Z> ts;
  for (const auto& t : ts_text) ts.push_back(parse_matrix(t));
  Verdict v = check_rokhlin_sufficient(ts, as);
  json input = json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) input.push_back({{"T", to_string(ts[i])}, {"a", as[i].to_string()}});
  emit(c, {{"command", "rokhlin-check"}, {"input", input}, {"verdict", to_json(v)}}, "answer:  " + to_string(v) + "\n");
  return kOk;
}

int cmd_witness_triple(Ctx& c, const std::vector<std::string>& texts) {
  std::vector<Mat2Z> ts;
  for (const auto& t : texts) ts.push_back(parse_matrix(t));
  TripleWitness w = witness_same_modulus_triple(ts);
  std::vector<Vec2> xs(w.x.begin(), w.x.end());
  xs.emplace_back(0, 0);
  bool ok = true;
  for (long n = w.period; n <= kTripleCheckN && ok; n += w.period) {
    std::vector<Mat2Z> ms;
    for (const Mat2Z& t : ts) ms.push_back(mat_pow(t, Int(n)));
    ok = witness_holds(ms, xs);
  }
  xs.pop_back();
  json jx = json::array();
  for (const Vec2& x : xs) jx.push_back({x.x.get_str(), x.y.get_str()});
  json j{{"command", "witness-triple"}, {"witness", jx}, {"period", w.period}, {"verified_to", kTripleCheckN},
         {"verified", ok}};
  emit(c, j,
       "witness: " + vec_list(xs) + "\nperiod:  " + std::to_string(w.period) + "\noracle:  " +
           (ok ? "verified for n <= " + std::to_string(kTripleCheckN) : std::string("FAILED")) + "\n");
  if (!ok) {
    c.err << "decision-contract violation: triple witness fails\n";
    return kContractViolation;
  }
  return kOk;
}

int cmd_correlate(Ctx& c, const std::vector<std::string>& fs_text, const std::string& g_text,
                  const std::vector<std::string>& ts_text, const std::string& range) {
  if (fs_text.size() != ts_text.size()) throw Error(Errc::InvalidArgument, "give one --T per --f");
  std::vector<TrigPoly> fs;
  for (const auto& f : fs_text) fs.push_back(parse_trigpoly(f));
  fs.push_back(parse_trigpoly(g_text));
  std::vector<Family> seqs;
  for (const auto& t : ts_text) seqs.push_back(sequence_of(t));
  auto [lo, hi] = parse_range(range);
  json rows = json::array();
  std::ostringstream h;
  h << std::setw(6) << "n" << "  correlation\n";
  for (long n = lo; n <= hi; ++n) {
    std::vector<Mat2Z> ms;
    for (const Family& f : seqs) ms.push_back(evaluate(f, Int(n)));
    ComplexQ z = trig_correlation(fs, ms);
    rows.push_back({{"n", n}, {"re", to_string(z.re)}, {"im", to_string(z.im)}});
    h << std::setw(6) << n << "  " << to_string(z) << "\n";
  }
  emit(c, {{"command", "correlate"}, {"rows", rows}}, h.str());
  return kOk;
}

kernel::Isa parse_isa(const std::string& s) {
  if (s == "auto") return kernel::best_isa();
  if (s == "scalar") return kernel::Isa::Scalar;
  if (s == "avx2") {
    if (!kernel::isa_available(kernel::Isa::Avx2)) throw Error(Errc::InvalidArgument, "AVX2 is not available");
    return kernel::Isa::Avx2;
  }
  throw Error(Errc::ParseError, "--isa must be auto, scalar or avx2");
}

int cmd_estimate(Ctx& c, const std::vector<std::string>& sets, const std::vector<std::string>& ms_text, long Q,
                 const std::string& isa, unsigned threads) {
  if (sets.size() != ms_text.size() + 1)
    throw Error(Errc::InvalidArgument, "give one --set more than --M (the first set is untransformed)");
  std::vector<GridSet> gs;
  for (const auto& s : sets) gs.push_back(parse_set(s));
  std::vector<Mat2Z> ms;
  for (const auto& m : ms_text) ms.push_back(parse_matrix(m));
  kernel::Isa chosen = parse_isa(isa);
  LatticeEstimate e = lattice_correlation(gs, ms, Q, threads, chosen);
  json j{{"command", "estimate"}, {"Q", e.Q},       {"count", e.count.get_str()}, {"estimate", e.estimate},
         {"error_bound", e.error_bound}, {"isa", kernel::isa_name(chosen)}};
  std::ostringstream h;
  h << std::setprecision(10) << "estimate:    " << e.estimate << "\nerror bound: " << e.error_bound
    << "\nlattice:     Q=" << e.Q << ", count=" << e.count.get_str() << ", isa=" << kernel::isa_name(chosen) << "\n";
  emit(c, j, h.str());
  return kOk;
}

int cmd_scan(Ctx& c, const std::string& t, const std::string& s, const std::string& set, long Q,
             const std::string& range) {
  auto [lo, hi] = parse_range(range);
  ScanReport r = conjecture_scan(parse_matrix(t), parse_matrix(s), parse_set(set), lo, hi, Q);
  if (!write_csv(c, r.to_csv())) return kUsage;
  json j = r.to_json();
  j["command"] = "scan-conjecture";
  std::ostringstream h;
  h << "pair:  " << to_string(r.kind) << "\n";
  if (r.limit) {
    h << "limit: " << r.limit->formula << " =";
    for (double v : r.limit->values) h << " " << std::setprecision(10) << v;
    h << "\n";
  } else {
    h << "limit: none predicted\n";
  }
  h << std::setw(5) << "n" << std::setw(16) << "estimate" << std::setw(16) << "error bound" << std::setw(12)
    << "expected" << "  within\n";
  for (const auto& p : r.points) {
    auto e = r.expected_at(p.n);
    h << std::setw(5) << p.n << std::setw(16) << std::setprecision(8) << p.estimate << std::setw(16) << p.error_bound;
    if (e) {
      double tol = p.error_bound + (r.limit ? r.limit->tolerance : 0.0);
      h << std::setw(12) << *e << "  " << (std::abs(p.estimate - *e) <= tol ? "yes" : "no");
    }
    h << (p.resolved ? "" : "  (unresolved)") << "\n";
  }
  h << "plateau from n=" << (r.plateau_begin < r.points.size() ? r.points[r.plateau_begin].n : 0)
    << ", shape " << to_string(r.shape) << (r.limit ? (r.plateau_matches_limit() ? ", matches limit" : ", off limit") : "")
    << "\n";
  emit(c, j, h.str());
  return kOk;
}

int cmd_cesaro(Ctx& c, const std::string& family, const std::string& a, const std::string& b, long n_max, long Q) {
  Family f = sequence_of(family);
  GridSet ga = parse_set(a);
  GridSet gb = b.empty() ? ga : parse_set(b);
  auto pts = cesaro_scan(f, ga, gb, n_max, Q);
  std::ostringstream csv;
  csv << "# toral-cesaro-csv v1\nN,average,error_bound\n" << std::setprecision(17);
  json rows = json::array();
  std::ostringstream h;
  h << std::setw(5) << "N" << std::setw(16) << "average" << std::setw(16) << "error bound\n";
  for (const auto& p : pts) {
    csv << p.n << "," << p.average << "," << p.error_bound << "\n";
    rows.push_back({{"N", p.n}, {"average", p.average}, {"error_bound", p.error_bound}});
    h << std::setw(5) << p.n << std::setw(16) << std::setprecision(8) << p.average << std::setw(16) << p.error_bound
      << "\n";
  }
  if (!write_csv(c, csv.str())) return kUsage;
  emit(c, {{"command", "cesaro-scan"}, {"family", to_string(f)}, {"Q", Q}, {"rows", rows}}, h.str());
  return kOk;
}

int cmd_krengel(Ctx& c, const std::string& f_text, const std::string& t_text) {
  KrengelCertificate k = krengel_orthogonal(parse_trigpoly(f_text), parse_matrix(t_text));
  json corr = json::array();
  for (const auto& [m, z] : k.correlations) corr.push_back({{"m", m}, {"re", to_string(z.re)}, {"im", to_string(z.im)}});
  json j{{"command", "krengel"}, {"modulus", k.modulus}, {"transport_set", k.transport_set},
         {"correlations", corr}, {"all_zero", k.all_zero()}};
  std::string b;
  for (long x : k.transport_set) b += (b.empty() ? "" : ", ") + std::to_string(x);
  emit(c, j,
       "modulus:       " + std::to_string(k.modulus) + "\ntransport set: {" + b + "}\ncertificate:   " +
           std::to_string(k.correlations.size()) + " multiples checked, " + (k.all_zero() ? "all zero" : "NONZERO") +
           "\n");
  if (!k.all_zero()) {
    c.err << "decision-contract violation: nonzero correlation in certificate\n";
    return kContractViolation;
  }
  return kOk;
}

int cmd_find_unipotent(Ctx& c, const std::vector<std::string>& gens_text, long L) {
  std::vector<Mat2Z> gens;
  for (const auto& g : gens_text) gens.push_back(parse_matrix(g));
  UnipotentSearch s = find_unipotent(gens, L);
  json j{{"command", "find-unipotent"}, {"found", s.found}, {"max_length", s.max_length}, {"explored", s.explored}};
  std::string h;
  if (s.found) {
    j["word"] = to_string(s.word);
    j["value"] = to_string(s.value);
    h = "found:    " + to_string(s.word) + " = " + to_string(s.value) + "\n";
  } else {
    h = "none up to length " + std::to_string(L) + " (not a proof that the subgroup has no parabolic elements)\n";
  }
  h += "explored: " + std::to_string(s.explored) + " distinct matrices\n";
  emit(c, j, h);
  return kOk;
}

int cmd_scenarios(Ctx& c, const std::string& filter, bool list_only) {
  json results = json::array();
  std::ostringstream h;
  int failed = 0, ran = 0;
  for (const Scenario& s : bundled_scenarios()) {
    if (!s.matches(filter)) continue;
    std::string tags;
    for (const auto& t : s.tags) tags += (tags.empty() ? "" : ",") + t;
    if (list_only) {
      results.push_back({{"name", s.name}, {"tags", s.tags}, {"note", s.note}, {"expected", s.expected}});
      h << std::left << std::setw(30) << s.name << std::setw(28) << tags << s.note << "\n";
      continue;
    }
    ScenarioOutcome o;
    try {
      o = s.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.observed = std::string("exception: ") + e.what();
    }
    ++ran;
    if (!o.passed) ++failed;
    results.push_back({{"name", s.name},
                       {"tags", s.tags},
                       {"note", s.note},
                       {"expected", s.expected},
                       {"observed", o.observed},
                       {"passed", o.passed},
                       {"details", o.details}});
    h << (o.passed ? "PASS " : "FAIL ") << std::left << std::setw(30) << s.name << o.observed << "\n";
  }
  if (!list_only) h << ran - failed << "/" << ran << " scenarios passed\n";
  if (!list_only && ran == 0) {
    c.err << "error: no scenario matches '" << filter << "'\n";
    return kUsage;
  }
  emit(c, {{"command", "scenarios"}, {"filter", filter}, {"scenarios", results}}, h.str());
  return failed ? kContractViolation : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Ctx c{out, err, false, {}};
  CLI::App app{"Exact mixing deciders and correlation oracles for toral automorphisms in SL(2,Z).", "toral"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", c.json_out, "Emit a JSON report (sorted keys) instead of the table");
  app.add_option("--csv", c.csv_path, "Write scan data as CSV to PATH (scan-conjecture, cesaro-scan)");
  app.footer(
      "Matrices: \"[[a,b],[c,d]]\". Families: \"[[p,p],[p,p]]\" with polynomials in n (expression or\n"
      "coefficient list [c0,c1,...]), \"[[a,b],[c,d]]^(p)\", or a product \"F1 * F2\" of such factors.\n"
      "Grid sets: \"x0 x1 y0 y1 @ q\", inline JSON {\"q\":..,\"cells\":[[i,j],..]} or a JSON file.\n"
      "TORAL_Q sets the default lattice resolution (4096).\n"
      "Exit codes: 0 success, 1 oracle disagrees with a decision, 2 usage or input error.");

  std::string s1, s2, s3, range, filter, powers, isa = "auto";
  std::vector<std::string> v1, v2, v3;
  long n_max = kWitnessCheckN, cesaro_n = 10, L = 6, Q = 0;
  unsigned threads = 0;
  bool flag = false;

  auto* classify_cmd = app.add_subcommand("classify", "Trace class, eigenvalue or fixed vector of a matrix");
  classify_cmd->add_option("matrix", s1, "Matrix literal")->required();

  auto* mixing = app.add_subcommand("decide-mixing", "Mixing of T^n, a polynomial family or a power family");
  mixing->add_option("family", s1, "Matrix or family")->required();
  mixing->add_option("--check-n", n_max, "Verify witnesses for n up to this bound")->capture_default_str();

  auto* joint = app.add_subcommand("decide-joint", "Joint mixing of several sequences");
  joint->add_option("families", v1, "Matrices (sequences T_i^n) or families")->required();
  joint->add_flag("--commuting", flag, "Use the commuting-tuple decider");
  joint->add_option("--powers", powers, "Exponents k_1,k_2,.. applied to a single family");
  joint->add_option("--check-n", n_max, "Verify witnesses for n up to this bound")->capture_default_str();

  auto* relative = app.add_subcommand("decide-relative", "Relative joint mixing of unipotent powers U_i^{a_i(n)}");
  relative->add_option("--U", v1, "Unipotent matrix (repeat)")->required()->allow_extra_args(false);
  relative->add_option("--a", v2, "Exponent polynomial (repeat, one per --U)")->required()->allow_extra_args(false);
  relative->add_option("--check-n", n_max, "Verify witnesses for n up to this bound")->capture_default_str();

  auto* rokhlin = app.add_subcommand("rokhlin-check", "Divergence condition for T_i^{a_i(n)}, or a norm-ratio report");
  rokhlin->add_option("--T", v1, "Hyperbolic matrix (repeat, one per --a)")->allow_extra_args(false);
  rokhlin->add_option("--family", s1, "Hyperbolic family for the norm-ratio report");
  rokhlin->add_option("--a", v2, "Exponent polynomial (repeat)")->required()->allow_extra_args(false);
  rokhlin->add_option("--n", range, "Range a..b for the report")->default_val("1..30");

  auto* triple = app.add_subcommand("witness-triple", "Exact witness for three matrices sharing |trace|");
  triple->add_option("matrices", v1, "Three matrices")->required()->expected(3);

  auto* correlate = app.add_subcommand("correlate", "Exact correlation of trigonometric polynomials");
  correlate->add_option("--f", v1, "Polynomial \"x1 x2 re [im]; ...\" (repeat, one per --T)")->required()->allow_extra_args(false);
  correlate->add_option("--T", v2, "Matrix (powers T^n) or family (repeat)")->required()->allow_extra_args(false);
  correlate->add_option("--g", s1, "Untransformed polynomial")->required();
  correlate->add_option("--n", range, "Range a..b")->default_val("1..10");

  auto* estimate = app.add_subcommand("estimate", "Lattice estimate of mu(G_0 cap M_1^-1 G_1 cap ...)");
  estimate->add_option("--set", v1, "Grid set (repeat; the first is untransformed)")->required()->allow_extra_args(false);
  estimate->add_option("--M", v2, "Matrix applied to the next set (repeat)")->allow_extra_args(false);
  estimate->add_option("--Q", Q, "Lattice resolution (default $TORAL_Q or 4096)");
  estimate->add_option("--isa", isa, "Kernel: auto, scalar or avx2")->capture_default_str();
  estimate->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* scan = app.add_subcommand("scan-conjecture", "Scan mu(D cap T^n D cap S^n D) against the predicted limit");
  scan->add_option("--T", s1, "First matrix")->required();
  scan->add_option("--S", s2, "Second matrix")->required();
  auto* rect = scan->add_option("--rect", s3, "Rectangle \"x0 x1 y0 y1 @ q\"");
  scan->add_option("--grid", s3, "Grid set JSON or file")->excludes(rect);
  scan->add_option("--Q", Q, "Lattice resolution (default $TORAL_Q or 4096)");
  scan->add_option("--n", range, "Range a..b")->default_val("1..6");

  auto* cesaro = app.add_subcommand("cesaro-scan", "Cesaro averages of |mu(A cap T_n^-1 B) - mu(A) mu(B)|");
  cesaro->add_option("--family", s1, "Matrix (powers T^n) or family")->required();
  cesaro->add_option("--A", s2, "Grid set A")->required();
  cesaro->add_option("--B", s3, "Grid set B (default A)");
  cesaro->add_option("--N", cesaro_n, "Largest N")->capture_default_str();
  cesaro->add_option("--Q", Q, "Lattice resolution (default $TORAL_Q or 4096)");

  auto* krengel = app.add_subcommand("krengel", "Modulus M with f orthogonal to f o T^m for all multiples m of M");
  krengel->add_option("--f", s1, "Mean-zero polynomial \"x1 x2 re [im]; ...\"")->required();
  krengel->add_option("--T", s2, "Hyperbolic matrix")->required();

  auto* unip = app.add_subcommand("find-unipotent", "Search reduced words for a parabolic element");
  unip->add_option("--gen", v1, "Generator (repeat)")->required()->allow_extra_args(false);
  unip->add_option("--L", L, "Maximum word length")->capture_default_str();

  auto* scen = app.add_subcommand("scenarios", "Run the bundled example suite");
  scen->add_option("--filter", filter, "Tag or name fragment");
  scen->add_flag("--list", flag, "List scenarios without running them");

  // A value "[...]" would be read as CLI11 array syntax and split at commas;
  // a leading space keeps matrix literals whole and every parser trims it.
  std::vector<std::string> reversed;
  for (auto it = args.rbegin(); it != args.rend(); ++it)
    reversed.push_back(!it->empty() && it->front() == '[' ? " " + *it : *it);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (Q == 0 && (estimate->parsed() || scan->parsed() || cesaro->parsed())) Q = default_q();
    if (classify_cmd->parsed()) return cmd_classify(c, s1);
    if (mixing->parsed()) return cmd_decide_mixing(c, s1, n_max);
    if (joint->parsed()) return cmd_decide_joint(c, v1, flag, powers, n_max);
    if (relative->parsed()) return cmd_decide_relative(c, v1, v2, n_max);
    if (rokhlin->parsed()) return cmd_rokhlin(c, v1, s1, v2, range);
    if (triple->parsed()) return cmd_witness_triple(c, v1);
    if (correlate->parsed()) return cmd_correlate(c, v1, s1, v2, range);
    if (estimate->parsed()) return cmd_estimate(c, v1, v2, Q, isa, threads);
    if (scan->parsed()) {
      if (s3.empty()) throw Error(Errc::InvalidArgument, "scan-conjecture needs --rect or --grid");
      return cmd_scan(c, s1, s2, s3, Q, range);
    }
    if (cesaro->parsed()) return cmd_cesaro(c, s1, s2, s3, cesaro_n, Q);
    if (krengel->parsed()) return cmd_krengel(c, s1, s2);
    if (unip->parsed()) return cmd_find_unipotent(c, v1, L);
    if (scen->parsed()) return cmd_scenarios(c, filter, flag);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace toral::cli
