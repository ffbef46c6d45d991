#include "toral/decider.hpp"

#include <algorithm>
#include <map>

#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/linalg.hpp"
#include "toral/quadratic.hpp"

namespace toral {

namespace {

// Frequency x with tT^n x = x whenever n = 0 mod period.
struct FixedFrequency {
  Vec2 x;
  long period;
  std::string reason;
};

FixedFrequency fixed_frequency(const Mat2Z& t) {
  MatClass cls = classify(t);
  if (cls.unipotent()) return {fixed_vector(t.transpose()), cls.sign > 0 ? 1L : 2L, "FixedFrequency"};
  return {Vec2(1L, 0L), static_cast<long>(cls.order), "FiniteOrder"};
}

// Flattened witness: last nonzero coordinate negative.
std::vector<Vec2> normalized(std::vector<Vec2> w) {
  std::vector<Int> flat;
  for (const Vec2& v : w) {
    flat.push_back(v.x);
    flat.push_back(v.y);
  }
  std::vector<Int> copy = flat;
  normalize_sign(copy, SignRule::LastNonzeroNegative);
  if (copy != flat)
    for (Vec2& v : w) v = -v;
  return w;
}

Verdict negative(Answer a, std::vector<Vec2> w, std::vector<std::string> reasons, long period) {
  Verdict v{a, to_witness(normalized(std::move(w))), std::move(reasons)};
  v.set_period(period);
  return v;
}

// Coefficient of n^p in entry (r, c) of tF.
Int transposed_coeff(const PolyMatFamily& f, int r, int c, int p) {
  const IntPoly* e[2][2] = {{&f.a, &f.b}, {&f.c, &f.d}};
  return e[c][r]->coeff(p);
}

}  // namespace

bool witness_holds(const std::vector<Mat2Z>& ms, const std::vector<Vec2>& witness) {
  if (witness.size() != ms.size() + 1) throw Error(Errc::InvalidArgument, "witness length must be k+1");
  Vec2 acc = witness.back();
  for (std::size_t i = 0; i < ms.size(); ++i) acc += ms[i].transpose().apply(witness[i]);
  return acc.is_zero();
}

Verdict decide_element_mixing(const Mat2Z& t) {
  MatClass cls = classify(t);
  if (cls.hyperbolic()) return {Answer::Mixing, std::nullopt, {"Hyperbolic"}};
  FixedFrequency ff = fixed_frequency(t);
  return negative(Answer::NotMixing, {ff.x, -ff.x}, {ff.reason}, ff.period);
}

Verdict decide_joint_polyfamilies(const std::vector<PolyMatFamily>& fs) {
  if (fs.empty()) throw Error(Errc::InvalidArgument, "need at least one family");
  const std::size_t k = fs.size();
  int deg = 0;
  for (const auto& f : fs) {
    require_unimodular(f);
    deg = std::max(deg, f.degree());
  }
  const std::size_t cols = 2 * k + 2;
  RatMatrix a;
  for (int p = 0; p <= deg; ++p) {
    for (int r = 0; r < 2; ++r) {
      std::vector<Rat> row(cols, Rat(0));
      for (std::size_t i = 0; i < k; ++i)
        for (int c = 0; c < 2; ++c) row[2 * i + c] = transposed_coeff(fs[i], r, c, p);
      if (p == 0) row[2 * k + r] = 1;
      a.push_back(std::move(row));
    }
  }
  auto kernel = choose_kernel_vector(a, cols, SignRule::LastNonzeroNegative);
  bool single = k == 1;
  if (!kernel) return {single ? Answer::Mixing : Answer::JointlyMixing, std::nullopt, {"TrivialKernel"}};
  std::vector<Vec2> w;
  for (std::size_t i = 0; i <= k; ++i) w.emplace_back((*kernel)[2 * i], (*kernel)[2 * i + 1]);
  return negative(single ? Answer::NotMixing : Answer::NotJointlyMixing, std::move(w), {"KernelWitness"}, 1);
}

Verdict decide_polyfamily_mixing(const PolyMatFamily& f) { return decide_joint_polyfamilies({f}); }

TripleWitness witness_same_modulus_triple(const Mat2Z& t1, const Mat2Z& t2, const Mat2Z& t3) {
  const std::array<const Mat2Z*, 3> ts{&t1, &t2, &t3};
  for (const Mat2Z* t : ts) {
    if (!classify(*t).hyperbolic()) throw Error(Errc::NotHyperbolic, to_string(*t) + " is not hyperbolic");
  }
  Int at = abs(t1.trace());
  if (abs(t2.trace()) != at || abs(t3.trace()) != at)
    throw Error(Errc::TracesDiffer, "same-modulus triple needs equal |trace|");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (*ts[i] == *ts[j] || *ts[i] == -*ts[j])
        throw Error(Errc::NotPairwiseDistinct, "inputs " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                                   " agree up to sign");
  // Normalized tT_i have one common eigenvalue lambda; the identity for all n
  // splits into sum P+_i x_i = 0 and its Galois conjugate.
  std::array<EigenData, 3> eig;
  std::array<int, 3> signs{};
  for (int i = 0; i < 3; ++i) {
    signs[i] = sgn(ts[i]->trace());
    Mat2Z a = ts[i]->transpose();
    eig[i] = eigen_data(signs[i] > 0 ? a : -a);
  }
  RatMatrix m;
  for (int r = 0; r < 2; ++r) {
    std::vector<Rat> rat_part(6), surd_part(6);
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 2; ++c) {
        const QuadVal& e = eig[i].p_plus(r, c);
        rat_part[2 * i + c] = e.p();
        surd_part[2 * i + c] = e.q();
      }
    m.push_back(rat_part);
    m.push_back(surd_part);
  }
  auto kernel = choose_kernel_vector(m, 6, SignRule::LastNonzeroNegative);
  if (!kernel) throw Error(Errc::InvalidArgument, "same-modulus kernel unexpectedly trivial");
  TripleWitness w;
  for (int i = 0; i < 3; ++i) w.x[i] = Vec2((*kernel)[2 * i], (*kernel)[2 * i + 1]);
  w.period = (signs[0] == signs[1] && signs[1] == signs[2]) ? 1 : 2;
  return w;
}

TripleWitness witness_same_modulus_triple(const std::vector<Mat2Z>& ts) {
  if (ts.size() == 2)
    throw Error(Errc::SharedModulusPairOnly, "two matrices sharing |trace| are jointly mixing; no witness exists");
  if (ts.size() != 3) throw Error(Errc::InvalidArgument, "expected exactly three matrices");
  return witness_same_modulus_triple(ts[0], ts[1], ts[2]);
}

Verdict decide_joint_powers(const std::vector<Mat2Z>& ts) {
  if (ts.empty()) throw Error(Errc::InvalidArgument, "need at least one matrix");
  const std::size_t k = ts.size();
  std::vector<std::string> reasons;
  std::optional<std::vector<Vec2>> witness;
  long period = 1;
  auto set_witness = [&](std::vector<Vec2> w, long p) {
    if (!witness) {
      witness = std::move(w);
      period = p;
    }
  };
  std::vector<Vec2> zeros(k + 1, Vec2(0L, 0L));

  for (std::size_t i = 0; i < k; ++i) {
    if (classify(ts[i]).hyperbolic()) continue;
    if (reasons.empty() || reasons.back() != "NonHyperbolicFactor") reasons.push_back("NonHyperbolicFactor");
    FixedFrequency ff = fixed_frequency(ts[i]);
    auto w = zeros;
    w[i] = ff.x;
    w[k] = -ff.x;
    set_witness(std::move(w), ff.period);
  }
  bool equal_seen = false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      bool same = ts[i] == ts[j];
      if (!same && ts[i] != -ts[j]) continue;
      if (!equal_seen) reasons.push_back("EqualUpToSign");
      equal_seen = true;
      auto w = zeros;
      w[i] = Vec2(1L, 0L);
      w[j] = Vec2(-1L, 0L);
      set_witness(std::move(w), same ? 1 : 2);
    }
  // Group hyperbolic classes (up to sign) by |trace|.
  std::map<Int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < k; ++i) {
    if (!classify(ts[i]).hyperbolic()) continue;
    auto& g = groups[abs(ts[i].trace())];
    bool dup = std::any_of(g.begin(), g.end(), [&](std::size_t j) { return ts[j] == ts[i] || ts[j] == -ts[i]; });
    if (!dup) g.push_back(i);
  }
  for (const auto& [trace, idx] : groups) {
    if (idx.size() < 3) continue;
    reasons.push_back("ThreeSharedModulus");
    TripleWitness tw = witness_same_modulus_triple(ts[idx[0]], ts[idx[1]], ts[idx[2]]);
    auto w = zeros;
    for (int m = 0; m < 3; ++m) w[idx[m]] = tw.x[m];
    set_witness(std::move(w), tw.period);
    break;
  }
  if (!witness) return {Answer::JointlyMixing, std::nullopt, {}};
  return negative(Answer::NotJointlyMixing, std::move(*witness), std::move(reasons), period);
}

Verdict decide_commuting_joint(const std::vector<Mat2Z>& ts) {
  if (ts.empty()) throw Error(Errc::InvalidArgument, "need at least one matrix");
  for (const auto& t : ts) require_unimodular(t);
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (!commute(ts[i], ts[j]))
        throw Error(Errc::NotCommuting, "inputs " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                            " do not commute");
  const std::size_t k = ts.size();
  std::vector<Vec2> zeros(k + 1, Vec2(0L, 0L));
  for (std::size_t i = 0; i < k; ++i) {
    if (classify(ts[i]).hyperbolic()) continue;
    FixedFrequency ff = fixed_frequency(ts[i]);
    auto w = zeros;
    w[i] = ff.x;
    w[k] = -ff.x;
    return negative(Answer::NotJointlyMixing, std::move(w), {"NonHyperbolicFactor"}, ff.period);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      // tT_j^n u - tT_i^n u = tT_i^n (tR^n u - u) with R = T_i^-1 T_j.
      Mat2Z r = ts[i].adjugate() * ts[j];
      if (classify(r).hyperbolic()) continue;
      FixedFrequency ff = fixed_frequency(r);
      auto w = zeros;
      w[i] = -ff.x;
      w[j] = ff.x;
      std::vector<std::string> reasons{"NonHyperbolicQuotient"};
      if (r.is_plus_minus_identity()) reasons.push_back("EqualUpToSign");
      return negative(Answer::NotJointlyMixing, std::move(w), std::move(reasons), ff.period);
    }
  return {Answer::JointlyMixing, std::nullopt, {}};
}

namespace {

// |lambda|^e for e >= 0.
QuadVal abs_lambda_pow(const EigenData& e, const Int& exp) { return e.lambda.abs().pow(exp); }

// Sign of log|l_i| c_i - log|l_j| c_j. Index 0 stands for a_0 = 0.
int compare_scaled_logs(const EigenData* ei, const Int& ci, const EigenData* ej, const Int& cj) {
  int si = ei ? sgn(ci) : 0;
  int sj = ej ? sgn(cj) : 0;
  if (si == 0 || sj == 0 || si != sj) return si - sj > 0 ? 1 : (si - sj < 0 ? -1 : 0);
  // Same nonzero sign: compare |l_i|^|c_i| with |l_j|^|c_j|, then flip for negatives.
  QuadVal li = abs_lambda_pow(*ei, abs(ci));
  QuadVal lj = abs_lambda_pow(*ej, abs(cj));
  int c = ei->d == ej->d ? (li - lj).sign() : compare(li, lj);
  return si > 0 ? c : -c;
}

}  // namespace

Verdict check_rokhlin_sufficient(const std::vector<Mat2Z>& ts, const std::vector<IntPoly>& as) {
  if (ts.size() != as.size()) throw Error(Errc::InvalidArgument, "matrix and exponent lists differ in length");
  if (ts.empty()) throw Error(Errc::InvalidArgument, "need at least one matrix");
  std::vector<EigenData> eig;
  for (const auto& t : ts) eig.push_back(eigen_data(t));
  const std::size_t k = ts.size();
  std::vector<std::string> failures, dominance;
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = i + 1; j <= k; ++j) {
      const EigenData* ei = i == 0 ? nullptr : &eig[i - 1];
      const EigenData* ej = &eig[j - 1];
      const IntPoly zero;
      const IntPoly& ai = i == 0 ? zero : as[i - 1];
      const IntPoly& aj = as[j - 1];
      int deg = std::max(ai.degree(), aj.degree());
      int sign = 0;
      int at = 0;
      for (int p = deg; p >= 1 && sign == 0; --p) {
        sign = compare_scaled_logs(ei, ai.coeff(p), ej, aj.coeff(p));
        at = p;
      }
      std::string pair = std::to_string(i) + "," + std::to_string(j);
      if (sign == 0) {
        failures.push_back("BoundedDifference:" + pair);
      } else {
        dominance.push_back("Diverges:" + pair + ":degree=" + std::to_string(at) + (sign > 0 ? ":+" : ":-"));
      }
    }
  }
  if (!failures.empty()) return {Answer::Unknown, std::nullopt, failures};
  return {Answer::SufficientConditionHolds, std::nullopt, dominance};
}

Verdict decide_relative_joint_unipotent(const std::vector<Mat2Z>& us, const std::vector<IntPoly>& as) {
  if (us.size() != as.size()) throw Error(Errc::InvalidArgument, "matrix and exponent lists differ in length");
  if (us.empty()) throw Error(Errc::InvalidArgument, "need at least one matrix");
  const std::size_t k = us.size();
  std::vector<Vec2> vs;
  int deg = 0;
  for (std::size_t i = 0; i < k; ++i) {
    MatClass cls = classify(us[i]);
    if (cls.unipotent() && cls.sign < 0)
      throw Error(Errc::NotUnipotent, to_string(us[i]) + " has trace -2; its powers carry a parity-dependent sign");
    vs.push_back(fixed_vector(us[i].transpose()));
    deg = std::max(deg, as[i].degree());
  }
  const std::size_t cols = k + 2;
  RatMatrix a;
  for (int p = 0; p <= deg; ++p) {
    for (int r = 0; r < 2; ++r) {
      std::vector<Rat> row(cols, Rat(0));
      for (std::size_t i = 0; i < k; ++i) row[i] = as[i].coeff(p) * (r == 0 ? vs[i].x : vs[i].y);
      if (p == 0) row[k + r] = 1;
      a.push_back(std::move(row));
    }
  }
  auto kernel = choose_kernel_vector(a, cols, SignRule::FirstNonzeroPositive);
  if (!kernel) return {Answer::RelativelyJointlyMixing, std::nullopt, {"TrivialKernel"}};
  Witness w{std::vector<Int>(kernel->begin(), kernel->begin() + static_cast<long>(k)),
            std::vector<Int>(kernel->begin() + static_cast<long>(k), kernel->end())};
  return {Answer::NotRelativelyJointlyMixing, std::move(w), {"KernelWitness"}};
}

}  // namespace toral
