#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "toral/decider.hpp"
#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/family.hpp"
#include "toral/linalg.hpp"
#include "toral/verdict.hpp"

using namespace toral;
using toral::test::naive_pow;
using toral::test::random_hyperbolic;
using toral::test::random_sl2;
using toral::test::transported_sum;
using toral::test::uniform;

namespace {

const Mat2Z kCat{2, 1, 1, 1};
const Mat2Z kCat2{1, 1, 1, 2};
const Mat2Z kShear{1, 1, 0, 1};
const Mat2Z kShearT{1, 0, 1, 1};

/// Witness identity checked directly on sum tM_i x_i + y for n = 1..n_max.
bool holds_for(const std::vector<Family>& fs, const Verdict& v, long n_max) {
  if (!v.witness) return false;
  auto w = v.frequencies();
  Vec2 y = w.back();
  w.pop_back();
  for (long n = v.period(); n <= n_max; n += v.period()) {
    std::vector<Mat2Z> ms;
    for (const Family& f : fs) ms.push_back(evaluate(f, Int(n)));
    if (!transported_sum(ms, w, y).is_zero()) return false;
  }
  return true;
}

Family powers(const Mat2Z& m) { return PowerFamily{m, IntPoly::n()}; }

bool witness_normalized(const Verdict& v) {
  std::vector<Int> flat;
  for (const auto& g : *v.witness) flat.insert(flat.end(), g.begin(), g.end());
  Int g = 0;
  for (const Int& x : flat) g = gcd(g, x);
  auto last = std::find_if(flat.rbegin(), flat.rend(), [](const Int& x) { return sgn(x) != 0; });
  return g == 1 && last != flat.rend() && sgn(*last) < 0;
}

PolyMatFamily random_poly_family() {
  // Products of unipotent powers with polynomial exponents are unimodular.
  std::vector<PowerFamily> fs;
  for (int k = 0, m = static_cast<int>(uniform(1, 3)); k < m; ++k) {
    long s = uniform(1, 2);
    Mat2Z base = uniform(0, 1) ? Mat2Z{1, s, 0, 1} : Mat2Z{1, 0, s, 1};
    fs.push_back({base, IntPoly(std::vector<Int>{Int(uniform(-2, 2)), Int(uniform(-2, 2)), Int(uniform(-1, 1))})});
  }
  PolyMatFamily f = expand_unipotent_products(fs);
  return PolyMatFamily::constant(random_sl2(2)) * f;
}

}  // namespace

TEST_CASE("element mixing") {
  CHECK(decide_element_mixing(kCat).answer == Answer::Mixing);
  Verdict s = decide_element_mixing(kShear);
  CHECK(s.answer == Answer::NotMixing);
  CHECK(*s.witness == to_witness({Vec2(0, 1), Vec2(0, -1)}));
  Verdict r = decide_element_mixing(Mat2Z{0, -1, 1, 0});
  CHECK(r.answer == Answer::NotMixing);
  CHECK(r.period() == 4);
  CHECK_THROWS_AS(decide_element_mixing(Mat2Z{1, 1, 1, 1}), Error);
}

TEST_CASE("element mixing agrees with the trace on a full box") {
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long c = -5; c <= 5; ++c)
        for (long d = -5; d <= 5; ++d) {
          if (a * d - b * c != 1) continue;
          Mat2Z m{a, b, c, d};
          Verdict v = decide_element_mixing(m);
          CHECK((v.answer == Answer::Mixing) == (std::abs(a + d) > 2));
          if (v.answer == Answer::NotMixing) {
            CHECK(holds_for({powers(m)}, v, 24));
            CHECK(witness_normalized(v));
          }
        }
}

TEST_CASE("polynomial family mixing") {
  Verdict v = decide_polyfamily_mixing(parse_poly_family("[[n, n - 1], [1, 1]]"));
  CHECK(v.answer == Answer::NotMixing);
  CHECK(*v.witness == to_witness({Vec2(0, 1), Vec2(-1, -1)}));
  CHECK(decide_polyfamily_mixing(parse_poly_family("[[1 - n^2, -n], [n, 1]]")).answer == Answer::Mixing);
  CHECK(decide_polyfamily_mixing(parse_poly_family("[[n, n^2 - 1], [1, n]]")).answer == Answer::Mixing);
  CHECK(decide_polyfamily_mixing(PolyMatFamily::constant(kCat)).answer == Answer::NotMixing);
}

TEST_CASE("negative polynomial verdicts carry valid witnesses") {
  for (int i = 0; i < 100; ++i) {
    PolyMatFamily f = random_poly_family();
    Verdict v = decide_polyfamily_mixing(f);
    if (v.answer == Answer::NotMixing) {
      CHECK(holds_for({f}, v, 30));
      CHECK(witness_normalized(v));
    } else {
      // A polynomial identity of degree <= D that holds at D + 1 points holds
      // for all n; no small (x, y) may do so.
      int pts = std::max(f.degree(), 0) + 1;
      for (long x1 = -2; x1 <= 2; ++x1)
        for (long x2 = -2; x2 <= 2; ++x2) {
          if (x1 == 0 && x2 == 0) continue;
          Vec2 first = f(Int(1)).transpose().apply(Vec2(x1, x2));
          bool constant = true;
          for (long n = 2; n <= pts; ++n) constant = constant && f(Int(n)).transpose().apply(Vec2(x1, x2)) == first;
          CHECK_FALSE(constant);
        }
    }
  }
}

TEST_CASE("joint powers") {
  CHECK(decide_joint_powers({kCat, kCat2}).answer == Answer::JointlyMixing);
  std::vector<Mat2Z> triple{kCat, kShear.adjugate() * kCat * kShear, kShearT.adjugate() * kCat * kShearT};
  Verdict v = decide_joint_powers(triple);
  CHECK(v.answer == Answer::NotJointlyMixing);
  CHECK(v.has_reason("ThreeSharedModulus"));
  std::vector<Family> fs{powers(triple[0]), powers(triple[1]), powers(triple[2])};
  CHECK(holds_for(fs, v, 30));
  Verdict u = decide_joint_powers({kCat, kShear});
  CHECK(u.answer == Answer::NotJointlyMixing);
  CHECK(u.has_reason("NonHyperbolicFactor"));
  CHECK(holds_for({powers(kCat), powers(kShear)}, u, 30));
  Verdict e = decide_joint_powers({kCat, -kCat});
  CHECK(e.has_reason("EqualUpToSign"));
  CHECK(holds_for({powers(kCat), powers(-kCat)}, e, 30));
}

TEST_CASE("joint powers are invariant under permutation of the tuple") {
  for (int i = 0; i < 40; ++i) {
    std::vector<Mat2Z> ts;
    for (int k = 0, m = static_cast<int>(uniform(2, 3)); k < m; ++k) ts.push_back(random_sl2(3));
    if (uniform(0, 2) == 0) ts.push_back(ts[0].adjugate() * ts[1] * ts[0]);
    Verdict base = decide_joint_powers(ts);
    std::sort(ts.begin(), ts.end());
    do {
      Verdict p = decide_joint_powers(ts);
      CHECK(p.answer == base.answer);
      if (p.witness) {
        std::vector<Family> fs;
        for (const Mat2Z& t : ts) fs.push_back(powers(t));
        CHECK(holds_for(fs, p, 12));
      }
    } while (std::next_permutation(ts.begin(), ts.end()));
  }
}

TEST_CASE("same-modulus triple witness") {
  std::vector<Mat2Z> ts{kCat, kShear.adjugate() * kCat * kShear, kShearT.adjugate() * kCat * kShearT};
  TripleWitness w = witness_same_modulus_triple(ts[0], ts[1], ts[2]);
  CHECK(std::any_of(w.x.begin(), w.x.end(), [](const Vec2& x) { return !x.is_zero(); }));
  for (long n = 1; n <= 30; ++n)
    CHECK(transported_sum({naive_pow(ts[0], n), naive_pow(ts[1], n), naive_pow(ts[2], n)},
                          {w.x[0], w.x[1], w.x[2]}, Vec2(0, 0))
              .is_zero());
  CHECK_THROWS_AS(witness_same_modulus_triple(kCat, kCat, kCat2), Error);
  CHECK_THROWS_AS(witness_same_modulus_triple(kCat, kCat2, Mat2Z{3, 1, 2, 1}), Error);
  CHECK_THROWS_AS(witness_same_modulus_triple(std::vector<Mat2Z>{kCat, kCat2}), Error);
  // Mixed trace signs: the identity holds on even n.
  TripleWitness m = witness_same_modulus_triple(kCat, -kCat2, ts[2]);
  CHECK(m.period == 2);
  for (long n = 2; n <= 20; n += 2)
    CHECK(transported_sum({naive_pow(kCat, n), naive_pow(-kCat2, n), naive_pow(ts[2], n)}, {m.x[0], m.x[1], m.x[2]},
                          Vec2(0, 0))
              .is_zero());
}

TEST_CASE("random same-modulus triples") {
  for (int i = 0; i < 30; ++i) {
    Mat2Z t = random_hyperbolic(3);
    Mat2Z a = random_sl2(2), b = random_sl2(3);
    std::vector<Mat2Z> ts{t, a.adjugate() * t * a, b.adjugate() * t * b};
    bool distinct = true;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) distinct = distinct && ts[p] != ts[q] && ts[p] != -ts[q];
    if (!distinct) continue;
    TripleWitness w = witness_same_modulus_triple(ts);
    for (long n = w.period; n <= 12; n += w.period)
      CHECK(transported_sum({naive_pow(ts[0], n), naive_pow(ts[1], n), naive_pow(ts[2], n)},
                            {w.x[0], w.x[1], w.x[2]}, Vec2(0, 0))
                .is_zero());
  }
}

TEST_CASE("joint polynomial families") {
  PolyMatFamily f = parse_poly_family("[[n, n^2 - 1], [1, n]]");
  Verdict v = decide_joint_polyfamilies({f, family_power(f, 2)});
  CHECK(v.answer == Answer::NotJointlyMixing);
  CHECK(*v.witness == to_witness({Vec2(-2, 0), Vec2(0, 1), Vec2(0, -1)}));
  CHECK(holds_for({f, family_power(f, 2)}, v, 1000));
  PolyMatFamily g = parse_poly_family("[[n^2, n^3 - 1], [1, n]]");
  CHECK(decide_joint_polyfamilies({g, family_power(g, 2)}).answer == Answer::JointlyMixing);
  Verdict same = decide_joint_polyfamilies({f, f});
  CHECK(*same.witness == to_witness({Vec2(1, 0), Vec2(-1, 0), Vec2(0, 0)}));
}

TEST_CASE("joint polyfamilies with k = 1 agree with polyfamily mixing") {
  for (int i = 0; i < 200; ++i) {
    PolyMatFamily f = random_poly_family();
    Verdict a = decide_polyfamily_mixing(f);
    Verdict b = decide_joint_polyfamilies({f});
    CHECK(a.answer == b.answer);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("joint polyfamilies: permuting the tuple permutes the witness") {
  for (int i = 0; i < 50; ++i) {
    std::vector<PolyMatFamily> fs{random_poly_family(), random_poly_family()};
    if (uniform(0, 1)) fs.push_back(family_power(fs[0], 2));
    Verdict a = decide_joint_polyfamilies(fs);
    std::vector<PolyMatFamily> rs(fs.rbegin(), fs.rend());
    Verdict b = decide_joint_polyfamilies(rs);
    CHECK(a.answer == b.answer);
    if (b.witness) CHECK(holds_for(std::vector<Family>(rs.begin(), rs.end()), b, 15));
  }
}

TEST_CASE("commuting joint decider") {
  Mat2Z t2 = naive_pow(kCat, 2);
  CHECK(decide_commuting_joint({kCat, t2}).answer == Answer::JointlyMixing);
  CHECK(decide_commuting_joint({kCat, kCat}).answer == Answer::NotJointlyMixing);
  Verdict neg = decide_commuting_joint({kCat, -kCat});
  CHECK(neg.answer == Answer::NotJointlyMixing);
  CHECK(holds_for({powers(kCat), powers(-kCat)}, neg, 20));
  CHECK_THROWS_AS(decide_commuting_joint({kCat, kCat2}), Error);
}

TEST_CASE("commuting decider agrees with joint powers on powers of one matrix") {
  for (const Mat2Z& base : {kCat, Mat2Z{3, 1, 2, 1}, Mat2Z{1, 1, 1, 2}}) {
    std::vector<Mat2Z> pool;
    for (long k = -3; k <= 3; ++k) {
      pool.push_back(naive_pow(base, k));
      pool.push_back(-naive_pow(base, k));
    }
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = 0; j < pool.size(); ++j) {
        std::vector<Mat2Z> ts{pool[i], pool[j]};
        Verdict a = decide_commuting_joint(ts);
        Verdict b = decide_joint_powers(ts);
        CHECK(a.answer == b.answer);
        if (a.witness) CHECK(holds_for({powers(pool[i]), powers(pool[j])}, a, 10));
      }
  }
}

TEST_CASE("Rokhlin sufficient condition") {
  CHECK(check_rokhlin_sufficient({kCat, kCat}, {parse_poly("n"), parse_poly("n^2")}).answer ==
        Answer::SufficientConditionHolds);
  Verdict u = check_rokhlin_sufficient({kCat, kCat}, {parse_poly("n"), parse_poly("n + 5")});
  CHECK(u.answer == Answer::Unknown);
  CHECK(u.has_reason("BoundedDifference:1,2"));
  CHECK(check_rokhlin_sufficient({kCat, Mat2Z{3, 2, 1, 1}}, {parse_poly("n"), parse_poly("n")}).answer ==
        Answer::SufficientConditionHolds);
  CHECK_THROWS_AS(check_rokhlin_sufficient({kShear}, {parse_poly("n")}), Error);
}

TEST_CASE("relative joint mixing of unipotents") {
  CHECK(decide_relative_joint_unipotent({kShear, kShearT}, {parse_poly("n"), parse_poly("n^2")}).answer ==
        Answer::RelativelyJointlyMixing);
  Verdict v = decide_relative_joint_unipotent({kShear, kShear}, {parse_poly("n"), parse_poly("n + 1")});
  CHECK(v.answer == Answer::NotRelativelyJointlyMixing);
  CHECK((*v.witness)[0] == std::vector<Int>{Int(1), Int(-1)});
  CHECK(decide_relative_joint_unipotent({kShear}, {parse_poly("n")}).answer == Answer::RelativelyJointlyMixing);
  CHECK_THROWS_AS(decide_relative_joint_unipotent({kCat}, {parse_poly("n")}), Error);
}

TEST_CASE("verdict JSON round trip") {
  std::vector<Verdict> vs{decide_element_mixing(kCat), decide_element_mixing(Mat2Z{0, -1, 1, 0}),
                          decide_joint_powers({kCat, kShear})};
  Verdict big{Answer::NotMixing, Witness{{Int("123456789012345678901234567890"), Int(-1)}}, {"KernelWitness"}};
  vs.push_back(big);
  for (const Verdict& v : vs) {
    nlohmann::json j = to_json(v);
    CHECK(verdict_from_json(j) == v);
    CHECK(nlohmann::json::parse(j.dump()).dump() == j.dump());
  }
  CHECK_THROWS_AS(parse_answer("Sometimes"), Error);
}

TEST_CASE("kernel vector choice") {
  // x1 + x2 = 0 and x3 free: the unit vector on x3 is shortest.
  RatMatrix a{{Rat(1), Rat(1), Rat(0)}};
  auto v = choose_kernel_vector(a, 3, SignRule::LastNonzeroNegative);
  REQUIRE(v);
  CHECK(*v == std::vector<Int>{Int(0), Int(0), Int(-1)});
  RatMatrix full{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  CHECK_FALSE(choose_kernel_vector(full, 2, SignRule::FirstNonzeroPositive));
  for (int i = 0; i < 50; ++i) {
    RatMatrix m(2, std::vector<Rat>(4));
    for (auto& row : m)
      for (auto& x : row) x = Rat(uniform(-3, 3));
    auto k = choose_kernel_vector(m, 4, SignRule::FirstNonzeroPositive);
    REQUIRE(k);
    for (const auto& row : m) {
      Rat s = 0;
      for (int c = 0; c < 4; ++c) s += row[c] * (*k)[c];
      CHECK(s == 0);
    }
  }
}
