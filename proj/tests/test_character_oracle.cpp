#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "support.hpp"
#include "toral/decider.hpp"
#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/trig.hpp"

using namespace toral;
using toral::test::naive_pow;
using toral::test::random_hyperbolic;
using toral::test::random_sl2;
using toral::test::uniform;

namespace {

const Mat2Z kCat{2, 1, 1, 1};
const ComplexQ kOne{Rat(1), Rat(0)};

/// Sum over every choice of one support term per function: the product of
/// coefficients counts when the transported frequencies cancel.
ComplexQ brute_correlation(const std::vector<TrigPoly>& fs, const std::vector<Mat2Z>& ms) {
  ComplexQ total;
  std::vector<std::pair<Freq, ComplexQ>> pick;
  auto rec = [&](auto&& self, std::size_t i, Vec2 acc, ComplexQ c) -> void {
    if (i == fs.size()) {
      if (acc.is_zero()) total += c;
      return;
    }
    for (const auto& [x, a] : fs[i].terms()) {
      Vec2 moved = i < ms.size() ? ms[i].transpose().apply(x) : x;
      self(self, i + 1, acc + moved, c * a);
    }
  };
  rec(rec, 0, Vec2(0, 0), kOne);
  return total;
}

TrigPoly random_trig(int terms, long radius) {
  TrigPoly f;
  for (int i = 0; i < terms; ++i)
    f.add(Vec2(uniform(-radius, radius), uniform(-radius, radius)),
          {make_rat(uniform(-4, 4), uniform(1, 3)), make_rat(uniform(-2, 2), uniform(1, 3))});
  return f;
}

}  // namespace

TEST_CASE("char_correlation") {
  CHECK(char_correlation({Vec2(1, 0)}, Vec2(-1, 0), {Mat2Z::identity()}) == 1);
  CHECK(char_correlation({Vec2(1, 0)}, Vec2(1, 0), {Mat2Z::identity()}) == 0);
  for (long n = 1; n <= 20; ++n) CHECK(char_correlation({Vec2(1, 0)}, Vec2(0, 1), {naive_pow(kCat, n)}) == 0);
  Mat2Z a{1, 1, 0, 1}, b{1, 0, 1, 1};
  std::vector<Mat2Z> ts{kCat, a.adjugate() * kCat * a, b.adjugate() * kCat * b};
  TripleWitness w = witness_same_modulus_triple(ts);
  std::vector<Mat2Z> ms;
  for (const Mat2Z& t : ts) ms.push_back(naive_pow(t, 7));
  CHECK(char_correlation({w.x[0], w.x[1], w.x[2]}, Vec2(0, 0), ms) == 1);
}

TEST_CASE("trig_correlation matches the exhaustive sum") {
  CHECK(trig_correlation({TrigPoly::constant({Rat(2), Rat(0)}), TrigPoly::constant({Rat(3), Rat(1)})},
                         {kCat}) == ComplexQ{Rat(6), Rat(2)});
  for (int i = 0; i < 60; ++i) {
    int k = static_cast<int>(uniform(1, 3));
    std::vector<TrigPoly> fs;
    std::vector<Mat2Z> ms;
    for (int j = 0; j < k; ++j) {
      fs.push_back(random_trig(static_cast<int>(uniform(1, 6)), 3));
      ms.push_back(random_sl2(2));
    }
    fs.push_back(random_trig(static_cast<int>(uniform(1, 6)), 6));
    CHECK(trig_correlation(fs, ms) == brute_correlation(fs, ms));
  }
}

TEST_CASE("trig_projection is an orthogonal projection") {
  TrigPoly f = random_trig(5, 3);
  f.add(Vec2(0, 0), {Rat(2), Rat(0)});
  // A hyperbolic map has no finite orbits besides 0.
  CHECK(trig_projection(f, kCat) == TrigPoly::constant(f.coeff(Vec2(0, 0))));
  for (int i = 0; i < 80; ++i) {
    TrigPoly g = random_trig(static_cast<int>(uniform(1, 8)), 4);
    Mat2Z t = random_sl2(3);
    TrigPoly p = trig_projection(g, t);
    CHECK(trig_projection(p, t) == p);
    CHECK(p.norm2() <= g.norm2());
    // Self-adjoint with an invariant image: <Pg, g> = |Pg|^2.
    TrigPoly pc;
    for (const auto& [x, c] : p.terms()) pc.add(-x, c.conj());
    ComplexQ inner = trig_correlation({g, pc}, {Mat2Z::identity()});
    CHECK(inner == ComplexQ{p.norm2(), Rat(0)});
  }
}

TEST_CASE("trig_projection for a shear averages nothing on fixed lines") {
  Mat2Z u{1, 1, 0, 1};
  TrigPoly f;
  f.add(Vec2(0, 3), kOne);
  f.add(Vec2(1, 1), kOne);
  TrigPoly p = trig_projection(f, u);
  CHECK(p == TrigPoly::character(Vec2(0, 3)));
  Mat2Z r{0, -1, 1, 0};
  TrigPoly q = trig_projection(TrigPoly::character(Vec2(1, 0)), r);
  CHECK(q.terms().size() == 4);
  CHECK(q.coeff(Vec2(0, 1)) == ComplexQ{Rat(1, 4), Rat(0)});
}

TEST_CASE("parse_trigpoly") {
  TrigPoly f = parse_trigpoly("1 0 1; 0 1 1/2 -3");
  CHECK(f.coeff(Vec2(1, 0)) == kOne);
  CHECK(f.coeff(Vec2(0, 1)) == ComplexQ{Rat(1, 2), Rat(-3)});
  CHECK(f.radius() == 1);
  CHECK(parse_trigpoly(to_string(f)) == f);
  CHECK_THROWS_AS(parse_trigpoly("1 0"), Error);
  CHECK_THROWS_AS(parse_trigpoly("a 0 1"), Error);
}

TEST_CASE("character scan separates mixing from non-mixing") {
  auto hyper = [](long n) { return std::vector<Mat2Z>{naive_pow(Mat2Z{2, 1, 1, 1}, n)}; };
  StabilizationReport h = character_scan(hyper, 3, 40);
  CHECK(h.n0 <= 5);
  auto shear = [](long n) { return std::vector<Mat2Z>{naive_pow(Mat2Z{1, 1, 0, 1}, n)}; };
  StabilizationReport s = character_scan(shear, 3, 40);
  CHECK(s.hits.size() == 40);
  for (int i = 0; i < 20; ++i) {
    Mat2Z t = random_hyperbolic(3);
    StabilizationReport r = character_scan([&](long n) { return std::vector<Mat2Z>{mat_pow(t, n)}; }, 3, 60);
    CHECK(r.n0 <= 60);
    CHECK(r.hits.size() < 60);
  }
}
