#include <doctest.h>

#include "support.hpp"
#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/quadratic.hpp"

using namespace toral;
using toral::test::naive_pow;
using toral::test::random_hyperbolic;
using toral::test::random_sl2;
using toral::test::uniform;

TEST_CASE("classify follows the trace trichotomy") {
  CHECK(classify(Mat2Z{2, 1, 1, 1}) == MatClass{MatClass::Kind::Hyperbolic, 1, 0});
  CHECK(classify(Mat2Z{-2, -1, -1, -1}).sign == -1);
  CHECK(classify(Mat2Z{1, 5, 0, 1}) == MatClass{MatClass::Kind::Unipotent, 1, 0});
  CHECK(classify(Mat2Z{-1, 5, 0, -1}) == MatClass{MatClass::Kind::Unipotent, -1, 0});
  CHECK(classify(Mat2Z{0, -1, 1, 0}).order == 4);
  CHECK(classify(Mat2Z{1, -1, 1, 0}).order == 6);
  CHECK(classify(Mat2Z{0, -1, 1, -1}).order == 3);
  CHECK(classify(Mat2Z::identity()).order == 1);
  CHECK(classify(-Mat2Z::identity()).order == 2);
  CHECK_THROWS_AS(classify(Mat2Z{2, 0, 0, 1}), Error);
}

TEST_CASE("finite orders are the true orders") {
  for (int i = 0; i < 300; ++i) {
    Mat2Z m = random_sl2(3);
    MatClass c = classify(m);
    if (!c.finite_order()) continue;
    CHECK(naive_pow(m, c.order).is_identity());
    for (int k = 1; k < c.order; ++k) CHECK_FALSE(naive_pow(m, k).is_identity());
  }
}

TEST_CASE("mat_pow examples and agreement with repeated products") {
  CHECK(mat_pow(Mat2Z{1, 1, 0, 1}, 5L) == Mat2Z{1, 5, 0, 1});
  CHECK(mat_pow(Mat2Z{2, 1, 1, 1}, -1L) == Mat2Z{1, -1, -1, 2});
  CHECK(mat_pow(Mat2Z{2, 1, 1, 1}, 2L) == Mat2Z{5, 3, 3, 2});
  CHECK(mat_pow(Mat2Z{2, 1, 1, 1}, 0L).is_identity());
  for (int i = 0; i < 100; ++i) {
    Mat2Z m = random_sl2(3);
    long k = uniform(-40, 40);
    CHECK(mat_pow(m, k) == naive_pow(m, k));
  }
}

TEST_CASE("Chebyshev coefficients reproduce powers") {
  auto c2 = chebyshev_coeffs(Int(3), 2);
  CHECK(c2.alpha == 3);
  CHECK(c2.beta == -1);
  CHECK(chebyshev_coeffs(Int(7), 1).alpha == 1);
  CHECK(chebyshev_coeffs(Int(7), 1).beta == 0);
  CHECK(chebyshev_coeffs(Int(7), 0).alpha == 0);
  CHECK(chebyshev_coeffs(Int(7), 0).beta == 1);
  for (int i = 0; i < 100; ++i) {
    Mat2Z t = random_sl2(4);
    unsigned long k = static_cast<unsigned long>(uniform(0, 60));
    auto [a, b] = chebyshev_coeffs(t.trace(), k);
    Mat2Z rhs{Int(a * t.a + b), Int(a * t.b), Int(a * t.c), Int(a * t.d + b)};
    CHECK(naive_pow(t, static_cast<long>(k)) == rhs);
  }
}

TEST_CASE("eigen data of the cat map") {
  EigenData e = eigen_data(Mat2Z{2, 1, 1, 1});
  CHECK(e.d == 5);
  CHECK(e.lambda == QuadVal(Rat(3, 2), Rat(1, 2), Int(5)));
  QuadVal sum = e.lambda + e.lambda.inverse();
  CHECK(sum == QuadVal::rational(Rat(3), Int(5)));
  CHECK(e.p_plus.conj() == e.p_minus);
  CHECK_THROWS_AS(eigen_data(Mat2Z{1, 1, 0, 1}), Error);
}

TEST_CASE("eigen reconstruction and Galois symmetry on random hyperbolic matrices") {
  for (int i = 0; i < 100; ++i) {
    Mat2Z m = random_hyperbolic();
    EigenData e = eigen_data(m);
    QuadMat2 id = QuadMat2::from_int(Mat2Z::identity(), e.d);
    CHECK(e.p_plus + e.p_minus == id);
    CHECK(e.p_plus * e.p_plus == e.p_plus);
    CHECK((e.p_plus * e.p_minus).is_zero());
    CHECK(e.lambda * e.p_plus + e.lambda.inverse() * e.p_minus == QuadMat2::from_int(m, e.d));
    CHECK(e.p_plus.conj() == e.p_minus);
    CHECK(e.lambda.conj() == e.lambda.inverse());
    CHECK(e.lambda.abs().to_double() > 1.0);
    CHECK(e.lambda.sign() == sgn(m.trace()));
  }
}

TEST_CASE("fixed vectors") {
  CHECK(fixed_vector(Mat2Z{1, 3, 0, 1}) == Vec2(1, 0));
  CHECK(fixed_vector(Mat2Z{1, 0, 4, 1}) == Vec2(0, 1));
  CHECK(fixed_vector(Mat2Z{-2, 9, -1, 4}) == Vec2(3, 1));
  CHECK(fixed_vector(Mat2Z{-1, 2, 0, -1}) == Vec2(1, 0));
  CHECK_THROWS_AS(fixed_vector(Mat2Z::identity()), Error);
  CHECK_THROWS_AS(fixed_vector(Mat2Z{2, 1, 1, 1}), Error);
  for (int i = 0; i < 200; ++i) {
    Mat2Z m = random_sl2(3);
    MatClass c = classify(m);
    if (!c.unipotent()) continue;
    Vec2 v = fixed_vector(m);
    Mat2Z u = c.sign > 0 ? m : -m;
    CHECK(u.apply(v) == v);
    CHECK(gcd(v.x, v.y) == 1);
  }
}

TEST_CASE("quadratic field arithmetic") {
  QuadVal a(Rat(1), Rat(1), Int(2));
  CHECK(a * a.inverse() == QuadVal::rational(Rat(1), Int(2)));
  CHECK(a.norm() == -1);
  CHECK(a.pow(Int(3)) == a * a * a);
  CHECK(QuadVal(Rat(-3, 2), Rat(1), Int(2)).sign() == -1);
  CHECK(compare(QuadVal(Rat(0), Rat(1), Int(2)), QuadVal(Rat(0), Rat(1), Int(3))) < 0);
  CHECK(compare(QuadVal(Rat(3, 2), Rat(1, 2), Int(5)), QuadVal(Rat(2), Rat(1), Int(3))) < 0);
  RatInterval iv = enclose(QuadVal(Rat(0), Rat(1), Int(2)), 30);
  CHECK(iv.lo * iv.lo <= 2);
  CHECK(iv.hi * iv.hi >= 2);
  auto [s, d] = squarefree_split(Int(72));
  CHECK(s == 6);
  CHECK(d == 2);
}
