#pragma once

#include <random>
#include <vector>

#include "toral/mat2.hpp"

namespace toral::test {

/// Fixed seed so failures reproduce.
inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed2024);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Random word in S = [[0,-1],[1,0]] and shears U^k, |k| <= 3.
inline Mat2Z random_sl2(int letters) {
  Mat2Z m = Mat2Z::identity();
  const Mat2Z s{0, -1, 1, 0};
  for (int i = 0; i < letters; ++i) {
    long k = uniform(-3, 3);
    m = m * Mat2Z{1, k, 0, 1} * s;
  }
  return m;
}

inline Mat2Z random_hyperbolic(int letters = 4) {
  for (;;) {
    Mat2Z m = random_sl2(letters);
    if (abs(m.trace()) > 2) return m;
  }
}

/// Power by repeated multiplication (no squaring), independent of mat_pow.
inline Mat2Z naive_pow(const Mat2Z& m, long k) {
  Mat2Z base = k >= 0 ? m : m.adjugate();
  Mat2Z r = Mat2Z::identity();
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) r = r * base;
  return r;
}

/// sum tM_i x_i + y, computed directly.
inline Vec2 transported_sum(const std::vector<Mat2Z>& ms, const std::vector<Vec2>& xs, const Vec2& y) {
  Vec2 acc = y;
  for (std::size_t i = 0; i < ms.size(); ++i) acc += ms[i].transpose().apply(xs[i]);
  return acc;
}

}  // namespace toral::test
