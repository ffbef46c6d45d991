#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "toral/bigint.hpp"

namespace toral {

/// Integer vector in Z^2; also used for character frequencies.
struct Vec2 {
  Int x{0};
  Int y{0};

  Vec2() = default;
  Vec2(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec2(long x_, long y_) : x(x_), y(y_) {}

  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }

  friend bool operator==(const Vec2& l, const Vec2& r) { return l.x == r.x && l.y == r.y; }
  friend std::strong_ordering operator<=>(const Vec2& l, const Vec2& r) {
    if (int c = cmp(l.x, r.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(l.y, r.y);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  friend Vec2 operator+(const Vec2& l, const Vec2& r) { return {Int(l.x + r.x), Int(l.y + r.y)}; }
  friend Vec2 operator-(const Vec2& l, const Vec2& r) { return {Int(l.x - r.x), Int(l.y - r.y)}; }
  friend Vec2 operator-(const Vec2& v) { return {Int(-v.x), Int(-v.y)}; }
  friend Vec2 operator*(const Int& s, const Vec2& v) { return {Int(s * v.x), Int(s * v.y)}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

std::string to_string(const Vec2& v);
std::ostream& operator<<(std::ostream& os, const Vec2& v);

/// 2x2 integer matrix [[a,b],[c,d]] with arbitrary-precision entries.
///
/// The type itself admits any integer matrix; operations that need an
/// SL(2,Z) element call `require_unimodular`.
struct Mat2Z {
  Int a{1}, b{0}, c{0}, d{1};

  Mat2Z() = default;
  Mat2Z(Int a_, Int b_, Int c_, Int d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  Mat2Z(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

  static Mat2Z identity() { return {1L, 0L, 0L, 1L}; }

  Int det() const { return Int(a * d - b * c); }
  Int trace() const { return Int(a + d); }
  /// Max-norm: largest absolute entry.
  Int norm() const;
  Mat2Z transpose() const { return {a, c, b, d}; }
  /// Adjugate; equals the inverse when det = 1.
  Mat2Z adjugate() const { return {d, Int(-b), Int(-c), a}; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  bool is_plus_minus_identity() const { return sgn(b) == 0 && sgn(c) == 0 && a == d && abs(a) == 1; }

  Vec2 apply(const Vec2& v) const { return {Int(a * v.x + b * v.y), Int(c * v.x + d * v.y)}; }

  friend bool operator==(const Mat2Z& l, const Mat2Z& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
  }
  friend std::strong_ordering operator<=>(const Mat2Z& l, const Mat2Z& r);
  friend Mat2Z operator*(const Mat2Z& l, const Mat2Z& r) {
    return {Int(l.a * r.a + l.b * r.c), Int(l.a * r.b + l.b * r.d), Int(l.c * r.a + l.d * r.c),
            Int(l.c * r.b + l.d * r.d)};
  }
  friend Mat2Z operator-(const Mat2Z& m) { return {Int(-m.a), Int(-m.b), Int(-m.c), Int(-m.d)}; }
  friend Mat2Z operator+(const Mat2Z& l, const Mat2Z& r) {
    return {Int(l.a + r.a), Int(l.b + r.b), Int(l.c + r.c), Int(l.d + r.d)};
  }
  friend Mat2Z operator-(const Mat2Z& l, const Mat2Z& r) {
    return {Int(l.a - r.a), Int(l.b - r.b), Int(l.c - r.c), Int(l.d - r.d)};
  }
};

/// Throws Error(NonUnimodular) unless det m = 1.
void require_unimodular(const Mat2Z& m);

bool commute(const Mat2Z& l, const Mat2Z& r);

/// Formats as "[[a,b],[c,d]]".
std::string to_string(const Mat2Z& m);
std::ostream& operator<<(std::ostream& os, const Mat2Z& m);

/// Parses "[[a,b],[c,d]]" (whitespace allowed, decimal integers).
Mat2Z parse_matrix(std::string_view text);
/// Parses "x,y", "(x,y)" or "[x,y]".
Vec2 parse_vec2(std::string_view text);

}  // namespace toral
