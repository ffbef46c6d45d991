#pragma once

#include <array>
#include <string>

#include "toral/bigint.hpp"
#include "toral/mat2.hpp"

namespace toral {

/// Element p + q*sqrt(d) of a real quadratic field Q(sqrt d).
///
/// d is a square-free positive integer, or 1 for the rational case (then q is
/// folded into p). Binary operations require both operands to share d.
class QuadVal {
 public:
  QuadVal() = default;
  QuadVal(Rat p, Rat q, Int d);
  static QuadVal rational(Rat p, const Int& d) { return QuadVal(std::move(p), Rat(0), d); }

  const Rat& p() const { return p_; }
  const Rat& q() const { return q_; }
  const Int& d() const { return d_; }

  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
  bool is_rational() const { return sgn(q_) == 0; }
  /// Exact sign of the real number p + q*sqrt(d).
  int sign() const;
  /// Galois conjugate p - q*sqrt(d).
  QuadVal conj() const { return QuadVal(p_, Rat(-q_), d_); }
  /// Field norm p^2 - d q^2.
  Rat norm() const { return Rat(p_ * p_ - d_ * q_ * q_); }
  QuadVal inverse() const;
  QuadVal abs() const { return sign() < 0 ? -*this : *this; }
  QuadVal pow(const Int& k) const;
  double to_double() const;

  friend bool operator==(const QuadVal& l, const QuadVal& r) {
    return l.p_ == r.p_ && l.q_ == r.q_ && (l.is_rational() || l.d_ == r.d_);
  }
  friend QuadVal operator+(const QuadVal& l, const QuadVal& r);
  friend QuadVal operator-(const QuadVal& l, const QuadVal& r);
  friend QuadVal operator-(const QuadVal& v) { return QuadVal(Rat(-v.p_), Rat(-v.q_), v.d_); }
  friend QuadVal operator*(const QuadVal& l, const QuadVal& r);
  friend QuadVal operator/(const QuadVal& l, const QuadVal& r) { return l * r.inverse(); }
  friend QuadVal operator*(const Rat& s, const QuadVal& v) { return QuadVal(Rat(s * v.p_), Rat(s * v.q_), v.d_); }

  std::string to_string() const;

 private:
  Rat p_{0};
  Rat q_{0};
  Int d_{1};
};

/// Closed rational interval.
struct RatInterval {
  Rat lo;
  Rat hi;
};

/// Encloses the real value of v using dyadic bounds on sqrt(d) with `bits`
/// fractional bits.
RatInterval enclose(const QuadVal& v, unsigned bits);

/// Exact three-way comparison of real values, also across different fields.
/// Values in different fields are compared by interval refinement, which
/// terminates because an irrational element of Q(sqrt d1) never equals one of
/// Q(sqrt d2) for d1 != d2.
int compare(const QuadVal& l, const QuadVal& r);

/// Writes v = s^2 * d with d square-free (v > 0). Returns {s, d}.
std::pair<Int, Int> squarefree_split(const Int& v);

/// 2x2 matrix over Q(sqrt d), row-major.
struct QuadMat2 {
  std::array<QuadVal, 4> e;

  const QuadVal& operator()(int r, int c) const { return e[2 * r + c]; }
  QuadVal& operator()(int r, int c) { return e[2 * r + c]; }

  static QuadMat2 from_int(const Mat2Z& m, const Int& d);
  QuadMat2 conj() const;
  bool is_zero() const;
  /// Applies the matrix to an integer vector.
  std::array<QuadVal, 2> apply(const Vec2& v) const;

  friend bool operator==(const QuadMat2& l, const QuadMat2& r) { return l.e == r.e; }
  friend QuadMat2 operator+(const QuadMat2& l, const QuadMat2& r);
  friend QuadMat2 operator-(const QuadMat2& l, const QuadMat2& r);
  friend QuadMat2 operator*(const QuadMat2& l, const QuadMat2& r);
  friend QuadMat2 operator*(const QuadVal& s, const QuadMat2& m);
};

/// Spectral data of a hyperbolic M in SL(2,Z): M = lambda P+ + lambda^-1 P-.
struct EigenData {
  Int d;            ///< square-free discriminant kernel of trace^2 - 4
  QuadVal lambda;   ///< eigenvalue with |lambda| > 1, same sign as the trace
  QuadMat2 p_plus;  ///< projection onto the expanding eigenline
  QuadMat2 p_minus; ///< projection onto the contracting eigenline
};

}  // namespace toral
