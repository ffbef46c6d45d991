#pragma once

#include <complex>
#include <optional>
#include <string>

#include "toral/grid.hpp"
#include "toral/mat2.hpp"
#include "toral/trig.hpp"

namespace toral {

/// Limit of the integral of f(xi) g(T^n xi) h(S^n xi) for noncommuting
/// unipotent T, S:
///
///   sum_{i,j} f^(-iv-jw) g^(iv) h^(jw),   tT v = v, tS w = w,
///
/// truncated to |i|, |j| <= R. The result satisfies |limit - value| <= tail_bound.
struct TwoUnipotentLimit {
  std::complex<double> value;
  double tail_bound{0};
  /// Exact value of the truncated sum (trigonometric inputs only).
  std::optional<ComplexQ> exact;
  /// "exact", "inner-closed-form-i", "inner-closed-form-j" or "double-truncation".
  std::string method;
  Vec2 v;
  Vec2 w;
};

/// Trigonometric inputs: the truncated sum is exact and tail_bound is the
/// total magnitude of the omitted terms (zero when R covers the supports).
TwoUnipotentLimit limit_two_unipotents(const TrigPoly& f, const TrigPoly& g, const TrigPoly& h, const Mat2Z& t,
                                       const Mat2Z& s, long R);

/// Indicator inputs. When v (or w) is a coordinate axis the sum over i (or j)
/// is taken in closed form through the marginal of g (or h), so only one index
/// is truncated; otherwise both are. The tail bound follows from
/// Cauchy-Schwarz and Parseval with exact projection norms.
/// Throws CommutingUnipotents or NotUnipotent.
TwoUnipotentLimit limit_two_unipotents(const GridSet& f, const GridSet& g, const GridSet& h, const Mat2Z& t,
                                       const Mat2Z& s, long R);

/// mu(D_2) sum_{|j|<=R} |f_1^(a j)|^2 |f_2^(b j)|^2 for D = [x0,x1) x [y0,y1),
/// with f_1, f_2 the indicators of the sides and (a, b) = w. This is the
/// one-dimensional form of the limit above for T lower triangular and
/// f = g = h = 1_D, evaluated from closed-form interval transforms.
double rectangle_reduced_series(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1, const Vec2& w, long R);

}  // namespace toral
