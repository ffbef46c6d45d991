#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "toral/bigint.hpp"
#include "toral/mat2.hpp"

namespace toral {

/// Character index x in Z^2; chi_x(xi) = exp(2 pi i <x, xi>).
using Freq = Vec2;

/// Complex number with exact rational parts.
struct ComplexQ {
  Rat re{0};
  Rat im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  ComplexQ conj() const { return {re, Rat(-im)}; }
  /// |z|^2.
  Rat norm2() const { return Rat(re * re + im * im); }

  friend bool operator==(const ComplexQ& l, const ComplexQ& r) { return l.re == r.re && l.im == r.im; }
  friend ComplexQ operator+(const ComplexQ& l, const ComplexQ& r) { return {Rat(l.re + r.re), Rat(l.im + r.im)}; }
  friend ComplexQ operator-(const ComplexQ& l, const ComplexQ& r) { return {Rat(l.re - r.re), Rat(l.im - r.im)}; }
  friend ComplexQ operator*(const ComplexQ& l, const ComplexQ& r) {
    return {Rat(l.re * r.re - l.im * r.im), Rat(l.re * r.im + l.im * r.re)};
  }
  ComplexQ& operator+=(const ComplexQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
};

std::string to_string(const ComplexQ& z);

/// Finitely supported Fourier series sum_x c_x chi_x. Zero coefficients are
/// never stored.
class TrigPoly {
 public:
  TrigPoly() = default;
  static TrigPoly constant(ComplexQ c);
  static TrigPoly character(const Freq& x, ComplexQ c = {Rat(1), Rat(0)});

  /// Adds c to the coefficient at x.
  void add(const Freq& x, const ComplexQ& c);
  ComplexQ coeff(const Freq& x) const;
  const std::map<Freq, ComplexQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Sum of |c_x|^2, the squared L2 norm.
  Rat norm2() const;
  /// Largest max-norm |x|_inf over the support (0 when empty).
  Int radius() const;

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;
  friend TrigPoly operator+(const TrigPoly& l, const TrigPoly& r);

 private:
  std::map<Freq, ComplexQ> terms_;
};

/// Parses "x1 x2 re [im]; ..." with rational re, im.
TrigPoly parse_trigpoly(std::string_view text);
std::string to_string(const TrigPoly& f);

/// Integral of chi_{x_1}(M_1 xi)...chi_{x_k}(M_k xi) chi_y(xi): 1 iff
/// sum tM_i x_i + y = 0.
int char_correlation(const std::vector<Freq>& xs, const Freq& y, const std::vector<Mat2Z>& ms);

/// Integral of f_1(M_1 xi)...f_k(M_k xi) f_{k+1}(xi), exact. Partial sums of
/// the first half of the tuple are indexed in a table and matched against the
/// second half.
ComplexQ trig_correlation(const std::vector<TrigPoly>& fs, const std::vector<Mat2Z>& ms);

/// Projection onto tT-invariant functions: coefficients on each finite
/// tT-orbit are replaced by their orbit average; infinite orbits are dropped.
TrigPoly trig_projection(const TrigPoly& f, const Mat2Z& t);

/// Result of scanning character correlations over a frequency box.
struct StabilizationReport {
  /// Every n in [n0, horizon] has no nonzero tuple with correlation 1.
  long n0{1};
  long horizon{0};
  /// n values at which some nonzero tuple correlated.
  std::vector<long> hits;
};

/// For n = 1..horizon, looks for nonzero (x_1..x_k, y) with coordinates in
/// [-box, box] and sum tM_i(n) x_i + y = 0. The product of integrals of such a
/// tuple is 0, so a hit is a deviation from the mixing limit.
StabilizationReport character_scan(const std::function<std::vector<Mat2Z>(long)>& ms_at, long box, long horizon);

}  // namespace toral
