#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "toral/mat2.hpp"
#include "toral/poly.hpp"

namespace toral {

/// Matrix sequence n -> [[a(n), b(n)], [c(n), d(n)]] with integer polynomial entries.
struct PolyMatFamily {
  IntPoly a{1}, b{0}, c{0}, d{1};

  static PolyMatFamily constant(const Mat2Z& m);
  static PolyMatFamily identity() { return {}; }

  IntPoly det() const { return a * d - b * c; }
  bool is_unimodular() const { return det() == IntPoly(1); }
  int degree() const;
  PolyMatFamily transpose() const { return {a, c, b, d}; }
  Mat2Z operator()(const Int& n) const { return {a(n), b(n), c(n), d(n)}; }

  friend bool operator==(const PolyMatFamily&, const PolyMatFamily&) = default;
  friend PolyMatFamily operator*(const PolyMatFamily& l, const PolyMatFamily& r);
};

/// Matrix sequence n -> base^{exponent(n)}.
struct PowerFamily {
  Mat2Z base;
  IntPoly exponent;

  Mat2Z operator()(const Int& n) const;
};

using Family = std::variant<PolyMatFamily, PowerFamily>;
/// Families sharing the index n; k = size().
using FamilyTuple = std::vector<Family>;

/// Throws Error(NonUnimodular) unless det is identically 1.
void require_unimodular(const PolyMatFamily& f);

/// Exact symbolic product of unipotent powers, left to right.
/// Throws Error(NotPolynomial) when a factor has exponentially growing entries.
PolyMatFamily expand_unipotent_products(const std::vector<PowerFamily>& factors);

/// Symbolic k-th power, k >= 1.
PolyMatFamily family_power(const PolyMatFamily& f, unsigned long k);

Mat2Z evaluate(const PolyMatFamily& f, const Int& n);
Mat2Z evaluate(const PowerFamily& f, const Int& n);
Mat2Z evaluate(const Family& f, const Int& n);

std::string to_string(const PolyMatFamily& f);
std::string to_string(const PowerFamily& f);
std::string to_string(const Family& f);

/// "[[p,p],[p,p]]" where each p is an expression or a coefficient list.
PolyMatFamily parse_poly_family(std::string_view text);
/// "[[a,b],[c,d]]^(poly)".
PowerFamily parse_power_family(std::string_view text);
/// Either of the above, or a product "F1 * F2 * ..." whose factors are
/// polynomial families or power families with unipotent-type bases, expanded
/// symbolically.
Family parse_family(std::string_view text);

}  // namespace toral
