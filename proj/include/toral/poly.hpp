#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "toral/bigint.hpp"

namespace toral {

/// Integer polynomial in the index variable n, coefficients low to high.
/// The zero polynomial has no stored coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);
  IntPoly(long c) : IntPoly(std::vector<Int>{Int(c)}) {}  // NOLINT: constants read naturally
  static IntPoly constant(Int c) { return IntPoly(std::vector<Int>{std::move(c)}); }
  /// The polynomial n.
  static IntPoly n() { return IntPoly(std::vector<Int>{Int(0), Int(1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Coefficient of n^k (zero beyond the degree).
  Int coeff(int k) const;
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& leading() const { return coeffs_.back(); }

  Int operator()(const Int& n) const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;
  friend IntPoly operator+(const IntPoly& l, const IntPoly& r);
  friend IntPoly operator-(const IntPoly& l, const IntPoly& r);
  friend IntPoly operator-(const IntPoly& p);
  friend IntPoly operator*(const IntPoly& l, const IntPoly& r);

  /// Human form, e.g. "n^2 - 1".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

/// Parses a coefficient list "[c0,c1,...]" or an expression over
/// {n, integers, +, -, *, ^, parentheses}. Chained powers and implicit
/// multiplication are rejected.
IntPoly parse_poly(std::string_view text);

}  // namespace toral
