#pragma once

#include <string>

#include "toral/bigint.hpp"
#include "toral/mat2.hpp"
#include "toral/quadratic.hpp"

namespace toral {

/// Trace class of an SL(2,Z) element.
struct MatClass {
  enum class Kind { Hyperbolic, Unipotent, FiniteOrder };

  Kind kind{Kind::FiniteOrder};
  /// Hyperbolic: sign of the trace. Unipotent: +1 if M is unipotent, -1 if -M is.
  int sign{1};
  /// FiniteOrder only: the order of M in SL(2,Z), one of 1,2,3,4,6.
  int order{0};

  bool hyperbolic() const { return kind == Kind::Hyperbolic; }
  bool unipotent() const { return kind == Kind::Unipotent; }
  bool finite_order() const { return kind == Kind::FiniteOrder; }

  friend bool operator==(const MatClass&, const MatClass&) = default;
};

std::string to_string(const MatClass& c);

/// Trace trichotomy. +-I are reported as FiniteOrder(1) and FiniteOrder(2).
/// Throws Error(NonUnimodular).
MatClass classify(const Mat2Z& m);

/// Exact eigen-decomposition over Q(sqrt d). Throws Error(NotHyperbolic).
EigenData eigen_data(const Mat2Z& m);

/// alpha_k, beta_k with T^k = alpha_k T + beta_k I for any T of trace t.
struct ChebPair {
  Int alpha;
  Int beta;
};

ChebPair chebyshev_coeffs(const Int& trace, unsigned long k);

/// Exact power; negative exponents use the adjugate. Requires det = 1 for k < 0.
Mat2Z mat_pow(const Mat2Z& m, const Int& k);
inline Mat2Z mat_pow(const Mat2Z& m, long k) { return mat_pow(m, Int(k)); }

/// Primitive v with Mv = v for unipotent M (or -Mv = v when -M is unipotent),
/// first nonzero coordinate positive.
/// Throws NotUnipotent, or IdentityHasNoDistinguishedVector for +-I.
Vec2 fixed_vector(const Mat2Z& m);

}  // namespace toral
