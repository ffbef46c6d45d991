#include "toral/exact_algebra.hpp"

#include "toral/error.hpp"

namespace toral {

std::string to_string(const MatClass& c) {
  switch (c.kind) {
    case MatClass::Kind::Hyperbolic: return c.sign > 0 ? "Hyperbolic(+)" : "Hyperbolic(-)";
    case MatClass::Kind::Unipotent: return c.sign > 0 ? "Unipotent(+)" : "Unipotent(-)";
    case MatClass::Kind::FiniteOrder: return "FiniteOrder(" + std::to_string(c.order) + ")";
  }
  return "?";
}

MatClass classify(const Mat2Z& m) {
  require_unimodular(m);
  Int t = m.trace();
  Int at = abs(t);
  if (at > 2) return {MatClass::Kind::Hyperbolic, sgn(t), 0};
  if (at == 2) {
    if (m.is_plus_minus_identity()) return {MatClass::Kind::FiniteOrder, 1, sgn(t) > 0 ? 1 : 2};
    return {MatClass::Kind::Unipotent, sgn(t), 0};
  }
  // |t| < 2: eigenvalues are primitive roots of unity of order 4 (t=0), 6 (t=1), 3 (t=-1).
  int order = t == 0 ? 4 : (t == 1 ? 6 : 3);
  return {MatClass::Kind::FiniteOrder, 1, order};
}

EigenData eigen_data(const Mat2Z& m) {
  require_unimodular(m);
  Int t = m.trace();
  if (abs(t) <= 2) throw Error(Errc::NotHyperbolic, to_string(m) + " has |trace| <= 2");
  auto [s, d] = squarefree_split(Int(t * t - 4));
  // A rational eigenvalue of a unimodular integer matrix would be +-1.
  if (d == 1) throw Error(Errc::InvalidArgument, "rational eigenvalue for hyperbolic matrix");
  // lambda = (t + sign(t) s sqrt d) / 2, so |lambda| > 1 and lambda^-1 = conj(lambda).
  QuadVal lambda(Rat(t, 2), Rat(Int(sgn(t) * s), 2), d);
  QuadVal lambda_inv = lambda.conj();
  QuadMat2 mq = QuadMat2::from_int(m, d);
  QuadMat2 id = QuadMat2::from_int(Mat2Z::identity(), d);
  QuadVal gap_inv = (lambda - lambda_inv).inverse();
  QuadMat2 p_plus = gap_inv * (mq - lambda_inv * id);
  QuadMat2 p_minus = id - p_plus;
  return {d, lambda, p_plus, p_minus};
}

ChebPair chebyshev_coeffs(const Int& trace, unsigned long k) {
  // alpha_{-1} = -1, alpha_0 = 0; beta_k = -alpha_{k-1}.
  Int prev = -1;
  Int cur = 0;
  for (unsigned long i = 0; i < k; ++i) {
    Int next = trace * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur, Int(-prev)};
}

Mat2Z mat_pow(const Mat2Z& m, const Int& k) {
  if (sgn(k) < 0) {
    require_unimodular(m);
    return mat_pow(m.adjugate(), Int(-k));
  }
  Mat2Z result = Mat2Z::identity();
  Mat2Z base = m;
  Int e = k;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = result * base;
    e >>= 1;
    if (sgn(e) > 0) base = base * base;
  }
  return result;
}

Vec2 fixed_vector(const Mat2Z& m) {
  MatClass cls = classify(m);
  if (cls.finite_order() && m.is_plus_minus_identity())
    throw Error(Errc::IdentityHasNoDistinguishedVector, to_string(m) + " fixes every vector");
  if (!cls.unipotent()) throw Error(Errc::NotUnipotent, to_string(m) + " is " + to_string(cls));
  Mat2Z u = cls.sign > 0 ? m : -m;
  // Kernel of u - I from any nonzero row (r1, r2): v = (-r2, r1).
  Int r1 = u.a - 1, r2 = u.b;
  if (sgn(r1) == 0 && sgn(r2) == 0) {
    r1 = u.c;
    r2 = u.d - 1;
  }
  Vec2 v{Int(-r2), r1};
  Int g = gcd(v.x, v.y);
  v.x /= g;
  v.y /= g;
  if (sgn(v.x) < 0 || (sgn(v.x) == 0 && sgn(v.y) < 0)) v = -v;
  return v;
}

}  // namespace toral
