#include "toral/quadratic.hpp"

#include <cmath>

#include "toral/error.hpp"

namespace toral {

namespace {

void require_same_field(const QuadVal& l, const QuadVal& r) {
  if (!l.is_rational() && !r.is_rational() && l.d() != r.d())
    throw Error(Errc::InvalidArgument, "quadratic operands live in different fields");
}

const Int& common_d(const QuadVal& l, const QuadVal& r) { return l.is_rational() ? r.d() : l.d(); }

}  // namespace

QuadVal::QuadVal(Rat p, Rat q, Int d) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
  p_.canonicalize();
  q_.canonicalize();
  if (sgn(d_) <= 0) throw Error(Errc::InvalidArgument, "quadratic field needs d > 0");
  if (d_ == 1) {
    p_ += q_;
    q_ = 0;
  }
}

int QuadVal::sign() const {
  int sp = sgn(p_);
  int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: compare p^2 with d q^2.
  int c = cmp(Rat(p_ * p_), Rat(d_ * q_ * q_));
  return c > 0 ? sp : (c < 0 ? sq : 0);
}

QuadVal QuadVal::inverse() const {
  Rat n = norm();
  if (sgn(n) == 0) throw Error(Errc::InvalidArgument, "inverse of zero in quadratic field");
  return QuadVal(Rat(p_ / n), Rat(-q_ / n), d_);
}

QuadVal QuadVal::pow(const Int& k) const {
  if (sgn(k) < 0) return inverse().pow(Int(-k));
  QuadVal result = QuadVal::rational(Rat(1), d_);
  QuadVal base = *this;
  Int e = k;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = result * base;
    e >>= 1;
    if (sgn(e) > 0) base = base * base;
  }
  return result;
}

double QuadVal::to_double() const {
  return toral::to_double(p_) + toral::to_double(q_) * std::sqrt(d_.get_d());
}

QuadVal operator+(const QuadVal& l, const QuadVal& r) {
  require_same_field(l, r);
  return QuadVal(Rat(l.p_ + r.p_), Rat(l.q_ + r.q_), common_d(l, r));
}

QuadVal operator-(const QuadVal& l, const QuadVal& r) {
  require_same_field(l, r);
  return QuadVal(Rat(l.p_ - r.p_), Rat(l.q_ - r.q_), common_d(l, r));
}

QuadVal operator*(const QuadVal& l, const QuadVal& r) {
  require_same_field(l, r);
  const Int& d = common_d(l, r);
  return QuadVal(Rat(l.p_ * r.p_ + d * l.q_ * r.q_), Rat(l.p_ * r.q_ + l.q_ * r.p_), d);
}

std::string QuadVal::to_string() const {
  if (is_rational()) return toral::to_string(p_);
  std::string s = toral::to_string(p_);
  s += sgn(q_) < 0 ? " - " : " + ";
  s += toral::to_string(Rat(::abs(q_))) + "*sqrt(" + d_.get_str() + ")";
  return s;
}

std::pair<Int, Int> squarefree_split(const Int& v) {
  if (sgn(v) <= 0) throw Error(Errc::InvalidArgument, "squarefree_split needs a positive integer");
  Int rest = v;
  Int root = 1;
  Int kernel = 1;
  // Trial division up to the cube root leaves a cofactor with at most two prime factors.
  Int limit;
  mpz_root(limit.get_mpz_t(), v.get_mpz_t(), 3);
  limit += 1;
  for (Int p = 2; p <= limit; p += (p == 2 ? 1 : 2)) {
    if (p * p > rest) break;
    int e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) kernel *= p;
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) root *= isqrt(rest);
    else kernel *= rest;
  }
  return {root, kernel};
}

QuadMat2 QuadMat2::from_int(const Mat2Z& m, const Int& d) {
  return {{QuadVal::rational(Rat(m.a), d), QuadVal::rational(Rat(m.b), d), QuadVal::rational(Rat(m.c), d),
           QuadVal::rational(Rat(m.d), d)}};
}

QuadMat2 QuadMat2::conj() const { return {{e[0].conj(), e[1].conj(), e[2].conj(), e[3].conj()}}; }

bool QuadMat2::is_zero() const {
  for (const QuadVal& v : e)
    if (!v.is_zero()) return false;
  return true;
}

std::array<QuadVal, 2> QuadMat2::apply(const Vec2& v) const {
  Rat x(v.x), y(v.y);
  return {x * e[0] + y * e[1], x * e[2] + y * e[3]};
}

QuadMat2 operator+(const QuadMat2& l, const QuadMat2& r) {
  return {{l.e[0] + r.e[0], l.e[1] + r.e[1], l.e[2] + r.e[2], l.e[3] + r.e[3]}};
}

QuadMat2 operator-(const QuadMat2& l, const QuadMat2& r) {
  return {{l.e[0] - r.e[0], l.e[1] - r.e[1], l.e[2] - r.e[2], l.e[3] - r.e[3]}};
}

QuadMat2 operator*(const QuadMat2& l, const QuadMat2& r) {
  return {{l(0, 0) * r(0, 0) + l(0, 1) * r(1, 0), l(0, 0) * r(0, 1) + l(0, 1) * r(1, 1),
           l(1, 0) * r(0, 0) + l(1, 1) * r(1, 0), l(1, 0) * r(0, 1) + l(1, 1) * r(1, 1)}};
}

QuadMat2 operator*(const QuadVal& s, const QuadMat2& m) {
  return {{s * m.e[0], s * m.e[1], s * m.e[2], s * m.e[3]}};
}

}  // namespace toral

namespace toral {

RatInterval enclose(const QuadVal& v, unsigned bits) {
  if (v.is_rational()) return {v.p(), v.p()};
  Int scale = Int(1) << bits;
  Int root = isqrt(Int(v.d() * scale * scale));
  Rat lo(root, scale);
  Rat hi(Int(root + 1), scale);
  lo.canonicalize();
  hi.canonicalize();
  Rat a = v.p() + v.q() * lo;
  Rat b = v.p() + v.q() * hi;
  if (sgn(v.q()) < 0) std::swap(a, b);
  return {a, b};
}

int compare(const QuadVal& l, const QuadVal& r) {
  if (l.is_rational() || r.is_rational() || l.d() == r.d()) return (l - r).sign();
  for (unsigned bits = 16;; bits *= 2) {
    RatInterval a = enclose(l, bits);
    RatInterval b = enclose(r, bits);
    if (a.hi < b.lo) return -1;
    if (b.hi < a.lo) return 1;
  }
}

}  // namespace toral
