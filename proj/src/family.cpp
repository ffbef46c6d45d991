#include "toral/family.hpp"

#include <algorithm>
#include <cctype>

#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"

namespace toral {

PolyMatFamily PolyMatFamily::constant(const Mat2Z& m) {
  return {IntPoly::constant(m.a), IntPoly::constant(m.b), IntPoly::constant(m.c), IntPoly::constant(m.d)};
}

int PolyMatFamily::degree() const { return std::max({a.degree(), b.degree(), c.degree(), d.degree()}); }

PolyMatFamily operator*(const PolyMatFamily& l, const PolyMatFamily& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

Mat2Z PowerFamily::operator()(const Int& n) const { return mat_pow(base, exponent(n)); }

void require_unimodular(const PolyMatFamily& f) {
  if (!f.is_unimodular())
    throw Error(Errc::NonUnimodular, "determinant of " + to_string(f) + " is " + f.det().to_string() + ", not 1");
}

namespace {

// Parity of p(n) is a function of n mod 2; returns it when constant, -1 otherwise.
int constant_parity(const IntPoly& p) {
  bool p0 = mpz_odd_p(p(Int(0)).get_mpz_t()) != 0;
  bool p1 = mpz_odd_p(p(Int(1)).get_mpz_t()) != 0;
  if (p0 != p1) return -1;
  return p0 ? 1 : 0;
}

PolyMatFamily expand_factor(const PowerFamily& f) {
  const Mat2Z& b = f.base;
  require_unimodular(b);
  if (b.is_identity()) return PolyMatFamily::identity();
  MatClass cls = classify(b);
  bool minus_identity = b.is_plus_minus_identity();
  if (!minus_identity && !cls.unipotent())
    throw Error(Errc::NotPolynomial,
                "base " + to_string(b) + " is " + to_string(cls) + "; its powers are not polynomial in n");
  IntPoly sign(1);
  Mat2Z u = b;
  if (minus_identity || cls.sign < 0) {
    int parity = constant_parity(f.exponent);
    if (parity < 0)
      throw Error(Errc::NotPolynomial, "sign of " + to_string(f) + " alternates with the parity of n");
    if (parity == 1) sign = IntPoly(-1);
    u = -b;
  }
  if (u.is_identity()) return PolyMatFamily::constant(Mat2Z::identity()) * PolyMatFamily{sign, 0, 0, sign};
  // u^a = I + a (u - I) since (u - I)^2 = 0.
  Mat2Z nil = u - Mat2Z::identity();
  const IntPoly& e = f.exponent;
  PolyMatFamily out{IntPoly(1) + e * IntPoly::constant(nil.a), e * IntPoly::constant(nil.b),
                    e * IntPoly::constant(nil.c), IntPoly(1) + e * IntPoly::constant(nil.d)};
  return {sign * out.a, sign * out.b, sign * out.c, sign * out.d};
}

}  // namespace

PolyMatFamily expand_unipotent_products(const std::vector<PowerFamily>& factors) {
  PolyMatFamily acc = PolyMatFamily::identity();
  for (const PowerFamily& f : factors) acc = acc * expand_factor(f);
  require_unimodular(acc);
  return acc;
}

PolyMatFamily family_power(const PolyMatFamily& f, unsigned long k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "family_power needs k >= 1");
  PolyMatFamily result = PolyMatFamily::identity();
  PolyMatFamily base = f;
  for (; k != 0; k >>= 1) {
    if (k & 1UL) result = result * base;
    if (k > 1) base = base * base;
  }
  return result;
}

Mat2Z evaluate(const PolyMatFamily& f, const Int& n) { return f(n); }
Mat2Z evaluate(const PowerFamily& f, const Int& n) { return f(n); }
Mat2Z evaluate(const Family& f, const Int& n) {
  return std::visit([&](const auto& g) { return g(n); }, f);
}

std::string to_string(const PolyMatFamily& f) {
  return "[[" + f.a.to_string() + ", " + f.b.to_string() + "], [" + f.c.to_string() + ", " + f.d.to_string() + "]]";
}
std::string to_string(const PowerFamily& f) { return to_string(f.base) + "^(" + f.exponent.to_string() + ")"; }
std::string to_string(const Family& f) {
  return std::visit([](const auto& g) { return to_string(g); }, f);
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::string_view text, const std::string& what) {
  throw Error(Errc::ParseError, what + " in family '" + std::string(text) + "'");
}

// Splits on `sep` occurring outside any bracket or parenthesis.
std::vector<std::string_view> split_top(std::string_view s, char sep, std::string_view whole) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') {
      if (--depth < 0) parse_fail(whole, "unbalanced brackets");
    }
    if (ch == sep && depth == 0) {
      parts.push_back(strip(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) parse_fail(whole, "unbalanced brackets");
  parts.push_back(strip(s.substr(start)));
  return parts;
}

std::string_view unwrap(std::string_view s, std::string_view whole) {
  s = strip(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') parse_fail(whole, "expected '[...]'");
  return s.substr(1, s.size() - 2);
}

// Index one past the bracket that closes the '[' at s[0].
std::size_t closing(std::string_view s, std::string_view whole) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']' && --depth == 0) return i + 1;
  }
  parse_fail(whole, "unterminated matrix");
}

}  // namespace

PolyMatFamily parse_poly_family(std::string_view text) {
  auto rows = split_top(unwrap(text, text), ',', text);
  if (rows.size() != 2) parse_fail(text, "expected two rows");
  IntPoly e[4];
  for (int r = 0; r < 2; ++r) {
    auto cols = split_top(unwrap(rows[r], text), ',', text);
    if (cols.size() != 2) parse_fail(text, "expected two entries per row");
    for (int c = 0; c < 2; ++c) e[2 * r + c] = parse_poly(cols[c]);
  }
  return {e[0], e[1], e[2], e[3]};
}

PowerFamily parse_power_family(std::string_view text) {
  std::string_view s = strip(text);
  if (s.empty() || s.front() != '[') parse_fail(text, "expected a matrix");
  std::size_t end = closing(s, text);
  Mat2Z base = parse_matrix(s.substr(0, end));
  std::string_view rest = strip(s.substr(end));
  if (rest.empty() || rest.front() != '^') parse_fail(text, "expected '^' after the base matrix");
  rest = strip(rest.substr(1));
  return {base, parse_poly(rest)};
}

Family parse_family(std::string_view text) {
  auto factors = split_top(strip(text), '*', text);
  if (factors.size() > 1) {
    PolyMatFamily acc = PolyMatFamily::identity();
    for (auto f : factors) {
      if (f.empty() || f.front() != '[') parse_fail(text, "each factor must start with a matrix");
      if (closing(f, text) < f.size()) acc = acc * expand_unipotent_products({parse_power_family(f)});
      else acc = acc * parse_poly_family(f);
    }
    require_unimodular(acc);
    return acc;
  }
  std::string_view s = strip(text);
  if (s.empty() || s.front() != '[') parse_fail(text, "expected a matrix");
  if (closing(s, text) < s.size()) return parse_power_family(s);
  PolyMatFamily f = parse_poly_family(s);
  require_unimodular(f);
  return f;
}

}  // namespace toral
