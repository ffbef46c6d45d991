#include "toral/bigint.hpp"

#include <cctype>

#include "toral/error.hpp"

namespace toral {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Int parse_int(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::ParseError, "expected an integer, got '" + std::string(text) + "'");
  Int v(std::string(s), 10);
  return negative ? Int(-v) : v;
}

Rat parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (sgn(den) == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw Error(Errc::ParseError, "malformed decimal '" + std::string(text) + "'");
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Int num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    Rat r(negative ? Int(-num) : num, scale);
    r.canonicalize();
    return r;
  }
  return Rat(parse_int(s));
}

std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Int content(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

std::vector<Int> integerize(const std::vector<Rat>& v) {
  Int l = 1;
  for (const Rat& x : v) l = lcm(l, x.get_den());
  std::vector<Int> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.emplace_back(x.get_num() * (l / x.get_den()));
  Int g = content(out);
  if (sgn(g) != 0)
    for (Int& x : out) x /= g;
  return out;
}

Int isqrt(const Int& v) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

double to_double(const Rat& v) { return mpq_get_d(v.get_mpq_t()); }

}  // namespace toral
