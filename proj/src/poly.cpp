#include "toral/poly.hpp"

#include <cctype>

#include "toral/error.hpp"

namespace toral {

IntPoly::IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Int IntPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[k];
}

Int IntPoly::operator()(const Int& n) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

IntPoly operator+(const IntPoly& l, const IntPoly& r) {
  std::vector<Int> out(std::max(l.coeffs_.size(), r.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = l.coeff(static_cast<int>(i)) + r.coeff(static_cast<int>(i));
  return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& p) {
  std::vector<Int> out = p.coeffs_;
  for (Int& c : out) c = -c;
  return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& l, const IntPoly& r) { return l + (-r); }

IntPoly operator*(const IntPoly& l, const IntPoly& r) {
  if (l.is_zero() || r.is_zero()) return {};
  std::vector<Int> out(l.coeffs_.size() + r.coeffs_.size() - 1);
  for (std::size_t i = 0; i < l.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j) out[i + j] += l.coeffs_[i] * r.coeffs_[j];
  return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const Int& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Int mag = abs(c);
    if (s.empty()) s += sgn(c) < 0 ? "-" : "";
    else s += sgn(c) < 0 ? " - " : " + ";
    if (k == 0 || mag != 1) s += mag.get_str();
    if (k > 0 && mag != 1) s += "*";
    if (k >= 1) s += "n";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  IntPoly parse() {
    IntPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  IntPoly expr() {
    IntPoly acc = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc = acc + term();
      } else if (peek() == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  IntPoly term() {
    IntPoly acc = unary();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc = acc * unary();
      } else {
        skip_ws();
        char ch = peek();
        if (ch == 'n' || ch == '(' || std::isdigit(static_cast<unsigned char>(ch)))
          fail("implicit multiplication is not accepted; write '*'");
        return acc;
      }
    }
  }

  IntPoly unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  IntPoly power() {
    IntPoly base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("exponent must be a nonnegative integer literal");
    unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (e > 4096) fail("exponent too large");
    skip_ws();
    if (peek() == '^') fail("chained '^' is ambiguous; use parentheses");
    IntPoly result(1);
    for (unsigned long i = 0; i < e; ++i) result = result * base;
    return result;
  }

  IntPoly atom() {
    skip_ws();
    char ch = peek();
    if (ch == 'n') {
      ++pos_;
      return IntPoly::n();
    }
    if (ch == '(') {
      ++pos_;
      IntPoly inner = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return IntPoly::constant(parse_int(text_.substr(start, pos_ - start)));
    }
    fail("expected n, an integer or '('");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError,
                what + " at offset " + std::to_string(pos_) + " in polynomial '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && text[first] == '[') {
    std::size_t last = text.find_last_not_of(" \t\n");
    if (text[last] != ']') throw Error(Errc::ParseError, "unterminated coefficient list '" + std::string(text) + "'");
    std::string_view body = text.substr(first + 1, last - first - 1);
    if (body.find_first_of("n^*()[]") != std::string_view::npos)
      throw Error(Errc::ParseError, "ambiguous polynomial '" + std::string(text) +
                                        "': a coefficient list may only hold integers");
    std::vector<Int> coeffs;
    std::size_t start = 0;
    if (body.find_first_not_of(" \t") == std::string_view::npos)
      throw Error(Errc::ParseError, "empty coefficient list");
    for (;;) {
      std::size_t comma = body.find(',', start);
      coeffs.push_back(parse_int(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return IntPoly(std::move(coeffs));
  }
  return PolyParser(text).parse();
}

}  // namespace toral
