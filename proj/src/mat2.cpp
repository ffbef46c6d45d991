#include "toral/mat2.hpp"

#include <cctype>
#include <sstream>

#include "toral/error.hpp"

namespace toral {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }
  void expect(char ch) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  Int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return parse_int(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Int Mat2Z::norm() const {
  Int m = abs(a);
  for (const Int* e : {&b, &c, &d})
    if (abs(*e) > m) m = abs(*e);
  return m;
}

std::strong_ordering operator<=>(const Mat2Z& l, const Mat2Z& r) {
  for (auto [x, y] : {std::pair{&l.a, &r.a}, {&l.b, &r.b}, {&l.c, &r.c}, {&l.d, &r.d}}) {
    int c = cmp(*x, *y);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

void require_unimodular(const Mat2Z& m) {
  if (m.det() != 1) throw Error(Errc::NonUnimodular, "det " + to_string(m) + " = " + m.det().get_str());
}

bool commute(const Mat2Z& l, const Mat2Z& r) { return l * r == r * l; }

std::string to_string(const Vec2& v) { return "(" + v.x.get_str() + "," + v.y.get_str() + ")"; }

std::ostream& operator<<(std::ostream& os, const Vec2& v) { return os << to_string(v); }

std::string to_string(const Mat2Z& m) {
  std::ostringstream os;
  os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Mat2Z& m) { return os << to_string(m); }

Mat2Z parse_matrix(std::string_view text) {
  Cursor cur(text);
  Mat2Z m;
  cur.expect('[');
  cur.expect('[');
  m.a = cur.integer();
  cur.expect(',');
  m.b = cur.integer();
  cur.expect(']');
  cur.expect(',');
  cur.expect('[');
  m.c = cur.integer();
  cur.expect(',');
  m.d = cur.integer();
  cur.expect(']');
  cur.expect(']');
  if (!cur.at_end()) cur.fail("trailing characters");
  return m;
}

Vec2 parse_vec2(std::string_view text) {
  Cursor cur(text);
  char close = 0;
  if (cur.accept('(')) close = ')';
  else if (cur.accept('[')) close = ']';
  Vec2 v;
  v.x = cur.integer();
  cur.expect(',');
  v.y = cur.integer();
  if (close) cur.expect(close);
  if (!cur.at_end()) cur.fail("trailing characters");
  return v;
}

}  // namespace toral
