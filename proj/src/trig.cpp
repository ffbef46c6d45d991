#include "toral/trig.hpp"

#include <set>
#include <sstream>

#include "toral/error.hpp"

namespace toral {

std::string to_string(const ComplexQ& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  return to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + to_string(Rat(abs(z.im))) + "i";
}

TrigPoly TrigPoly::constant(ComplexQ c) { return character(Freq(0L, 0L), std::move(c)); }

TrigPoly TrigPoly::character(const Freq& x, ComplexQ c) {
  TrigPoly p;
  p.add(x, c);
  return p;
}

void TrigPoly::add(const Freq& x, const ComplexQ& c_in) {
  ComplexQ c = c_in;
  c.re.canonicalize();
  c.im.canonicalize();
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ComplexQ TrigPoly::coeff(const Freq& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? ComplexQ{} : it->second;
}

Rat TrigPoly::norm2() const {
  Rat s = 0;
  for (const auto& [x, c] : terms_) s += c.norm2();
  return s;
}

Int TrigPoly::radius() const {
  Int r = 0;
  for (const auto& [x, c] : terms_) {
    Int m = abs(x.x) > abs(x.y) ? Int(abs(x.x)) : Int(abs(x.y));
    if (m > r) r = m;
  }
  return r;
}

TrigPoly operator+(const TrigPoly& l, const TrigPoly& r) {
  TrigPoly out = l;
  for (const auto& [x, c] : r.terms_) out.add(x, c);
  return out;
}

TrigPoly parse_trigpoly(std::string_view text) {
  TrigPoly f;
  std::string s(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t semi = s.find(';', start);
    std::string term = s.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    std::istringstream in(term);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (!tok.empty()) {
      if (tok.size() != 3 && tok.size() != 4)
        throw Error(Errc::ParseError, "trig term '" + term + "' must be 'x1 x2 re [im]'");
      Freq x(parse_int(tok[0]), parse_int(tok[1]));
      ComplexQ c{parse_rational(tok[2]), tok.size() == 4 ? parse_rational(tok[3]) : Rat(0)};
      f.add(x, c);
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return f;
}

std::string to_string(const TrigPoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [x, c] : f.terms()) {
    if (!s.empty()) s += "; ";
    s += x.x.get_str() + " " + x.y.get_str() + " " + to_string(c.re);
    if (sgn(c.im) != 0) s += " " + to_string(c.im);
  }
  return s;
}

int char_correlation(const std::vector<Freq>& xs, const Freq& y, const std::vector<Mat2Z>& ms) {
  if (xs.size() != ms.size()) throw Error(Errc::InvalidArgument, "frequency and matrix lists differ in length");
  Vec2 acc = y;
  for (std::size_t i = 0; i < xs.size(); ++i) acc += ms[i].transpose().apply(xs[i]);
  return acc.is_zero() ? 1 : 0;
}

namespace {

// All partial sums sum_{i in [lo,hi)} tM_i x_i over supports, with the
// accumulated coefficient product per sum.
std::map<Vec2, ComplexQ> partial_sums(const std::vector<TrigPoly>& fs, const std::vector<Mat2Z>& tms,
                                      std::size_t lo, std::size_t hi) {
  std::map<Vec2, ComplexQ> acc{{Vec2(0L, 0L), ComplexQ{Rat(1), Rat(0)}}};
  for (std::size_t i = lo; i < hi; ++i) {
    std::map<Vec2, ComplexQ> next;
    for (const auto& [s, c] : acc)
      for (const auto& [x, fx] : fs[i].terms()) {
        Vec2 key = s + tms[i].apply(x);
        auto [it, ins] = next.try_emplace(key, c * fx);
        if (!ins) it->second += c * fx;
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

ComplexQ trig_correlation(const std::vector<TrigPoly>& fs, const std::vector<Mat2Z>& ms) {
  if (fs.size() != ms.size() + 1) throw Error(Errc::InvalidArgument, "need k+1 functions for k matrices");
  std::vector<Mat2Z> tms;
  for (const Mat2Z& m : ms) tms.push_back(m.transpose());
  tms.push_back(Mat2Z::identity());
  std::size_t mid = (fs.size() + 1) / 2;
  auto left = partial_sums(fs, tms, 0, mid);
  auto right = partial_sums(fs, tms, mid, fs.size());
  ComplexQ total;
  for (const auto& [s, c] : right) {
    auto it = left.find(-s);
    if (it != left.end()) total += it->second * c;
  }
  return total;
}

TrigPoly trig_projection(const TrigPoly& f, const Mat2Z& t) {
  require_unimodular(t);
  const Mat2Z tt = t.transpose();
  // Finite orbits of SL(2,Z) elements on Z^2 have length at most 6.
  constexpr int kMaxOrbit = 12;
  TrigPoly out;
  std::set<Freq> done;
  for (const auto& [x, c] : f.terms()) {
    if (done.count(x)) continue;
    std::vector<Freq> orbit{x};
    Freq cur = tt.apply(x);
    while (cur != x && static_cast<int>(orbit.size()) < kMaxOrbit) {
      orbit.push_back(cur);
      cur = tt.apply(cur);
    }
    for (const Freq& o : orbit) done.insert(o);
    if (cur != x) continue;
    ComplexQ sum;
    for (const Freq& o : orbit) sum += f.coeff(o);
    Rat inv(1, static_cast<long>(orbit.size()));
    ComplexQ avg{Rat(sum.re * inv), Rat(sum.im * inv)};
    for (const Freq& o : orbit) out.add(o, avg);
  }
  return out;
}

namespace {

struct SideSums {
  long nonzero{0};
  bool zero_tuple{false};
};

// Maps each sum of tM_i x_i over x_i in the box (i in [lo,hi)) to tuple counts.
std::map<Vec2, SideSums> box_sums(const std::vector<Mat2Z>& tms, std::size_t lo, std::size_t hi, long box) {
  std::map<Vec2, SideSums> out;
  // (sum, tuple-is-zero) pairs keep the all-zero tuple apart.
  std::vector<std::pair<Vec2, bool>> cur{{Vec2(0L, 0L), true}};
  for (std::size_t i = lo; i < hi; ++i) {
    std::vector<std::pair<Vec2, bool>> next;
    next.reserve(cur.size() * static_cast<std::size_t>((2 * box + 1) * (2 * box + 1)));
    for (const auto& [s, z] : cur)
      for (long a = -box; a <= box; ++a)
        for (long b = -box; b <= box; ++b) {
          bool zero = z && a == 0 && b == 0;
          next.emplace_back(s + tms[i].apply(Vec2(a, b)), zero);
        }
    cur = std::move(next);
  }
  for (const auto& [s, z] : cur) {
    auto& e = out[s];
    if (z) e.zero_tuple = true;
    else ++e.nonzero;
  }
  return out;
}

}  // namespace

StabilizationReport character_scan(const std::function<std::vector<Mat2Z>(long)>& ms_at, long box, long horizon) {
  StabilizationReport rep;
  rep.horizon = horizon;
  for (long n = 1; n <= horizon; ++n) {
    std::vector<Mat2Z> tms;
    for (const Mat2Z& m : ms_at(n)) tms.push_back(m.transpose());
    std::size_t mid = (tms.size() + 1) / 2;
    auto left = box_sums(tms, 0, mid, box);
    auto right = box_sums(tms, mid, tms.size(), box);
    bool hit = false;
    // Need left + right = -y with y in the box.
    for (const auto& [r, rs] : right) {
      for (long a = -box; a <= box && !hit; ++a)
        for (long b = -box; b <= box && !hit; ++b) {
          auto it = left.find(Vec2(a, b) - r);
          if (it == left.end()) continue;
          const SideSums& ls = it->second;
          bool only_zero = ls.nonzero == 0 && rs.nonzero == 0;
          if (!only_zero) hit = true;
        }
      if (hit) break;
    }
    if (hit) {
      rep.hits.push_back(n);
      rep.n0 = n + 1;
    }
  }
  return rep;
}

}  // namespace toral
