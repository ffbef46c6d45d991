#include "toral/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "toral/error.hpp"

namespace toral {

GridSet::GridSet(long q, std::vector<Cell> cells) : q_(q), cells_(std::move(cells)) {
  if (q < 1) throw Error(Errc::InvalidArgument, "grid resolution must be >= 1");
  if (q > (1L << 15)) throw Error(Errc::InvalidArgument, "grid resolution above 32768");
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
    throw Error(Errc::InvalidArgument, "repeated grid cell");
  member_.assign(static_cast<std::size_t>(q * q), 0);
  for (const Cell& c : cells_) {
    if (c.i < 0 || c.j < 0 || c.i >= q || c.j >= q)
      throw Error(Errc::InvalidArgument,
                  "cell (" + std::to_string(c.i) + "," + std::to_string(c.j) + ") outside 0..q-1");
    member_[static_cast<std::size_t>(c.i * q + c.j)] = 1;
  }
}

GridSet GridSet::full(long q) {
  std::vector<Cell> cells;
  for (long i = 0; i < q; ++i)
    for (long j = 0; j < q; ++j) cells.push_back({i, j});
  return GridSet(q, std::move(cells));
}

namespace {

long grid_index(const Rat& x, long q) {
  if (x < 0 || x > 1) throw Error(Errc::InvalidArgument, "rectangle endpoint " + to_string(x) + " outside [0,1]");
  Rat s = x * q;
  if (s.get_den() != 1)
    throw Error(Errc::ResolutionMismatch, "endpoint " + to_string(x) + " is not a multiple of 1/" + std::to_string(q));
  return s.get_num().get_si();
}

}  // namespace

GridSet GridSet::rect(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1, long q) {
  long i0 = grid_index(x0, q), i1 = grid_index(x1, q), j0 = grid_index(y0, q), j1 = grid_index(y1, q);
  if (i1 < i0 || j1 < j0) throw Error(Errc::InvalidArgument, "rectangle with negative extent");
  std::vector<Cell> cells;
  for (long i = i0; i < i1; ++i)
    for (long j = j0; j < j1; ++j) cells.push_back({i, j});
  return GridSet(q, std::move(cells));
}

GridSet GridSet::refine(long factor) const {
  if (factor < 1) throw Error(Errc::InvalidArgument, "refinement factor must be >= 1");
  std::vector<Cell> cells;
  for (const Cell& c : cells_)
    for (long a = 0; a < factor; ++a)
      for (long b = 0; b < factor; ++b) cells.push_back({c.i * factor + a, c.j * factor + b});
  return GridSet(q_ * factor, std::move(cells));
}

GridSet GridSet::reflect() const {
  std::vector<Cell> cells;
  for (const Cell& c : cells_) cells.push_back({q_ - 1 - c.i, q_ - 1 - c.j});
  return GridSet(q_, std::move(cells));
}

GridSet GridSet::intersect(const GridSet& other) const {
  if (other.q_ != q_) throw Error(Errc::ResolutionMismatch, "intersection of grids with different q");
  std::vector<Cell> cells;
  for (const Cell& c : cells_)
    if (other.contains(c.i, c.j)) cells.push_back(c);
  return GridSet(q_, std::move(cells));
}

long GridSet::horizontal_edges() const {
  long n = 0;
  for (long i = 0; i < q_; ++i)
    for (long j = 0; j < q_; ++j) n += contains(i, j) != contains(i, (j + 1) % q_);
  return n;
}

long GridSet::vertical_edges() const {
  long n = 0;
  for (long i = 0; i < q_; ++i)
    for (long j = 0; j < q_; ++j) n += contains(i, j) != contains((i + 1) % q_, j);
  return n;
}

GridSet parse_rect(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '@', ' ');
  std::istringstream in(s);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (!tok.empty() && tok.front() == "rect") tok.erase(tok.begin());
  if (tok.size() != 5 || text.find('@') == std::string_view::npos)
    throw Error(Errc::ParseError, "rectangle '" + std::string(text) + "' must read 'x0 x1 y0 y1 @ q'");
  Int q = parse_int(tok[4]);
  if (!q.fits_slong_p() || q < 1) throw Error(Errc::ParseError, "bad resolution in '" + std::string(text) + "'");
  return GridSet::rect(parse_rational(tok[0]), parse_rational(tok[1]), parse_rational(tok[2]),
                       parse_rational(tok[3]), q.get_si());
}

GridSet gridset_from_json(const nlohmann::json& j) {
  try {
    long q = j.at("q").get<long>();
    std::vector<Cell> cells;
    for (const auto& c : j.at("cells")) {
      if (!c.is_array() || c.size() != 2) throw Error(Errc::ParseError, "cell must be [i,j]");
      cells.push_back({c[0].get<long>(), c[1].get<long>()});
    }
    return GridSet(q, std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("grid set JSON: ") + e.what());
  }
}

nlohmann::json to_json(const GridSet& g) {
  nlohmann::json cells = nlohmann::json::array();
  for (const Cell& c : g.cells()) cells.push_back({c.i, c.j});
  return {{"q", g.q()}, {"cells", cells}};
}

namespace {

long to_long(const Int& v) {
  if (!v.fits_slong_p() || abs(v) > Int(1L << 40))
    throw Error(Errc::InvalidArgument, "frequency " + v.get_str() + " too large for floating evaluation");
  return v.get_si();
}

std::complex<double> unit_phase(long num, long q) {
  // exp(-2 pi i num/q) with num reduced exactly.
  long r = ((num % q) + q) % q;
  double a = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
  return {std::cos(a), std::sin(a)};
}

// Integral of exp(-2 pi i t s) over [i/q, (i+1)/q) for i = 0..q-1.
std::vector<std::complex<double>> interval_integrals(long t, long q) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(q));
  if (t == 0) {
    std::fill(out.begin(), out.end(), std::complex<double>(1.0 / static_cast<double>(q), 0.0));
    return out;
  }
  const std::complex<double> two_pi_i_t(0.0, 2.0 * std::numbers::pi * static_cast<double>(t));
  std::complex<double> factor = (1.0 - unit_phase(t, q)) / two_pi_i_t;
  long tq = t % q;
  for (long i = 0; i < q; ++i) out[static_cast<std::size_t>(i)] = unit_phase((tq * i) % q, q) * factor;
  return out;
}

}  // namespace

std::complex<double> grid_fourier(const GridSet& g, const Vec2& x) {
  auto e1 = interval_integrals(to_long(x.x), g.q());
  auto e2 = interval_integrals(to_long(x.y), g.q());
  std::complex<double> s = 0;
  for (const Cell& c : g.cells()) s += e1[static_cast<std::size_t>(c.i)] * e2[static_cast<std::size_t>(c.j)];
  return s;
}

std::complex<double> grid_fourier_weighted(long q, const std::vector<double>& w, const Vec2& x) {
  if (static_cast<long>(w.size()) != q * q) throw Error(Errc::InvalidArgument, "weight table must have q*q entries");
  auto e1 = interval_integrals(to_long(x.x), q);
  auto e2 = interval_integrals(to_long(x.y), q);
  std::complex<double> s = 0;
  for (long i = 0; i < q; ++i) {
    std::complex<double> row = 0;
    for (long j = 0; j < q; ++j) {
      double wij = w[static_cast<std::size_t>(i * q + j)];
      if (wij != 0.0) row += wij * e2[static_cast<std::size_t>(j)];
    }
    s += e1[static_cast<std::size_t>(i)] * row;
  }
  return s;
}

namespace {

// Density of the pushforward along v sampled at sigma = m + 1/3 and m + 2/3 in
// units of 1/q, scaled by K = 3 q max(|v1|,|v2|) max(min(|v1|,|v2|),1).
// Every trapezoid breakpoint is an integer in these units, so the density is
// linear on each unit piece.
std::vector<long> pushforward_samples(const GridSet& g, long v1, long v2) {
  const long q = g.q();
  const long w1 = std::labs(v1), w2 = std::labs(v2);
  const long wmin = std::min(w1, w2), wmax = std::max(w1, w2), width = w1 + w2;
  const long plateau = 3 * std::max(wmin, 1L);
  std::vector<long> samples(static_cast<std::size_t>(2 * q), 0);
  for (const Cell& c : g.cells()) {
    long s0 = v1 * c.i + v2 * c.j + std::min(0L, v1) + std::min(0L, v2);
    for (long piece = 0; piece < width; ++piece) {
      long m = (((s0 + piece) % q) + q) % q;
      for (int k = 1; k <= 2; ++k) {
        long u3 = 3 * piece + k;  // 3 * (sigma - s0)
        long val = u3 < 3 * wmin ? u3 : (u3 <= 3 * wmax ? plateau : 3 * width - u3);
        samples[static_cast<std::size_t>(2 * m + k - 1)] += val;
      }
    }
  }
  return samples;
}

}  // namespace

Rat line_projection_inner(const GridSet& a, const GridSet& b, const Vec2& v) {
  if (a.q() != b.q()) throw Error(Errc::ResolutionMismatch, "projection inner product needs equal resolutions");
  if (v.is_zero()) throw Error(Errc::InvalidArgument, "projection direction must be nonzero");
  if (gcd(v.x, v.y) != 1) throw Error(Errc::InvalidArgument, "projection direction must be primitive");
  if (abs(v.x) > Int(1L << 20) || abs(v.y) > Int(1L << 20))
    throw Error(Errc::InvalidArgument, "projection direction too large");
  const long v1 = v.x.get_si(), v2 = v.y.get_si(), q = a.q();
  auto sa = pushforward_samples(a, v1, v2);
  auto sb = pushforward_samples(b, v1, v2);
  Int acc = 0;
  for (long m = 0; m < q; ++m) {
    Int a1 = sa[2 * m], a2 = sa[2 * m + 1], b1 = sb[2 * m], b2 = sb[2 * m + 1];
    Int a0 = 2 * a1 - a2, ae = 2 * a2 - a1, b0 = 2 * b1 - b2, be = 2 * b2 - b1;
    acc += 2 * a0 * b0 + a0 * be + ae * b0 + 2 * ae * be;
  }
  const long w1 = std::labs(v1), w2 = std::labs(v2);
  Int k = Int(3) * q * std::max(w1, w2) * std::max(std::min(w1, w2), 1L);
  Rat r(acc, Int(6 * q * k * k));
  r.canonicalize();
  return r;
}

}  // namespace toral
