#include "toral/two_unipotent.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"

namespace toral {

namespace {

std::pair<Vec2, Vec2> fixed_lines(const Mat2Z& t, const Mat2Z& s) {
  for (const Mat2Z* m : {&t, &s}) {
    MatClass cls = classify(*m);
    if (!cls.unipotent() || cls.sign < 0)
      throw Error(Errc::NotUnipotent, to_string(*m) + " is not unipotent (" + to_string(cls) + ")");
  }
  if (commute(t, s)) throw Error(Errc::CommutingUnipotents, to_string(t) + " and " + to_string(s) + " commute");
  return {fixed_vector(t.transpose()), fixed_vector(s.transpose())};
}

// Index i with x = i*v, if x lies on the line of v.
std::optional<Int> line_index(const Vec2& x, const Vec2& v) {
  if (sgn(v.x * x.y - v.y * x.x) != 0) return std::nullopt;
  return sgn(v.x) != 0 ? Int(x.x / v.x) : Int(x.y / v.y);
}

std::complex<double> to_complex(const ComplexQ& z) { return {z.re.get_d(), z.im.get_d()}; }

bool is_axis(const Vec2& v) { return (v.x == 1 && v.y == 0) || (v.x == 0 && v.y == 1); }

}  // namespace

TwoUnipotentLimit limit_two_unipotents(const TrigPoly& f, const TrigPoly& g, const TrigPoly& h, const Mat2Z& t,
                                       const Mat2Z& s, long R) {
  auto [v, w] = fixed_lines(t, s);
  ComplexQ kept;
  double omitted = 0;
  for (const auto& [y, gy] : g.terms()) {
    auto i = line_index(y, v);
    if (!i) continue;
    for (const auto& [z, hz] : h.terms()) {
      auto j = line_index(z, w);
      if (!j) continue;
      ComplexQ term = f.coeff(-(y + z)) * gy * hz;
      if (term.is_zero()) continue;
      if (abs(*i) <= R && abs(*j) <= R) kept += term;
      else omitted += std::abs(to_complex(term));
    }
  }
  return {to_complex(kept), omitted, kept, "exact", v, w};
}

namespace {

long lcm3(long a, long b, long c) { return std::lcm(std::lcm(a, b), c); }

// Weights of f * P g on the grid, P projecting onto functions of the axis v.
std::vector<double> times_marginal(const GridSet& f, const GridSet& g, const Vec2& v) {
  const long q = f.q();
  const bool first = v.x == 1;  // functions of xi_1: average over j
  std::vector<long> counts(static_cast<std::size_t>(q), 0);
  for (const Cell& c : g.cells()) ++counts[static_cast<std::size_t>(first ? c.i : c.j)];
  std::vector<double> wts(static_cast<std::size_t>(q * q), 0.0);
  for (const Cell& c : f.cells())
    wts[static_cast<std::size_t>(c.i * q + c.j)] =
        static_cast<double>(counts[static_cast<std::size_t>(first ? c.i : c.j)]) / static_cast<double>(q);
  return wts;
}

double l2_norm2(const std::vector<double>& wts, long q) {
  double s = 0;
  for (double x : wts) s += x * x;
  return s / static_cast<double>(q * q);
}

// Covers rounding in the floating partial sums subtracted from exact norms.
constexpr double kRoundingSlack = 1e-12;

}  // namespace

TwoUnipotentLimit limit_two_unipotents(const GridSet& f0, const GridSet& g0, const GridSet& h0, const Mat2Z& t,
                                       const Mat2Z& s, long R) {
  if (R < 0) throw Error(Errc::InvalidArgument, "truncation must be >= 0");
  auto [v, w] = fixed_lines(t, s);
  const long q = lcm3(f0.q(), g0.q(), h0.q());
  const GridSet f = f0.refine(q / f0.q()), g = g0.refine(q / g0.q()), h = h0.refine(q / h0.q());
  TwoUnipotentLimit out;
  out.v = v;
  out.w = w;

  // One index in closed form: sum_j c_j h^(jw) with c_j = (f P_T g)^(-jw),
  // or the mirror image with the roles of (g, v) and (h, w) swapped.
  auto single = [&](const GridSet& inner, const Vec2& inner_dir, const GridSet& outer, const Vec2& outer_dir,
                    const char* method) {
    auto wts = times_marginal(f, inner, inner_dir);
    std::complex<double> sum = 0;
    double kept_norm2 = 0;
    for (long j = -R; j <= R; ++j) {
      Vec2 x = Int(j) * outer_dir;
      std::complex<double> ho = grid_fourier(outer, x);
      sum += ho * grid_fourier_weighted(q, wts, -x);
      kept_norm2 += std::norm(ho);
    }
    double total = line_projection_norm2(outer, outer_dir).get_d();
    double rest = std::max(0.0, total - kept_norm2) + kRoundingSlack;
    out.value = sum;
    out.tail_bound = std::sqrt(l2_norm2(wts, q)) * std::sqrt(rest);
    out.method = method;
  };
  if (is_axis(v)) {
    single(g, v, h, w, "inner-closed-form-i");
    return out;
  }
  if (is_axis(w)) {
    single(h, w, g, v, "inner-closed-form-j");
    return out;
  }
  std::vector<std::complex<double>> gi, hj;
  double g_kept = 0, h_kept = 0;
  for (long i = -R; i <= R; ++i) {
    gi.push_back(grid_fourier(g, Int(i) * v));
    g_kept += std::norm(gi.back());
    hj.push_back(grid_fourier(h, Int(i) * w));
    h_kept += std::norm(hj.back());
  }
  std::complex<double> sum = 0;
  for (long i = -R; i <= R; ++i)
    for (long j = -R; j <= R; ++j)
      sum += grid_fourier(f, -(Int(i) * v + Int(j) * w)) * gi[static_cast<std::size_t>(i + R)] *
             hj[static_cast<std::size_t>(j + R)];
  double g_tot = line_projection_norm2(g, v).get_d();
  double h_tot = line_projection_norm2(h, w).get_d();
  // The omitted (i,j) lie outside the box; f^ is injective on i v + j w.
  double rest = std::max(0.0, g_tot * h_tot - g_kept * h_kept) + kRoundingSlack;
  out.value = sum;
  out.tail_bound = std::sqrt(f.measure().get_d()) * std::sqrt(rest);
  out.method = "double-truncation";
  return out;
}

namespace {

// Integral of exp(-2 pi i t s) over [x0, x1).
std::complex<double> interval_transform(const Rat& x0, const Rat& x1, long t) {
  if (t == 0) return Rat(x1 - x0).get_d();
  auto phase = [t](const Rat& x) {
    // exp(-2 pi i t x) with t x reduced modulo 1 exactly.
    Rat tx = x * t;
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), tx.get_num_mpz_t(), tx.get_den_mpz_t());
    double a = -2.0 * std::numbers::pi * Rat(tx - fl).get_d();
    return std::complex<double>(std::cos(a), std::sin(a));
  };
  return (phase(x0) - phase(x1)) / std::complex<double>(0.0, 2.0 * std::numbers::pi * static_cast<double>(t));
}

}  // namespace

double rectangle_reduced_series(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1, const Vec2& w, long R) {
  if (!w.x.fits_slong_p() || !w.y.fits_slong_p()) throw Error(Errc::InvalidArgument, "direction too large");
  const long a = w.x.get_si(), b = w.y.get_si();
  double sum = 0;
  for (long j = -R; j <= R; ++j)
    sum += std::norm(interval_transform(x0, x1, a * j)) * std::norm(interval_transform(y0, y1, b * j));
  return Rat(y1 - y0).get_d() * sum;
}

}  // namespace toral
