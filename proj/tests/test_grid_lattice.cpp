#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/grid.hpp"
#include "toral/lattice.hpp"
#include "toral/lattice_kernel.hpp"

using namespace toral;
using toral::test::naive_pow;
using toral::test::random_sl2;
using toral::test::uniform;

namespace {

GridSet half_square() { return GridSet::rect(Rat(0), Rat(1, 2), Rat(0), Rat(1, 2), 2); }

GridSet random_grid(long q) {
  std::vector<Cell> cells;
  for (long i = 0; i < q; ++i)
    for (long j = 0; j < q; ++j)
      if (uniform(0, 2) == 0) cells.push_back({i, j});
  return GridSet(q, cells);
}

/// Direct count: every lattice point is mapped with exact integers.
long direct_count(const std::vector<GridSet>& gs, const std::vector<Mat2Z>& ms, long Q) {
  long count = 0;
  for (long u = 0; u < Q; ++u)
    for (long v = 0; v < Q; ++v) {
      bool in = gs[0].contains(u * gs[0].q() / Q, v * gs[0].q() / Q);
      for (std::size_t i = 0; in && i < ms.size(); ++i) {
        Vec2 w = ms[i].apply(Vec2(u, v));
        long x = mpz_fdiv_ui(w.x.get_mpz_t(), static_cast<unsigned long>(Q));
        long y = mpz_fdiv_ui(w.y.get_mpz_t(), static_cast<unsigned long>(Q));
        const GridSet& g = gs[i + 1];
        in = g.contains(x * g.q() / Q, y * g.q() / Q);
      }
      count += in;
    }
  return count;
}

}  // namespace

TEST_CASE("grid sets") {
  GridSet d = half_square();
  CHECK(d.measure() == Rat(1, 4));
  CHECK(d.refine(3).measure() == Rat(1, 4));
  CHECK(d.refine(3).q() == 6);
  CHECK(d.reflect() == GridSet::rect(Rat(1, 2), Rat(1), Rat(1, 2), Rat(1), 2));
  CHECK(d.intersect(d.reflect()).empty());
  CHECK(GridSet::full(4).measure() == 1);
  CHECK(d.horizontal_edges() == 2);
  CHECK(d.vertical_edges() == 2);
  CHECK(GridSet::full(5).horizontal_edges() == 0);
  CHECK_THROWS_AS(GridSet::rect(Rat(0), Rat(1, 3), Rat(0), Rat(1), 2), Error);
  CHECK_THROWS_AS(GridSet(2, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(GridSet(2, {{2, 0}}), Error);
  CHECK(parse_rect("rect 0 1/2 0 1/2 @ 2") == d);
  CHECK(parse_rect("0 1/2 0 1/2 @ 4") == d.refine(2));
  CHECK_THROWS_AS(parse_rect("0 1/2 0 1/2"), Error);
  CHECK(gridset_from_json(to_json(d)) == d);
}

TEST_CASE("grid Fourier coefficients") {
  GridSet full = GridSet::full(3);
  CHECK(std::abs(grid_fourier(full, Vec2(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(grid_fourier(full, Vec2(2, -1))) < 1e-14);
  GridSet strip = GridSet::rect(Rat(0), Rat(1, 2), Rat(0), Rat(1), 2);
  CHECK(std::abs(std::abs(grid_fourier(strip, Vec2(1, 0))) - 1.0 / std::numbers::pi) < 1e-14);
  for (int i = 0; i < 10; ++i) {
    GridSet g = random_grid(static_cast<long>(uniform(1, 6)));
    CHECK(std::abs(grid_fourier(g, Vec2(0, 0)) - g.measure().get_d()) < 1e-14);
    // Midpoint-free oracle: sum of exact cell transforms.
    Vec2 x(uniform(-4, 4), uniform(-4, 4));
    std::complex<double> acc = 0;
    double q = static_cast<double>(g.q());
    auto side = [&](long k, long idx) -> std::complex<double> {
      if (k == 0) return 1.0 / q;
      double a = 2 * std::numbers::pi * static_cast<double>(k);
      std::complex<double> i(0, 1);
      return (std::exp(-i * a * (static_cast<double>(idx) / q)) - std::exp(-i * a * (static_cast<double>(idx + 1) / q))) /
             (i * a);
    };
    for (const Cell& c : g.cells()) acc += side(x.x.get_si(), c.i) * side(x.y.get_si(), c.j);
    CHECK(std::abs(grid_fourier(g, x) - acc) < 1e-12);
  }
}

TEST_CASE("line projection norms") {
  GridSet d = half_square();
  CHECK(line_projection_norm2(d, Vec2(1, 0)) == Rat(1, 8));
  CHECK(line_projection_norm2(d, Vec2(1, 1)) == Rat(1, 12));
  CHECK(line_projection_norm2(GridSet::full(2), Vec2(3, 1)) == 1);
  // Parseval along the line: sum_k |1_G^(k v)|^2 converges to the norm.
  for (int i = 0; i < 6; ++i) {
    GridSet g = random_grid(static_cast<long>(uniform(2, 4)));
    Vec2 v(uniform(-2, 2), uniform(1, 2));
    if (gcd(v.x, v.y) != 1) continue;
    double series = 0;
    for (long k = -4000; k <= 4000; ++k) series += std::norm(grid_fourier(g, Int(k) * v));
    double exact = line_projection_norm2(g, v).get_d();
    CHECK(series <= exact + 1e-9);
    CHECK(exact - series < 2e-3);
  }
}

TEST_CASE("lattice counts are exact for identity maps and match direct counting") {
  GridSet d = half_square();
  LatticeEstimate e = lattice_correlation({d, d}, {Mat2Z::identity()}, 64);
  CHECK(e.count == 64 * 64 / 4);
  CHECK(e.estimate == 0.25);
  for (int i = 0; i < 12; ++i) {
    long q = uniform(1, 4);
    long Q = q * uniform(4, 12);
    std::vector<GridSet> gs{random_grid(q), random_grid(q), random_grid(q)};
    std::vector<Mat2Z> ms{random_sl2(2), random_sl2(3)};
    long want = direct_count(gs, ms, Q);
    for (kernel::Isa isa : {kernel::Isa::Scalar, kernel::Isa::Avx2}) {
      if (!kernel::isa_available(isa)) continue;
      CHECK(lattice_correlation(gs, ms, Q, 1, isa).count == want);
      CHECK(lattice_correlation(gs, ms, Q, 3, isa).count == want);
    }
  }
  CHECK_THROWS_AS(lattice_correlation({d, d}, {Mat2Z::identity()}, 63), Error);
}

TEST_CASE("AVX2 kernel agrees with the scalar kernel") {
  if (!kernel::isa_available(kernel::Isa::Avx2)) return;
  for (int i = 0; i < 20; ++i) {
    long q = uniform(1, 8);
    long Q = q * uniform(8, 64) + 0;
    std::vector<GridSet> gs;
    std::vector<Mat2Z> ms;
    int k = static_cast<int>(uniform(1, 4));
    gs.push_back(random_grid(q));
    for (int j = 0; j < k; ++j) {
      gs.push_back(random_grid(q));
      ms.push_back(naive_pow(random_sl2(2), uniform(1, 6)));
    }
    CHECK(lattice_correlation(gs, ms, Q, 1, kernel::Isa::Avx2).count ==
          lattice_correlation(gs, ms, Q, 1, kernel::Isa::Scalar).count);
  }
}

TEST_CASE("error bounds contain exact measures") {
  GridSet d = half_square();
  // {(x,y) in D : (x+y, y) in D} is a triangle of area 1/8.
  for (long Q : {64L, 256L, 1024L}) {
    LatticeEstimate e = lattice_correlation({d, d}, {Mat2Z{1, 1, 0, 1}}, Q);
    CHECK(std::abs(e.estimate - 0.125) <= e.error_bound);
  }
  // -D meets D in a null set.
  LatticeEstimate r = lattice_correlation({d, d}, {-Mat2Z::identity()}, 128);
  CHECK(std::abs(r.estimate) <= r.error_bound);
  // The bound shrinks when Q doubles.
  Mat2Z t = naive_pow(Mat2Z{2, 1, 1, 1}, 3);
  double b1 = lattice_error_bound({d, d}, {t}, 1024);
  double b2 = lattice_error_bound({d, d}, {t}, 2048);
  CHECK(b1 / b2 >= 1.8);
  CHECK(b1 / b2 <= 4.0);
}

TEST_CASE("mixing drives the estimate to the product of measures") {
  GridSet d = half_square();
  Mat2Z t{2, 1, 1, 1};
  for (long n = 3; n <= 6; ++n) {
    LatticeEstimate e = lattice_correlation({d, d}, {naive_pow(t, n)}, 4096);
    CHECK(std::abs(e.estimate - 1.0 / 16) <= e.error_bound + 0.02);
  }
}
