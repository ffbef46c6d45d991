#include "toral/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "toral/error.hpp"

namespace toral {

namespace {

std::int32_t reduce_mod(const Int& v, long Q) {
  Int r = v % Q;
  if (sgn(r) < 0) r += Q;
  return static_cast<std::int32_t>(r.get_si());
}

double abs_double(const Int& v) { return std::fabs(v.get_d()); }

}  // namespace

double lattice_error_bound(const std::vector<GridSet>& gs, const std::vector<Mat2Z>& ms, long Q) {
  if (gs.size() != ms.size() + 1) throw Error(Errc::InvalidArgument, "need k+1 grid sets for k matrices");
  const double dq = static_cast<double>(Q);
  double bound = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    Mat2Z n = i == 0 ? Mat2Z::identity() : ms[i - 1].adjugate();
    double h = static_cast<double>(gs[i].horizontal_edges());
    double v = static_cast<double>(gs[i].vertical_edges());
    double stretch_h = abs_double(n.a) + abs_double(n.c);
    double stretch_v = abs_double(n.b) + abs_double(n.d);
    bound += (h * stretch_h + v * stretch_v) / (dq * static_cast<double>(gs[i].q())) + 3.0 * (h + v) / (dq * dq);
  }
  return bound;
}

LatticeEstimate lattice_correlation(const std::vector<GridSet>& gs, const std::vector<Mat2Z>& ms, long Q,
                                    unsigned threads, kernel::Isa isa) {
  if (gs.size() != ms.size() + 1) throw Error(Errc::InvalidArgument, "need k+1 grid sets for k matrices");
  if (Q < 1 || Q > kernel::kMaxQ) throw Error(Errc::InvalidArgument, "lattice resolution out of range");
  for (const auto& m : ms) require_unimodular(m);
  for (const auto& g : gs)
    if (Q % g.q() != 0)
      throw Error(Errc::ResolutionMismatch,
                  "Q=" + std::to_string(Q) + " is not a multiple of grid resolution " + std::to_string(g.q()));

  const std::size_t nt = gs.size();
  std::vector<std::vector<std::int32_t>> cell_of(nt), member(nt);
  std::vector<kernel::Term> terms(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const long q = gs[t].q();
    const long scale = Q / q;
    cell_of[t].resize(static_cast<std::size_t>(Q));
    for (long w = 0; w < Q; ++w) cell_of[t][static_cast<std::size_t>(w)] = static_cast<std::int32_t>(w / scale);
    member[t].resize(static_cast<std::size_t>(q * q));
    for (std::size_t k = 0; k < member[t].size(); ++k) member[t][k] = gs[t].membership()[k] ? -1 : 0;
    Mat2Z m = t == 0 ? Mat2Z::identity() : ms[t - 1];
    terms[t] = {reduce_mod(m.a, Q), reduce_mod(m.b, Q), reduce_mod(m.c, Q), reduce_mod(m.d, Q),
                static_cast<std::int32_t>(q), cell_of[t].data(), member[t].data()};
  }

  // Put the most selective set first so the scalar kernel exits early.
  std::stable_sort(terms.begin(), terms.end(), [&](const kernel::Term& l, const kernel::Term& r) {
    auto density = [](const kernel::Term& t) {
      long in = 0;
      for (long k = 0; k < static_cast<long>(t.q) * t.q; ++k) in += t.member[k] != 0;
      return static_cast<double>(in) / (static_cast<double>(t.q) * t.q);
    };
    return density(l) < density(r);
  });

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long>(workers, Q));
  std::vector<std::uint64_t> partial(workers, 0);
  const auto q32 = static_cast<std::int32_t>(Q);
  auto run = [&](unsigned w) {
    auto lo = static_cast<std::int32_t>(Q * w / workers);
    auto hi = static_cast<std::int32_t>(Q * (w + 1) / workers);
    partial[w] = kernel::count_rows(isa, terms.data(), static_cast<int>(nt), q32, lo, hi);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  Int count = 0;
  for (std::uint64_t p : partial) count += Int(static_cast<unsigned long>(p));

  LatticeEstimate est;
  est.count = count;
  est.Q = Q;
  Rat exact(count, Int(Q) * Int(Q));
  exact.canonicalize();
  est.estimate = exact.get_d();
  est.error_bound = lattice_error_bound(gs, ms, Q);
  return est;
}

}  // namespace toral
