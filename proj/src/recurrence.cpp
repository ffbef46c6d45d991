#include "toral/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "toral/error.hpp"
#include "toral/exact_algebra.hpp"
#include "toral/lattice.hpp"
#include "toral/two_unipotent.hpp"

namespace toral {

std::string_view to_string(PairKind k) {
  switch (k) {
    case PairKind::EqualHyperbolic: return "EqualHyperbolic";
    case PairKind::NegatedHyperbolic: return "NegatedHyperbolic";
    case PairKind::DistinctHyperbolic: return "DistinctHyperbolic";
    case PairKind::UnipotentHyperbolic: return "UnipotentHyperbolic";
    case PairKind::EqualUnipotent: return "EqualUnipotent";
    case PairKind::NoncommutingUnipotent: return "NoncommutingUnipotent";
    case PairKind::CommutingUnipotent: return "CommutingUnipotent";
    case PairKind::Other: return "Other";
  }
  return "Other";
}

std::string_view to_string(LimitShape s) {
  switch (s) {
    case LimitShape::Constant: return "constant";
    case LimitShape::TwoPoint: return "two-point";
    case LimitShape::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::TendsToZero: return "tends_to_zero";
    case Trend::Bounded: return "bounded";
    case Trend::Unbounded: return "unbounded";
  }
  return "bounded";
}

namespace {

// Truncation for the two-unipotent series attached to scans.
constexpr long kScanSeriesTruncation = 400;

bool unipotent_type(const MatClass& c) { return c.unipotent(); }

PairKind classify_pair(const Mat2Z& t, const Mat2Z& s) {
  MatClass ct = classify(t), cs = classify(s);
  if (ct.hyperbolic() && cs.hyperbolic()) {
    if (t == s) return PairKind::EqualHyperbolic;
    if (t == -s) return PairKind::NegatedHyperbolic;
    return PairKind::DistinctHyperbolic;
  }
  if ((unipotent_type(ct) && cs.hyperbolic()) || (ct.hyperbolic() && unipotent_type(cs)))
    return PairKind::UnipotentHyperbolic;
  if (unipotent_type(ct) && unipotent_type(cs)) {
    if (t == s) return PairKind::EqualUnipotent;
    if (commute(t, s)) return PairKind::CommutingUnipotent;
    return PairKind::NoncommutingUnipotent;
  }
  return PairKind::Other;
}

// Values (even n, odd n) of lim <1_D, P 1_{(+-)D}> for the unipotent-type u.
std::vector<double> unipotent_self_limit(const GridSet& d, const Mat2Z& u, double factor) {
  Vec2 v = fixed_vector(u.transpose());
  double even = line_projection_norm2(d, v).get_d() * factor;
  if (classify(u).sign > 0) return {even};
  double odd = line_projection_inner(d, d.reflect(), v).get_d() * factor;
  return {even, odd};
}

std::optional<TheoreticalLimit> theoretical_limit(const ScanReport& r) {
  const double mu = r.mu.get_d();
  switch (r.kind) {
    case PairKind::EqualHyperbolic:
      return TheoreticalLimit{{r.mu_squared.get_d()}, 0, "mu(D)^2"};
    case PairKind::NegatedHyperbolic:
      return TheoreticalLimit{{r.mu_squared.get_d(), r.mu_sym_times_mu.get_d()}, 0,
                              "mu(D)^2 for even n, mu(D cap -D) mu(D) for odd n"};
    case PairKind::DistinctHyperbolic:
      return TheoreticalLimit{{r.mu_cubed.get_d()}, 0, "mu(D)^3"};
    case PairKind::UnipotentHyperbolic: {
      const Mat2Z& u = classify(r.t).hyperbolic() ? r.s : r.t;
      auto vals = unipotent_self_limit(r.d, u, mu);
      return TheoreticalLimit{vals, 0,
                              vals.size() == 1 ? "mu(D) |P_U 1_D|^2" : "mu(D) <1_D, P_U 1_{(-1)^n D}>"};
    }
    case PairKind::EqualUnipotent: {
      auto vals = unipotent_self_limit(r.d, r.t, 1.0);
      return TheoreticalLimit{vals, 0, vals.size() == 1 ? "|P_U 1_D|^2" : "<1_D, P_U 1_{(-1)^n D}>"};
    }
    case PairKind::NoncommutingUnipotent: {
      if (classify(r.t).sign < 0 || classify(r.s).sign < 0) return std::nullopt;
      auto lim = limit_two_unipotents(r.d, r.d, r.d, r.t, r.s, kScanSeriesTruncation);
      return TheoreticalLimit{{lim.value.real()}, lim.tail_bound, "sum_{i,j} f^(-iv-jw) f^(iv) f^(jw)"};
    }
    case PairKind::CommutingUnipotent:
    case PairKind::Other:
      return std::nullopt;
  }
  return std::nullopt;
}

// Start index of the longest suffix of `idx` whose intervals intersect.
std::size_t common_suffix(const std::vector<ScanPoint>& pts, const std::vector<std::size_t>& idx, double* lo_out,
                          double* hi_out) {
  double lo = -INFINITY, hi = INFINITY;
  std::size_t begin = idx.size();
  while (begin > 0) {
    const ScanPoint& p = pts[idx[begin - 1]];
    double nlo = std::max(lo, p.estimate - p.error_bound);
    double nhi = std::min(hi, p.estimate + p.error_bound);
    if (nlo > nhi) break;
    lo = nlo;
    hi = nhi;
    --begin;
  }
  if (lo_out) *lo_out = lo;
  if (hi_out) *hi_out = hi;
  return begin;
}

std::vector<std::size_t> indices_with_parity(const std::vector<ScanPoint>& pts, int parity) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (((pts[i].n % 2) + 2) % 2 == parity) idx.push_back(i);
  return idx;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json rat_json(const Rat& r) { return {{"exact", to_string(r)}, {"value", r.get_d()}}; }

}  // namespace

std::optional<double> ScanReport::expected_at(long n) const {
  if (!limit || limit->values.empty()) return std::nullopt;
  if (limit->values.size() == 1) return limit->values[0];
  return n % 2 == 0 ? limit->values[0] : limit->values[1];
}

bool ScanReport::plateau_matches_limit() const {
  if (!limit || points.empty()) return false;
  auto within = [&](const ScanPoint& p) {
    return std::fabs(p.estimate - *expected_at(p.n)) <= p.error_bound + limit->tolerance;
  };
  if (limit->values.size() == 1) {
    for (std::size_t i = plateau_begin; i < points.size(); ++i)
      if (!within(points[i])) return false;
    return true;
  }
  for (int parity = 0; parity < 2; ++parity) {
    auto idx = indices_with_parity(points, parity);
    std::size_t b = common_suffix(points, idx, nullptr, nullptr);
    for (std::size_t k = b; k < idx.size(); ++k)
      if (!within(points[idx[k]])) return false;
  }
  return true;
}

std::string ScanReport::to_csv() const {
  std::string out = "# toral-scan-csv v1\nn,estimate,error_bound\n";
  for (const auto& p : points) out += std::to_string(p.n) + "," + fmt_double(p.estimate) + "," + fmt_double(p.error_bound) + "\n";
  return out;
}

nlohmann::json ScanReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points)
    pts.push_back({{"n", p.n}, {"estimate", p.estimate}, {"error_bound", p.error_bound}, {"resolved", p.resolved}});
  nlohmann::json lim = nullptr;
  if (limit) lim = {{"values", limit->values}, {"tolerance", limit->tolerance}, {"formula", limit->formula}};
  return {{"T", to_string(t)},
          {"S", to_string(s)},
          {"D", toral::to_json(d)},
          {"Q", Q},
          {"kind", std::string(to_string(kind))},
          {"mu", rat_json(mu)},
          {"mu_squared", rat_json(mu_squared)},
          {"mu_cubed", rat_json(mu_cubed)},
          {"mu_sym_times_mu", rat_json(mu_sym_times_mu)},
          {"limit", lim},
          {"plateau_from_n", points.empty() ? 0 : points[std::min(plateau_begin, points.size() - 1)].n},
          {"shape", std::string(to_string(shape))},
          {"plateau_matches_limit", plateau_matches_limit()},
          {"points", pts}};
}

ScanReport conjecture_scan(const Mat2Z& t, const Mat2Z& s, const GridSet& d, long n_min, long n_max, long Q) {
  require_unimodular(t);
  require_unimodular(s);
  if (n_min > n_max) throw Error(Errc::InvalidArgument, "empty n range");
  ScanReport r;
  r.t = t;
  r.s = s;
  r.d = d;
  r.Q = Q;
  r.kind = classify_pair(t, s);
  r.mu = d.measure();
  r.mu_squared = r.mu * r.mu;
  r.mu_cubed = r.mu_squared * r.mu;
  r.mu_sym_times_mu = d.intersect(d.reflect()).measure() * r.mu;
  r.limit = theoretical_limit(r);

  for (long n = n_min; n <= n_max; ++n) {
    // D cap T^n D cap S^n D = {p in D : T^-n p in D, S^-n p in D}.
    Mat2Z tn = mat_pow(t, -n), sn = mat_pow(s, -n);
    LatticeEstimate e = lattice_correlation({d, d, d}, {tn, sn}, Q);
    Int norm = std::max(mat_pow(t, n).norm(), mat_pow(s, n).norm());
    norm = std::max(norm, std::max(tn.norm(), sn.norm()));
    r.points.push_back({n, e.estimate, e.error_bound, norm * d.q() * 16 <= Q});
  }

  std::vector<std::size_t> all(r.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  r.plateau_begin = common_suffix(r.points, all, nullptr, nullptr);
  if (r.points.size() - r.plateau_begin >= 3) {
    r.shape = LimitShape::Constant;
  } else {
    double elo, ehi, olo, ohi;
    auto even = indices_with_parity(r.points, 0), odd = indices_with_parity(r.points, 1);
    std::size_t eb = common_suffix(r.points, even, &elo, &ehi);
    std::size_t ob = common_suffix(r.points, odd, &olo, &ohi);
    bool enough = even.size() - eb >= 2 && odd.size() - ob >= 2;
    r.shape = enough && (ehi < olo || ohi < elo) ? LimitShape::TwoPoint : LimitShape::Undetermined;
  }
  return r;
}

std::vector<CesaroPoint> cesaro_scan(const Family& f, const GridSet& a, const GridSet& b, long n_max, long Q) {
  const double product = Rat(a.measure() * b.measure()).get_d();
  std::vector<CesaroPoint> out;
  double dev_sum = 0, err_sum = 0;
  for (long n = 1; n <= n_max; ++n) {
    Mat2Z tn = evaluate(f, Int(n));
    require_unimodular(tn);
    // mu(A cap T_n^-1 B) = measure of {p in A : T_n p in B}.
    LatticeEstimate e = lattice_correlation({a, b}, {tn}, Q);
    dev_sum += std::fabs(e.estimate - product);
    err_sum += e.error_bound;
    out.push_back({n, dev_sum / static_cast<double>(n), err_sum / static_cast<double>(n)});
  }
  return out;
}

namespace {

double log_int(const Int& v) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

// Widening applied to floating logarithms of exact integers.
constexpr double kLogSlack = 1e-9;

}  // namespace

nlohmann::json RokhlinReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"n", r.n},
                         {"gamma", r.gamma.get_str()},
                         {"log_ratio_lo", r.log_ratio_lo},
                         {"log_ratio_hi", r.log_ratio_hi}});
  nlohmann::json j = {{"rows", rows_json}, {"trend", std::string(to_string(trend))}, {"sufficient_only", sufficient_only}};
  j["cross_reference"] = cross_reference ? toral::to_json(*cross_reference) : nlohmann::json(nullptr);
  return j;
}

RokhlinReport rokhlin_report(const PolyMatFamily& f, const std::vector<IntPoly>& as, long n_from, long n_to) {
  if (as.empty()) throw Error(Errc::InvalidArgument, "need at least one exponent");
  if (n_from > n_to) throw Error(Errc::InvalidArgument, "empty n range");
  require_unimodular(f);
  RokhlinReport rep;
  for (long n = n_from; n <= n_to; ++n) {
    Mat2Z tn = f(Int(n));
    Int tr = abs(tn.trace());
    if (tr <= 2) throw Error(Errc::NonHyperbolicSample, "T_" + std::to_string(n) + " = " + to_string(tn) + " is not hyperbolic");
    std::vector<Int> e{Int(0)};
    for (const auto& a : as) e.push_back(a(Int(n)));
    Int gamma = -1;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        Int diff = abs(e[i] - e[j]);
        if (gamma < 0 || diff < gamma) gamma = diff;
      }
    // lambda in [(t + s)/2, (t + s + 1)/2] with s = isqrt(t^2 - 4).
    Int s = isqrt(Int(tr * tr - 4));
    double log_lam_lo = log_int(Int(tr + s)) - std::log(2.0) - kLogSlack;
    double log_lam_hi = log_int(Int(tr + s + 1)) - std::log(2.0) + kLogSlack;
    double g = gamma.get_d();
    double log_norm = log_int(tn.norm());
    rep.rows.push_back({n, gamma, log_norm - g * log_lam_hi - kLogSlack, log_norm - g * log_lam_lo + kLogSlack});
  }
  // Heuristic trend over the second half of the range: monotone with a net
  // change of at least log 1.5, judged on the conservative interval end.
  std::size_t half = rep.rows.size() / 2;
  if (rep.rows.size() >= 4) {
    bool down = true, up = true;
    for (std::size_t i = half + 1; i < rep.rows.size(); ++i) {
      down = down && rep.rows[i].log_ratio_hi <= rep.rows[i - 1].log_ratio_hi;
      up = up && rep.rows[i].log_ratio_lo >= rep.rows[i - 1].log_ratio_lo;
    }
    const double step = std::log(1.5);
    if (down && rep.rows.back().log_ratio_hi <= rep.rows[half].log_ratio_hi - step) rep.trend = Trend::TendsToZero;
    else if (up && rep.rows.back().log_ratio_lo >= rep.rows[half].log_ratio_lo + step) rep.trend = Trend::Unbounded;
  }
  bool constant_positive = std::all_of(as.begin(), as.end(), [](const IntPoly& a) {
    return a.is_constant() && !a.is_zero() && sgn(a.leading()) > 0 && a.leading().fits_ulong_p();
  });
  if (constant_positive) {
    std::vector<PolyMatFamily> powers;
    for (const auto& a : as) powers.push_back(family_power(f, a.leading().get_ui()));
    rep.cross_reference = decide_joint_polyfamilies(powers);
  }
  return rep;
}

Order2Counterexample order2_counterexample(const Mat2Z& g, const Mat2Z& h) {
  for (const Mat2Z* m : {&g, &h})
    if (!classify(*m).hyperbolic()) throw Error(Errc::NotHyperbolic, to_string(*m) + " is not hyperbolic");
  if (commute(g, h)) throw Error(Errc::CommutingInputs, "g and h commute");
  Mat2Z g2 = g * g;
  if (commute(g2, h)) throw Error(Errc::CommutingInputs, "g^2 and h commute");
  Order2Counterexample out;
  for (int i = 1; i <= 3; ++i) out.h[i - 1] = mat_pow(g, -i) * h * mat_pow(g, i);
  out.witness = witness_same_modulus_triple(out.h[0], out.h[1], out.h[2]);
  std::vector<Freq> xs(out.witness.x.begin(), out.witness.x.end());
  out.verified = true;
  for (long n = out.witness.period; n <= 30; n += out.witness.period) {
    std::vector<Mat2Z> ms;
    for (const auto& hi : out.h) ms.push_back(mat_pow(hi, n));
    out.verified = out.verified && char_correlation(xs, Freq(0L, 0L), ms) == 1;
  }
  out.triple = decide_joint_powers({out.h[0], out.h[1], out.h[2]});
  out.pairs = {decide_joint_powers({out.h[0], out.h[1]}), decide_joint_powers({out.h[0], out.h[2]}),
               decide_joint_powers({out.h[1], out.h[2]})};
  return out;
}

std::string to_string(const std::vector<Letter>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (const Letter& l : word) {
    if (!s.empty()) s += " ";
    s += "g" + std::to_string(l.gen) + (l.exp < 0 ? "^-1" : "");
  }
  return s;
}

UnipotentSearch find_unipotent(const std::vector<Mat2Z>& generators, long max_length) {
  if (max_length < 1) throw Error(Errc::InvalidArgument, "word length bound must be >= 1");
  if (generators.empty()) throw Error(Errc::InvalidArgument, "need at least one generator");
  std::vector<Letter> letters;
  std::vector<Mat2Z> letter_mats;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    require_unimodular(generators[i]);
    letters.push_back({static_cast<int>(i), 1});
    letter_mats.push_back(generators[i]);
    letters.push_back({static_cast<int>(i), -1});
    letter_mats.push_back(generators[i].adjugate());
  }
  UnipotentSearch res;
  res.max_length = max_length;
  std::set<Mat2Z> seen{Mat2Z::identity()};
  struct Node {
    std::vector<Letter> word;
    Mat2Z value;
  };
  std::vector<Node> frontier{{{}, Mat2Z::identity()}};
  for (long len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (std::size_t k = 0; k < letters.size(); ++k) {
        const Letter& l = letters[k];
        if (!node.word.empty() && node.word.back().gen == l.gen && node.word.back().exp == -l.exp) continue;
        Mat2Z m = node.value * letter_mats[k];
        if (!seen.insert(m).second) continue;
        std::vector<Letter> w = node.word;
        w.push_back(l);
        if (abs(m.trace()) == 2 && !m.is_plus_minus_identity()) {
          res.found = true;
          res.word = std::move(w);
          res.value = m;
          res.explored = static_cast<long>(seen.size());
          return res;
        }
        next.push_back({std::move(w), std::move(m)});
      }
    }
    frontier = std::move(next);
  }
  res.explored = static_cast<long>(seen.size());
  return res;
}

bool KrengelCertificate::all_zero() const {
  return std::all_of(correlations.begin(), correlations.end(), [](const auto& c) { return c.second.is_zero(); });
}

KrengelCertificate krengel_orthogonal(const TrigPoly& f, const Mat2Z& t) {
  if (!f.coeff(Freq(0L, 0L)).is_zero())
    throw Error(Errc::ZeroFrequencyPresent, "f has a nonzero mean; its zero frequency correlates with itself under every h");
  const Mat2Z a = t.transpose();
  EigenData eig = eigen_data(a);
  const double log_lambda = std::log(std::fabs(eig.lambda.to_double()));
  std::set<long> transport;
  for (const auto& [x, cx] : f.terms()) {
    auto px = eig.p_plus.apply(x);
    int comp = px[0].is_zero() ? 1 : 0;
    for (const auto& [y, cy] : f.terms()) {
      // tT^k x = y forces lambda^k P+x = P+y; the ratio fixes k up to rounding.
      auto py = eig.p_plus.apply(y);
      QuadVal rho = py[comp] / px[comp];
      if (rho.is_zero()) continue;
      double k_est = std::log(std::fabs(rho.to_double())) / log_lambda;
      long k0 = std::lround(k_est);
      for (long k = k0 - 1; k <= k0 + 1; ++k)
        if (k != 0 && mat_pow(a, k).apply(x) == y) transport.insert(k);
    }
  }
  KrengelCertificate cert;
  cert.transport_set.assign(transport.begin(), transport.end());
  long max_abs = 0;
  for (long k : transport) max_abs = std::max(max_abs, std::labs(k));
  cert.modulus = max_abs + 1;
  // Correlation of f o T^m against f: trig_correlation with conj(f)(xi) = sum conj(c_y) chi_{-y}.
  TrigPoly fbar;
  for (const auto& [y, cy] : f.terms()) fbar.add(-y, cy.conj());
  for (long m = -50; m <= 50; ++m) {
    if (m == 0 || m % cert.modulus != 0) continue;
    cert.correlations.emplace_back(m, trig_correlation({f, fbar}, {mat_pow(t, m)}));
  }
  return cert;
}

}  // namespace toral
