#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "toral/decider.hpp"
#include "toral/family.hpp"
#include "toral/grid.hpp"
#include "toral/mat2.hpp"
#include "toral/trig.hpp"
#include "toral/verdict.hpp"

namespace toral {

// ---------------------------------------------------------------------------
// Triple recurrence scans: mu(D cap T^n D cap S^n D).

enum class PairKind {
  EqualHyperbolic,
  NegatedHyperbolic,
  DistinctHyperbolic,
  UnipotentHyperbolic,
  EqualUnipotent,
  NoncommutingUnipotent,
  CommutingUnipotent,
  Other,
};
std::string_view to_string(PairKind k);

enum class LimitShape { Constant, TwoPoint, Undetermined };
std::string_view to_string(LimitShape s);

struct ScanPoint {
  long n{0};
  double estimate{0};
  double error_bound{0};
  /// max(|T^n|, |S^n|) * q <= Q/16.
  bool resolved{false};
};

/// Limit predicted by theory: one value, or two values for even and odd n.
struct TheoreticalLimit {
  std::vector<double> values;
  /// Uncertainty of the value itself (series truncation); 0 when exact.
  double tolerance{0};
  std::string formula;
};

struct ScanReport {
  Mat2Z t, s;
  GridSet d;
  long Q{0};
  std::vector<ScanPoint> points;
  PairKind kind{PairKind::Other};
  Rat mu, mu_squared, mu_cubed, mu_sym_times_mu;  ///< mu(D), mu^2, mu^3, mu(D cap -D) mu(D)
  std::optional<TheoreticalLimit> limit;
  /// Longest suffix of points whose error intervals share a common point.
  std::size_t plateau_begin{0};
  LimitShape shape{LimitShape::Undetermined};

  /// Theoretical value expected at n (parity-aware), if any.
  std::optional<double> expected_at(long n) const;
  /// Every plateau point lies within error_bound + tolerance of the limit.
  bool plateau_matches_limit() const;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Scans n in [n_min, n_max] with lattice resolution Q.
ScanReport conjecture_scan(const Mat2Z& t, const Mat2Z& s, const GridSet& d, long n_min, long n_max, long Q);

/// Cesaro averages (1/N) sum_{n<=N} |mu(A cap T_n^-1 B) - mu(A) mu(B)| for N = 1..n_max.
struct CesaroPoint {
  long n{0};
  double average{0};
  double error_bound{0};
};
std::vector<CesaroPoint> cesaro_scan(const Family& f, const GridSet& a, const GridSet& b, long n_max, long Q);

// ---------------------------------------------------------------------------
// Norm-ratio report for T_n^{a_i(n)}.

enum class Trend { TendsToZero, Bounded, Unbounded };
std::string_view to_string(Trend t);

struct RokhlinRow {
  long n{0};
  Int gamma;
  /// Interval for log(|T_n| / lambda_n^gamma_n).
  double log_ratio_lo{0}, log_ratio_hi{0};
};

struct RokhlinReport {
  std::vector<RokhlinRow> rows;
  Trend trend{Trend::Bounded};
  /// Always true: the ratio condition is sufficient, not necessary.
  bool sufficient_only{true};
  /// Decider verdict for the family powers when every a_i is a positive constant.
  std::optional<Verdict> cross_reference;
  nlohmann::json to_json() const;
};

/// Throws NonHyperbolicSample when some T_n in the range is not hyperbolic.
RokhlinReport rokhlin_report(const PolyMatFamily& f, const std::vector<IntPoly>& as, long n_from, long n_to);

// ---------------------------------------------------------------------------
// Conjugate triples that are pairwise but not triply jointly mixing.

struct Order2Counterexample {
  std::array<Mat2Z, 3> h;
  TripleWitness witness;
  /// Witness checked with char_correlation for n = 1..30 (n = 0 mod period).
  bool verified{false};
  Verdict triple;
  std::array<Verdict, 3> pairs;  ///< (h1,h2), (h1,h3), (h2,h3)
};

/// h_i = g^-i h g^i for i = 1,2,3. Throws NotHyperbolic or CommutingInputs
/// (gh = hg, or g^2 h = h g^2).
Order2Counterexample order2_counterexample(const Mat2Z& g, const Mat2Z& h);

// ---------------------------------------------------------------------------
// Parabolic elements in finitely generated subgroups.

/// Generator index and exponent +-1.
struct Letter {
  int gen{0};
  int exp{1};
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct UnipotentSearch {
  bool found{false};
  std::vector<Letter> word;
  Mat2Z value;
  long max_length{0};
  /// Distinct matrices visited.
  long explored{0};
};
std::string to_string(const std::vector<Letter>& word);

/// Breadth-first search over reduced words (letters ordered g0, g0^-1, g1, ...),
/// skipping words whose matrix was already seen. Returns the first word whose
/// matrix has |trace| = 2 and is not +-I. `found == false` means none up to L.
UnipotentSearch find_unipotent(const std::vector<Mat2Z>& generators, long max_length);

// ---------------------------------------------------------------------------
// Orthogonality along a cyclic hyperbolic subgroup.

struct KrengelCertificate {
  long modulus{1};
  /// Nonzero k with tT^k x = y for some support frequencies x, y.
  std::vector<long> transport_set;
  /// (m, correlation of f o T^m against f) for multiples m of the modulus, 0 < |m| <= 50.
  std::vector<std::pair<long, ComplexQ>> correlations;
  bool all_zero() const;
};

/// Throws ZeroFrequencyPresent when f^(0) != 0, NotHyperbolic for T.
KrengelCertificate krengel_orthogonal(const TrigPoly& f, const Mat2Z& t);

}  // namespace toral
