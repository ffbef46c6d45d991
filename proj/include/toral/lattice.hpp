#pragma once

#include <vector>

#include "toral/bigint.hpp"
#include "toral/grid.hpp"
#include "toral/lattice_kernel.hpp"
#include "toral/mat2.hpp"

namespace toral {

struct LatticeEstimate {
  /// Lattice points counted; estimate = count / Q^2.
  Int count;
  long Q{0};
  double estimate{0};
  double error_bound{0};
};

/// Estimates the measure of {p in G_0 : M_i p in G_i for all i} by counting
/// p in (1/Q)Z^2/Z^2. Cells are half-open, so with all M_i = I the count is
/// exact.
///
/// Error bound. The lattice cell [p, p + 1/Q)^2 contributes an error only if
/// the boundary of the counted set crosses it, and that boundary lies in the
/// union of N_i(boundary G_i) with N_0 = I and N_i = M_i^-1. A cell edge of
/// length 1/q_i in direction e maps to a segment with direction N_i e that
/// meets at most Q |N_i e|_1 / q_i + 3 lattice cells. Summing over edges:
///
///   bound = sum_i [ (H_i (|n11|+|n21|) + V_i (|n12|+|n22|)) / (Q q_i)
///                   + 3 (H_i + V_i) / Q^2 ]
///
/// with H_i, V_i the horizontal and vertical boundary edge counts of G_i.
/// Doubling Q shrinks the bound by a factor between 2 and 4.
///
/// Requires Q to be a multiple of every q_i (ResolutionMismatch). Rows of the
/// lattice are split across `threads` workers (0 = hardware concurrency); the
/// integer count does not depend on the split.
LatticeEstimate lattice_correlation(const std::vector<GridSet>& gs, const std::vector<Mat2Z>& ms, long Q,
                                    unsigned threads = 0, kernel::Isa isa = kernel::best_isa());

/// The bound above on its own.
double lattice_error_bound(const std::vector<GridSet>& gs, const std::vector<Mat2Z>& ms, long Q);

}  // namespace toral
