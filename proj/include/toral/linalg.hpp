#pragma once

#include <optional>
#include <vector>

#include "toral/bigint.hpp"

namespace toral {

using RatMatrix = std::vector<std::vector<Rat>>;

/// Basis of {v : A v = 0}, one vector per free column of the reduced row
/// echelon form, ordered by free column. Rows of A must have `cols` entries.
std::vector<std::vector<Rat>> nullspace(RatMatrix a, std::size_t cols);

/// Sign rule applied to a primitive kernel vector.
enum class SignRule {
  LastNonzeroNegative,  ///< flattened (x_1,...,x_k,y) witnesses
  FirstNonzeroPositive, ///< coefficient witnesses
};

/// Scales `v` by +-1 so that it satisfies `rule`.
void normalize_sign(std::vector<Int>& v, SignRule rule);

/// Picks one primitive integer kernel vector, or nullopt when the kernel is
/// trivial. Basis vectors are integerized and sign-normalized; the choice is
/// the one with the smallest l1 norm, then the earliest first nonzero
/// coordinate, then the lexicographically smallest.
std::optional<std::vector<Int>> choose_kernel_vector(const RatMatrix& a, std::size_t cols, SignRule rule);

}  // namespace toral
