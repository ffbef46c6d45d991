#pragma once

#include <cstdint>
#include <string_view>

namespace toral::kernel {

/// One constraint M p in G for lattice points p = (u, v)/Q.
/// Matrix entries are reduced to [0, Q); cell_of[w] = floor(w q / Q) for
/// w in [0, Q); member[cx*q + cy] is -1 for cells of G and 0 otherwise.
struct Term {
  std::int32_t a, b, c, d;
  std::int32_t q;
  const std::int32_t* cell_of;
  const std::int32_t* member;
};

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// Widest instruction set supported by the running CPU.
Isa best_isa();

/// Largest lattice resolution the kernels accept.
inline constexpr std::int32_t kMaxQ = 1 << 24;

/// Number of (u, v) with u in [u_begin, u_end), v in [0, Q) satisfying every term.
std::uint64_t count_rows(Isa isa, const Term* terms, int nterms, std::int32_t Q, std::int32_t u_begin,
                         std::int32_t u_end);

std::uint64_t count_rows_scalar(const Term* terms, int nterms, std::int32_t Q, std::int32_t u_begin,
                                std::int32_t u_end);
std::uint64_t count_rows_avx2(const Term* terms, int nterms, std::int32_t Q, std::int32_t u_begin,
                              std::int32_t u_end);

}  // namespace toral::kernel
