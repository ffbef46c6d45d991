#include "toral/lattice_kernel.hpp"

namespace toral::kernel {

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa best_isa() {
  static const Isa best = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return best;
}

std::uint64_t count_rows(Isa isa, const Term* terms, int nterms, std::int32_t Q, std::int32_t u_begin,
                         std::int32_t u_end) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return count_rows_avx2(terms, nterms, Q, u_begin, u_end);
  return count_rows_scalar(terms, nterms, Q, u_begin, u_end);
}

}  // namespace toral::kernel
