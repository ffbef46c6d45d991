#include <vector>

#include "toral/lattice_kernel.hpp"

namespace toral::kernel {

std::uint64_t count_rows_scalar(const Term* terms, int nterms, std::int32_t Q, std::int32_t u_begin,
                                std::int32_t u_end) {
  std::uint64_t count = 0;
  std::vector<std::int32_t> x(static_cast<std::size_t>(nterms)), y(static_cast<std::size_t>(nterms));
  for (std::int32_t u = u_begin; u < u_end; ++u) {
    for (int t = 0; t < nterms; ++t) {
      x[t] = static_cast<std::int32_t>((static_cast<std::int64_t>(terms[t].a) * u) % Q);
      y[t] = static_cast<std::int32_t>((static_cast<std::int64_t>(terms[t].c) * u) % Q);
    }
    for (std::int32_t v = 0; v < Q; ++v) {
      bool in = true;
      for (int t = 0; t < nterms && in; ++t) {
        const Term& tm = terms[t];
        in = tm.member[tm.cell_of[x[t]] * tm.q + tm.cell_of[y[t]]] != 0;
      }
      count += in;
      for (int t = 0; t < nterms; ++t) {
        x[t] += terms[t].b;
        if (x[t] >= Q) x[t] -= Q;
        y[t] += terms[t].d;
        if (y[t] >= Q) y[t] -= Q;
      }
    }
  }
  return count;
}

}  // namespace toral::kernel
