#include "toral/lattice_kernel.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace toral::kernel {

namespace {

constexpr int kMaxTerms = 16;

__attribute__((target("avx2"))) inline __m256i wrap_add(__m256i w, __m256i step, __m256i q, __m256i q_minus_1) {
  __m256i s = _mm256_add_epi32(w, step);
  __m256i over = _mm256_cmpgt_epi32(s, q_minus_1);
  return _mm256_sub_epi32(s, _mm256_and_si256(over, q));
}

}  // namespace

__attribute__((target("avx2"))) std::uint64_t count_rows_avx2(const Term* terms, int nterms, std::int32_t Q,
                                                               std::int32_t u_begin, std::int32_t u_end) {
  if (Q < 8 || nterms > kMaxTerms) return count_rows_scalar(terms, nterms, Q, u_begin, u_end);
  const std::int32_t vec_end = Q - Q % 8;
  const __m256i q = _mm256_set1_epi32(Q);
  const __m256i q_minus_1 = _mm256_set1_epi32(Q - 1);
  // Lane l of xs[t], ys[t] holds the coordinates for v = v0 + l.
  __m256i xs[kMaxTerms], ys[kMaxTerms], step_x[kMaxTerms], step_y[kMaxTerms];
  for (int t = 0; t < nterms; ++t) {
    step_x[t] = _mm256_set1_epi32(static_cast<std::int32_t>((8LL * terms[t].b) % Q));
    step_y[t] = _mm256_set1_epi32(static_cast<std::int32_t>((8LL * terms[t].d) % Q));
  }
  std::uint64_t count = 0;
  std::int32_t lx[8], ly[8];
  for (std::int32_t u = u_begin; u < u_end; ++u) {
    for (int t = 0; t < nterms; ++t) {
      const Term& tm = terms[t];
      for (int l = 0; l < 8; ++l) {
        lx[l] = static_cast<std::int32_t>((static_cast<std::int64_t>(tm.a) * u + static_cast<std::int64_t>(tm.b) * l) % Q);
        ly[l] = static_cast<std::int32_t>((static_cast<std::int64_t>(tm.c) * u + static_cast<std::int64_t>(tm.d) * l) % Q);
      }
      xs[t] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lx));
      ys[t] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ly));
    }
    for (std::int32_t v0 = 0; v0 < vec_end; v0 += 8) {
      __m256i all = _mm256_set1_epi32(-1);
      for (int t = 0; t < nterms; ++t) {
        const Term& tm = terms[t];
        __m256i cx = _mm256_i32gather_epi32(tm.cell_of, xs[t], 4);
        __m256i cy = _mm256_i32gather_epi32(tm.cell_of, ys[t], 4);
        __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(cx, _mm256_set1_epi32(tm.q)), cy);
        all = _mm256_and_si256(all, _mm256_i32gather_epi32(tm.member, idx, 4));
        xs[t] = wrap_add(xs[t], step_x[t], q, q_minus_1);
        ys[t] = wrap_add(ys[t], step_y[t], q, q_minus_1);
      }
      count += static_cast<std::uint64_t>(__builtin_popcount(_mm256_movemask_ps(_mm256_castsi256_ps(all))));
    }
    // Tail: v in [vec_end, Q).
    for (std::int32_t v = vec_end; v < Q; ++v) {
      bool in = true;
      for (int t = 0; t < nterms && in; ++t) {
        const Term& tm = terms[t];
        auto cx = static_cast<std::int32_t>((static_cast<std::int64_t>(tm.a) * u + static_cast<std::int64_t>(tm.b) * v) % Q);
        auto cy = static_cast<std::int32_t>((static_cast<std::int64_t>(tm.c) * u + static_cast<std::int64_t>(tm.d) * v) % Q);
        in = tm.member[tm.cell_of[cx] * tm.q + tm.cell_of[cy]] != 0;
      }
      count += in;
    }
  }
  return count;
}

}  // namespace toral::kernel

#else

namespace toral::kernel {

std::uint64_t count_rows_avx2(const Term* terms, int nterms, std::int32_t Q, std::int32_t u_begin,
                              std::int32_t u_end) {
  return count_rows_scalar(terms, nterms, Q, u_begin, u_end);
}

}  // namespace toral::kernel

#endif
