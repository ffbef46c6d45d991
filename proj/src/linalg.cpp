#include "toral/linalg.hpp"

#include <algorithm>
#include <tuple>

namespace toral {

std::vector<std::vector<Rat>> nullspace(RatMatrix a, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && sgn(a[sel][col]) == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    Rat inv = 1 / a[row][col];
    for (Rat& e : a[row]) e *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      Rat f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

void normalize_sign(std::vector<Int>& v, SignRule rule) {
  auto nz = [](const Int& e) { return sgn(e) != 0; };
  int s = 0;
  if (rule == SignRule::LastNonzeroNegative) {
    auto it = std::find_if(v.rbegin(), v.rend(), nz);
    if (it != v.rend() && sgn(*it) > 0) s = -1;
  } else {
    auto it = std::find_if(v.begin(), v.end(), nz);
    if (it != v.end() && sgn(*it) < 0) s = -1;
  }
  if (s < 0)
    for (Int& e : v) e = -e;
}

std::optional<std::vector<Int>> choose_kernel_vector(const RatMatrix& a, std::size_t cols, SignRule rule) {
  auto basis = nullspace(a, cols);
  std::optional<std::vector<Int>> best;
  auto key = [](const std::vector<Int>& v) {
    Int l1 = 0;
    for (const Int& e : v) l1 += abs(e);
    std::size_t first = 0;
    while (first < v.size() && sgn(v[first]) == 0) ++first;
    return std::make_tuple(l1, first, v);
  };
  for (const auto& b : basis) {
    std::vector<Int> v = integerize(b);
    normalize_sign(v, rule);
    if (!best || key(v) < key(*best)) best = std::move(v);
  }
  return best;
}

}  // namespace toral
