#include "toral/verify.hpp"

#include "toral/exact_algebra.hpp"

namespace toral {

bool verify_frequency_witness(const std::vector<Family>& seqs, const Verdict& v, long n_max) {
  if (!v.witness || v.witness->size() != seqs.size() + 1) return false;
  std::vector<Freq> w = v.frequencies();
  Freq y = w.back();
  w.pop_back();
  bool nonzero = false;
  for (const Freq& x : w) nonzero = nonzero || !x.is_zero();
  if (!nonzero && y.is_zero()) return false;
  const long period = v.period();
  for (long n = period; n <= n_max; n += period) {
    std::vector<Mat2Z> ms;
    for (const Family& f : seqs) ms.push_back(evaluate(f, Int(n)));
    if (char_correlation(w, y, ms) != 1) return false;
  }
  return true;
}

bool verify_relative_witness(const std::vector<Mat2Z>& us, const std::vector<IntPoly>& as, const Verdict& v,
                             long n_max) {
  if (!v.witness || v.witness->size() != 2 || (*v.witness)[0].size() != us.size() || (*v.witness)[1].size() != 2)
    return false;
  const auto& alpha = (*v.witness)[0];
  bool nonzero = false;
  for (const Int& a : alpha) nonzero = nonzero || sgn(a) != 0;
  if (!nonzero) return false;
  std::vector<Vec2> vs;
  for (const Mat2Z& u : us) vs.push_back(fixed_vector(u.transpose()));
  for (long n = 1; n <= n_max; ++n) {
    Vec2 acc((*v.witness)[1][0], (*v.witness)[1][1]);
    for (std::size_t i = 0; i < us.size(); ++i) acc += Int(alpha[i] * as[i](Int(n))) * vs[i];
    if (!acc.is_zero()) return false;
  }
  return true;
}

StabilizationReport scan_sequences(const std::vector<Family>& seqs, long box, long horizon) {
  return character_scan(
      [&](long n) {
        std::vector<Mat2Z> ms;
        for (const Family& f : seqs) ms.push_back(evaluate(f, Int(n)));
        return ms;
      },
      box, horizon);
}

}  // namespace toral
