#pragma once

#include <vector>

#include "toral/family.hpp"
#include "toral/trig.hpp"
#include "toral/verdict.hpp"

namespace toral {

/// Checks a frequency witness (x_1..x_k, y) of a negative verdict on the
/// sequences F_1..F_k with char_correlation at every n in [1, n_max] with
/// n = 0 mod period. False when the verdict carries no witness.
bool verify_frequency_witness(const std::vector<Family>& seqs, const Verdict& v, long n_max);

/// Checks a relative witness [[alpha..],[z]]: sum alpha_i a_i(n) v_i + z = 0
/// for n in [1, n_max], v_i the fixed vector of tU_i.
bool verify_relative_witness(const std::vector<Mat2Z>& us, const std::vector<IntPoly>& as, const Verdict& v,
                             long n_max);

/// Character scan of the sequences (see character_scan).
StabilizationReport scan_sequences(const std::vector<Family>& seqs, long box, long horizon);

}  // namespace toral
