#pragma once

#include <array>
#include <vector>

#include "toral/family.hpp"
#include "toral/mat2.hpp"
#include "toral/poly.hpp"
#include "toral/verdict.hpp"

namespace toral {

// Witness conventions. For a tuple of sequences T_{1,n},...,T_{k,n} a
// frequency witness (x_1,...,x_k,y) satisfies
//     tT_{1,n} x_1 + ... + tT_{k,n} x_k + y = 0
// for every n >= 1 with n = 0 mod period(). Witnesses are primitive and their
// last nonzero coordinate is negative.

/// Mixing iff T is hyperbolic. Throws Error(NonUnimodular).
Verdict decide_element_mixing(const Mat2Z& t);

/// Kernel test on the coefficients of tF(n) x + y = 0.
Verdict decide_polyfamily_mixing(const PolyMatFamily& f);

/// Joint mixing of T_1^n,...,T_k^n: all hyperbolic, T_i != +-T_j, at most two
/// matrices per |trace|.
Verdict decide_joint_powers(const std::vector<Mat2Z>& ts);

/// x_1, x_2, x_3 with tT_1^n x_1 + tT_2^n x_2 + tT_3^n x_3 = 0.
struct TripleWitness {
  std::array<Vec2, 3> x;
  /// 1, or 2 when the traces have mixed signs.
  long period{1};
};

/// Throws TracesDiffer, NotPairwiseDistinct or NotHyperbolic.
TripleWitness witness_same_modulus_triple(const Mat2Z& t1, const Mat2Z& t2, const Mat2Z& t3);
/// Same, for a list; two inputs throw SharedModulusPairOnly.
TripleWitness witness_same_modulus_triple(const std::vector<Mat2Z>& ts);

/// Kernel test on the coefficients of sum_i tF_i(n) x_i + y = 0.
Verdict decide_joint_polyfamilies(const std::vector<PolyMatFamily>& fs);

/// Joint mixing of commuting T_i^n: every T_i and T_i^-1 T_j hyperbolic.
/// Throws Error(NotCommuting).
Verdict decide_commuting_joint(const std::vector<Mat2Z>& ts);

/// Sufficient condition for joint mixing of T_i^{a_i(n)}: every difference
/// log|l_i| a_i(n) - log|l_j| a_j(n), with a_0 = 0, diverges.
/// Returns SufficientConditionHolds or Unknown. Throws NotHyperbolic.
Verdict check_rokhlin_sufficient(const std::vector<Mat2Z>& ts, const std::vector<IntPoly>& as);

/// Relative joint mixing of U_i^{a_i(n)}. The witness is [[alpha_1..alpha_k],
/// [z_1,z_2]] with sum alpha_i a_i(n) v_i + z = 0 identically, v_i the
/// fixed vector of tU_i, first nonzero alpha positive. Throws NotUnipotent.
Verdict decide_relative_joint_unipotent(const std::vector<Mat2Z>& us, const std::vector<IntPoly>& as);

/// Checks a frequency witness at one n against explicit matrices:
/// sum tM_i x_i + y == 0.
bool witness_holds(const std::vector<Mat2Z>& ms, const std::vector<Vec2>& witness);

}  // namespace toral
