#pragma once

// Independent reference implementations used only by tests.

#include <map>
#include <vector>

#include "lbc/alternating.hpp"
#include "lbc/tensor.hpp"

namespace lbc::oracle {

/// Schouten bracket via odd coordinates theta_i:
///   [P,Q] = sum_i (P d<-/dtheta_i)(dQ/dx_i) - (-1)^{(p-1)(q-1)} (Q d<-/dtheta_i)(dP/dx_i)
/// with right derivatives d<-/dtheta_s (theta_{i1}..theta_{ik}) = (-1)^{k-s} (...).
Multivector schouten_odd(const Multivector& p, const Multivector& q);

/// Nijenhuis torsion from the component formula
///   T^i_{jk} = N^l_j d_l N^i_k - N^l_k d_l N^i_j - N^i_l (d_j N^l_k - d_k N^l_j).
VectorValued2Form torsion_components(const Tensor11& n);

/// Exterior derivative from the alternating-sum formula on coordinate fields.
Form ext_d_alternating_sum(const Form& w);

}  // namespace lbc::oracle
