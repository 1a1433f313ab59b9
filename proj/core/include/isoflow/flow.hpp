#pragma once

#include <Eigen/Dense>

#include "isoflow/greens.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

struct FieldEval {
  Eigen::VectorXd xdot;
  Eigen::VectorXd mdot;
};

/// Isospectral vector field of the discrete string.
/// Truncated flow (epsilon = 0):
///   xdot_j = (-1)^{k+1} G_k(x_j,x_j) = (K(MK)^k)_jj
///   mdot_j = (-1)^k m_j <G_{k,x}(x,x)>(x_j)
/// Rational flow (epsilon > 0): xdot_j = -b_0(x_j), mdot_j = m_j <b_{0,x}>(x_j).
FieldEval vector_field(const DiscreteString& s, const FlowSpec& spec);

/// Same truncated field through the matrix forms (K M K ... M K)_jj and
/// (M J M K ... M K)_jj; kept as the tested optimization of vector_field.
FieldEval vector_field_matrix(const DiscreteString& s, int k);

/// H^(k) = (-1)^{k+1}/(k+1) sum_i m_i G_k(x_i,x_i) >= 0. The canonical field of
/// H^(k) under {x_i, m_j} = delta_ij is vector_field.
double hamiltonian(const DiscreteString& s, int k);

/// Spectral invariants I_0, I_1, ..., I_jmax:
///   I_0 = sum_i m_i G0(x_i,x_i)
///   I_j = sum over chains a_1<...<a_j of
///         m_{a_j}(x_{a_j}-x_{a_{j-1}})...m_{a_2}(x_{a_2}-x_{a_1})m_{a_1} G0(x_{a_1},x_{a_j})
/// (the j=1 chain sum coincides with I_0). Satisfies H^(1) = I_0^2/2 + I_2.
std::vector<double> invariants(const DiscreteString& s, int jmax);

}  // namespace isoflow
