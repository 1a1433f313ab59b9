#pragma once

#include <Eigen/Dense>

#include "isoflow/types.hpp"

namespace isoflow {

struct FieldEval;

/// Real-line Camassa-Holm kernel matrices at the peakon positions:
///   K[i][j] = e^{-|x_i-x_j|/2}   (K = -G0, decaying kernel G0 = -e^{-|x-y|/2})
///   J[i][j] = sgn(x_i-x_j) e^{-|x_i-x_j|/2} = 2 <G0,x(x,x_j)>(x = x_i)
struct PeakonKernelSet {
  Eigen::VectorXd masses;
  Eigen::MatrixXd K;
  Eigen::MatrixXd J;
};

PeakonKernelSet build_peakon_kernels(const PeakonString& s);

/// k-th peakon flow: xdot_j = (K(MK)^k)_jj, mdot_j = m_j (J(MK)^k)_jj.
/// For k=1 this is the classical peakon system
///   xdot_j = sum_i m_i e^{-|x_j-x_i|},  mdot_j = m_j sum_i sgn(x_j-x_i) m_i e^{-|x_j-x_i|}.
FieldEval peakon_field(const PeakonString& s, int k);

struct PeakonDiagnostics {
  double total_mass;      // sum_j m_j, conserved by antisymmetry of J
  double h_ch;            // 1/2 sum_{i,j} m_i m_j e^{-|x_i-x_j|}, conserved for k=1
  double hamiltonian_k;   // H^(k) = tr(M(KM)^k K)/(k+1)
};

PeakonDiagnostics peakon_conserved(const PeakonString& s, int k);

}  // namespace isoflow
