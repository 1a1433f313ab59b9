#pragma once

#include <Eigen/Dense>

#include "isoflow/types.hpp"

namespace isoflow {

/// Bare Green's function of D_x^2 on [0,1] under Robin ends, factored as
/// G0(x,y) = -c(min(x,y)) * chat(max(x,y)) / w with linear c, chat and a
/// constant Wronskian normalizer w:
///   finite h:  c(x) = 1 + h x          h = inf:  c(x) = x
///   finite H:  chat(x) = 1 + H(1 - x)  H = inf:  chat(x) = 1 - x
///   w = h + H + hH with the matching infinite-limit branches.
struct BareGreen {
  double c0, c1;    // c(x)    = c0 + c1 x
  double ch0, ch1;  // chat(x) = ch0 + ch1 x
  double w;         // > 0

  static BareGreen make(const BoundaryConditions& bc);

  double c(double x) const { return c0 + c1 * x; }
  double chat(double x) const { return ch0 + ch1 * x; }

  /// G0(x,y); throws std::domain_error outside [0,1]^2.
  double operator()(double x, double y) const;

  /// Averaged x-derivative <G0,x(x,y)>: the plain one-sided derivative for
  /// x != y, the arithmetic mean of the two one-sided derivatives at x == y.
  double dx_avg(double x, double y) const;

  double diag(double x) const { return -c(x) * chat(x) / w; }
  /// d/dx G0(x,x), smooth along the diagonal.
  double diag_deriv(double x) const { return -(c1 * chat(x) + c(x) * ch1) / w; }
};

/// Matrices of the string kernel restricted to the mass points:
///   K[i][j] = -G0(x_i,x_j) > 0,   J[i][j] = 2 <G0,x(x,x_j)>(x = x_i),
/// and the mass diagonal. Also carries evaluator vectors off the atoms.
struct KernelSet {
  BareGreen g0;
  Eigen::VectorXd masses;  // diagonal of M
  Eigen::MatrixXd K;
  Eigen::MatrixXd J;
  std::vector<double> x;

  int n() const { return static_cast<int>(x.size()); }
  Eigen::MatrixXd MK() const { return masses.asDiagonal() * K; }

  /// g(x) = (G0(x,x_1), ..., G0(x,x_n)).
  Eigen::VectorXd gvec(double x) const;
  /// d(x) = (<G0,x(x,x_1)>, ..., <G0,x(x,x_n)>), averaged at atoms.
  Eigen::VectorXd dvec(double x) const;
};

KernelSet build_kernels(const DiscreteString& s);

/// Iterated kernel diagonal G_k(x,x) = g(x)^T M (G M)^{k-1} g(x), G = [G0(x_i,x_j)].
/// Sign satisfies (-1)^{k+1} G_k(x,x) > 0.
double iterated_diag(const DiscreteString& s, int k, double x);

/// eps-resolvent at the mass points: G_eps = -(I + eps K M)^{-1} K, the exact
/// sum of the Neumann series G_eps = G0 + G1 eps + G2 eps^2 + ...
Eigen::MatrixXd epsilon_resolvent(const DiscreteString& s, double eps);

/// Diagonal fields b_0, b_{-1}, ..., b_{-k} of the rational flow at parameter
/// eps > 0. eps-derivatives of the resolvent are closed-form matrix products
/// (G_eps^{(r)}/r! = (G_eps M)^r G_eps), never finite differences.
class RationalBFields {
 public:
  RationalBFields(const DiscreteString& s, int k, double eps);

  /// b_{-j}(x) for 0 <= j <= k (j = 0 is the generating field b_0).
  double b(int j, double x) const;
  double b0(double x) const { return b(0, x); }
  /// <b_{0,x}>(x): averaged spatial derivative of b_0 (averaged at atoms).
  double b0_avg_deriv(double x) const;

  int order() const { return k_; }
  double eps() const { return eps_; }

 private:
  /// T_r(x,x) = ((G_eps M)^r G_eps)(x,x) and its averaged x-derivative.
  double iter_diag(int r, double x) const;
  double iter_diag_deriv(int r, double x) const;

  KernelSet ks_;
  int k_;
  double eps_;
  Eigen::MatrixXd resolvent_;  // G_eps at mass points
  Eigen::MatrixXd inv_;        // (I + eps K M)^{-1}
  Eigen::MatrixXd iter_;       // horizontally stacked (G_eps M)^r, r = 0..k-1
};

}  // namespace isoflow
