#pragma once

#include <vector>

#include "isoflow/types.hpp"

namespace isoflow {

/// Coefficient arrays (ascending powers of z) of the transfer polynomials
/// p_j, q_j, j = 0..n; phi restricted to (x_j, x_{j+1}) is p_j(x-x_j)+q_j.
/// Kept for degree/diagnostic checks; numeric evaluation uses transfer_eval.
struct TransferPolynomials {
  std::vector<std::vector<double>> p;
  std::vector<std::vector<double>> q;
};

TransferPolynomials transfer(const DiscreteString& s);

/// phi(1;z), phi_x(1;z) and their z-derivatives from running the recursion
/// at a numeric z (stable Horner-style path used for root finding).
struct TransferValue {
  double phi1, phix1;
  double dphi1, dphix1;
};

TransferValue transfer_eval(const DiscreteString& s, double z);

/// Boundary pair (N, D): spectrum = zeros of D, Weyl function W = N/D.
///   0 < H < inf: D = phi_x(1)+H phi(1), N = phi_x(1)-H phi(1)
///   H = 0:       D = phi_x(1),          N = -phi(1)
///   H = inf:     D = phi(1),            N = phi_x(1)
struct NDValue {
  double N, D;
  double dN, dD;
};

NDValue nd_eval(const DiscreteString& s, double z);

/// Spectral data of the string: simple positive eigenvalues z_1<...<z_n,
/// positive Weyl residues mu_j = N(z_j)/D'(z_j), gamma = l_n.
struct SpectralData {
  std::vector<double> z;
  std::vector<double> mu;
  double gamma = 0.0;

  int n() const { return static_cast<int>(z.size()); }
};

SpectralData spectrum(const DiscreteString& s);

/// -W(-z) = gamma + sum_j mu_j/(z+z_j), evaluated from the data.
double stieltjes_value(const SpectralData& sd, double z);

/// Closed-form evolution under the k-th truncated flow: eigenvalues fixed,
/// mu_j(t) = mu_j(0) exp(t/z_j^k). gamma is re-derived during inversion.
SpectralData evolve_spectral(const SpectralData& sd, int k, double t);

}  // namespace isoflow
