#pragma once

#include <vector>

#include "isoflow/spectral.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

/// Moment sequence c_j = sum_i mu_i z_i^j, j = jmin..jmax (jmin = -1 is finite
/// because the measure is supported away from 0), and Hankel minors Delta_k^l:
/// determinant of the k x k matrix with (i,j) entry c_{i+j+l-2}, Delta_0^l = 1.
class HankelTable {
 public:
  HankelTable(const SpectralData& sd, int jmax);

  double moment(int j) const;          // j >= -1
  double minor(int k, int l) const;    // Delta_k^l
  int jmax() const { return jmax_; }

 private:
  std::vector<double> c_;  // c_[-1], c_[0], ...
  std::vector<double> z_, mu_;
  int jmax_;
};

std::vector<double> moments(const SpectralData& sd, int jmax);

/// Reconstructs the string from spectral data via the Hankel-determinant
/// inversion of the Stieltjes continued fraction. Supported case: finite h
/// with H = 0, plus the h = inf limit (the 1/h term of the l_0 formula
/// dropped). l_n is computed both from -W(0) = 1 + 1/h = l_n + c_{-1} and from
/// the total length; a mismatch beyond 1e-8 is reported in the diagnostics.
struct InversionResult {
  DiscreteString string;
  double ln_mismatch;  // |l_n(moment route) - l_n(length route)|
};

InversionResult invert(const SpectralData& sd, const BoundaryConditions& bc);

/// Stieltjes coefficients [l_n; m_n, l_{n-1}, m_{n-1}, ..., m_1, l_0 + 1/h]
/// of -W(-z) = l_n + 1/(z m_n + 1/(l_{n-1} + ...)).
std::vector<double> continued_fraction(const SpectralData& sd, const BoundaryConditions& bc);

/// Evaluates l_n + 1/(z m_n + 1/(...)) from a coefficient list.
double continued_fraction_value(const std::vector<double>& coeffs, double z);

}  // namespace isoflow
