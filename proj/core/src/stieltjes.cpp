#include "isoflow/stieltjes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace isoflow {

HankelTable::HankelTable(const SpectralData& sd, int jmax) : jmax_(jmax) {
  if (jmax < -1) throw std::invalid_argument("HankelTable: jmax must be >= -1");
  for (int j = 0; j < sd.n(); ++j) {
    if (!(sd.z[j] > 0.0) || !(sd.mu[j] > 0.0))
      throw std::invalid_argument("HankelTable: spectral data must be positive");
  }
  c_.resize(jmax + 2, 0.0);
  for (int j = -1; j <= jmax; ++j) {
    double acc = 0.0;
    for (int i = 0; i < sd.n(); ++i) acc += sd.mu[i] * std::pow(sd.z[i], j);
    c_[j + 1] = acc;
  }
  z_ = sd.z;
  mu_ = sd.mu;
}

double HankelTable::moment(int j) const {
  if (j < -1 || j > jmax_) throw std::out_of_range("HankelTable: moment index out of range");
  return c_[j + 1];
}

double HankelTable::minor(int k, int l) const {
  if (k == 0) return 1.0;
  if (k < 0) throw std::invalid_argument("HankelTable: minor order must be >= 0");
  if (l + 2 * k - 2 > jmax_ || l < -1)
    throw std::out_of_range("HankelTable: insufficient moments for Delta_" +
                            std::to_string(k) + "^" + std::to_string(l));
  const int n = static_cast<int>(z_.size());
  if (k > n) return 0.0;  // the measure has only n atoms
  // Heine expansion over k-subsets of the support: every term is a positive
  // product mu_{i1}..mu_{ik} (z_{i1}..z_{ik})^l prod_{a<b} (z_{ia}-z_{ib})^2,
  // so unlike an LU determinant there is no cancellation between terms.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int a = 0; a < k; ++a) {
      term *= mu_[idx[a]] * std::pow(z_[idx[a]], l);
      for (int b = a + 1; b < k; ++b) {
        const double d = z_[idx[a]] - z_[idx[b]];
        term *= d * d;
      }
    }
    total += term;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return total;
}

std::vector<double> moments(const SpectralData& sd, int jmax) {
  HankelTable t(sd, jmax);
  std::vector<double> out;
  for (int j = -1; j <= jmax; ++j) out.push_back(t.moment(j));
  return out;
}

namespace {

void check_supported_bc(const BoundaryConditions& bc) {
  if (!bc.H.is_zero())
    throw std::invalid_argument("inversion implemented for H=0 (finite h or h=inf)");
  if (!bc.h.is_infinite() && !(bc.h.value() > 0.0))
    throw std::invalid_argument("inversion requires h > 0 or h=inf");
}

double positive_or_throw(double v, const std::string& what) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << what << " is nonpositive (" << v << "): inconsistent data or conditioning loss";
    throw std::runtime_error(os.str());
  }
  return v;
}

}  // namespace

std::vector<double> continued_fraction(const SpectralData& sd, const BoundaryConditions& bc) {
  check_supported_bc(bc);
  const int n = sd.n();
  const HankelTable t(sd, 2 * n);
  std::vector<double> coeffs;
  if (sd.gamma < 0.0) throw std::invalid_argument("continued_fraction: gamma must be >= 0");
  coeffs.push_back(sd.gamma);
  // a_{2r+1} = (Delta_r^1)^2/(Delta_r^0 Delta_{r+1}^0) -> m_{n-r}
  // a_{2r}   = (Delta_r^0)^2/(Delta_r^1 Delta_{r-1}^1) -> l_{n-r} (r<n), l_0+1/h (r=n)
  for (int r = 0; r < n; ++r) {
    const double m = t.minor(r, 1) * t.minor(r, 1) /
                     (t.minor(r, 0) * t.minor(r + 1, 0));
    coeffs.push_back(positive_or_throw(m, "Stieltjes coefficient a_" + std::to_string(2 * r + 1)));
    const double l = t.minor(r + 1, 0) * t.minor(r + 1, 0) /
                     (t.minor(r + 1, 1) * t.minor(r, 1));
    coeffs.push_back(positive_or_throw(l, "Stieltjes coefficient a_" + std::to_string(2 * r + 2)));
  }
  return coeffs;
}

double continued_fraction_value(const std::vector<double>& coeffs, double z) {
  // coeffs = [gamma; a_1, a_2, ..., a_{2n}] with f = gamma + 1/(a_1 z + 1/(a_2 + ...)).
  double acc = coeffs.back();
  for (int i = static_cast<int>(coeffs.size()) - 2; i >= 1; --i) {
    const bool odd = (i % 2) == 1;  // a_i multiplies z when i is odd
    acc = coeffs[i] * (odd ? z : 1.0) + 1.0 / acc;
  }
  return coeffs.front() + 1.0 / acc;
}

InversionResult invert(const SpectralData& sd, const BoundaryConditions& bc) {
  check_supported_bc(bc);
  const int n = sd.n();
  if (n < 1) throw std::invalid_argument("invert: empty spectral data");
  const HankelTable t(sd, 2 * n);

  // With j' = n-j:
  //   m_j = (Delta_{j'}^1)^2 / (Delta_{j'}^0 Delta_{(j-1)'}^0)
  //   l_j = (Delta_{j'}^0)^2 / (Delta_{j'}^1 Delta_{(j+1)'}^1),  1 <= j <= n-1
  //   l_0 [+ 1/h] = (Delta_n^0)^2 / (Delta_n^1 Delta_{n-1}^1)
  std::vector<double> m(n), l(n + 1);
  for (int j = 1; j <= n; ++j) {
    const int jp = n - j;
    m[j - 1] = positive_or_throw(
        t.minor(jp, 1) * t.minor(jp, 1) / (t.minor(jp, 0) * t.minor(jp + 1, 0)),
        "mass m_" + std::to_string(j));
  }
  for (int j = 1; j <= n - 1; ++j) {
    const int jp = n - j;
    l[j] = positive_or_throw(
        t.minor(jp, 0) * t.minor(jp, 0) / (t.minor(jp, 1) * t.minor(jp - 1, 1)),
        "gap l_" + std::to_string(j));
  }
  const double l0_full = t.minor(n, 0) * t.minor(n, 0) / (t.minor(n, 1) * t.minor(n - 1, 1));
  const double inv_h = bc.h.is_infinite() ? 0.0 : 1.0 / bc.h.value();
  l[0] = positive_or_throw(l0_full - inv_h, "gap l_0");

  // Two routes to l_n: -W(0) = 1 + 1/h = l_n + c_{-1}, and total length 1.
  const double ln_moment = 1.0 + inv_h - t.moment(-1);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += l[j];
  const double ln_length = 1.0 - sum;
  l[n] = positive_or_throw(ln_length, "gap l_n");

  InversionResult res;
  res.ln_mismatch = std::abs(ln_moment - ln_length);
  res.string.bc = bc;
  res.string.m = m;
  res.string.x.resize(n);
  double x = 0.0;
  for (int j = 0; j < n; ++j) {
    x += l[j];
    res.string.x[j] = x;
  }
  require_valid(res.string);
  return res;
}

}  // namespace isoflow
