#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// finite-difference BVP solve for the bare Green's function, brute-force
// index-tuple sums for iterated kernels and fields, value-level shooting for
// the transfer data, and a seeded random-string generator.

#include <cmath>
#include <random>
#include <vector>

#include "isoflow/greens.hpp"
#include "isoflow/types.hpp"

namespace oracles {

// Solves D^2 u = delta(x - y) on a uniform N+1-point grid with Robin ends by a
// three-point scheme (Thomas algorithm); y snaps to the nearest grid node,
// where the piecewise-linear solution makes the scheme exact up to rounding.
inline double g0_fd(const isoflow::BoundaryConditions& bc, double xq, double yq,
                    int N = 10000) {
  const double dx = 1.0 / N;
  const int iy = static_cast<int>(std::lround(yq / dx));
  std::vector<double> a(N + 1), b(N + 1), c(N + 1), r(N + 1, 0.0);
  for (int i = 1; i < N; ++i) {
    a[i] = 1.0 / (dx * dx);
    b[i] = -2.0 / (dx * dx);
    c[i] = 1.0 / (dx * dx);
  }
  r[iy] = 1.0 / dx;
  if (bc.h.is_infinite()) {
    b[0] = 1.0;
    c[0] = 0.0;
  } else {
    // (u1 - u0)/dx - h u0 = 0, exact for the piecewise-linear solution
    b[0] = -1.0 / dx - bc.h.value();
    c[0] = 1.0 / dx;
  }
  if (bc.H.is_infinite()) {
    b[N] = 1.0;
    a[N] = 0.0;
  } else {
    b[N] = 1.0 / dx + bc.H.value();
    a[N] = -1.0 / dx;
  }
  // Thomas sweep
  for (int i = 1; i <= N; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    r[i] -= w * r[i - 1];
  }
  std::vector<double> u(N + 1);
  u[N] = r[N] / b[N];
  for (int i = N - 1; i >= 0; --i) u[i] = (r[i] - c[i] * u[i + 1]) / b[i];
  // linear interpolation at xq (solution is linear between nodes)
  const int ix = std::min(static_cast<int>(xq / dx), N - 1);
  const double s = (xq - ix * dx) / dx;
  return (1.0 - s) * u[ix] + s * u[ix + 1];
}

// Brute-force G_k(x,x) as the index-tuple sum over
// G0(x,x_{i_k}) m_{i_k} G0(x_{i_k},x_{i_{k-1}}) ... m_{i_1} G0(x_{i_1},x).
inline double iterated_diag_brute(const isoflow::DiscreteString& s, int k, double x) {
  const auto g0 = isoflow::BareGreen::make(s.bc);
  const int n = s.n();
  std::vector<int> idx(k, 0);
  double total = 0.0;
  while (true) {
    double term = g0(x, s.x[idx[k - 1]]);
    for (int r = k - 1; r >= 1; --r)
      term *= s.m[idx[r]] * g0(s.x[idx[r]], s.x[idx[r - 1]]);
    term *= s.m[idx[0]] * g0(s.x[idx[0]], x);
    total += term;
    int pos = 0;
    while (pos < k && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == k) break;
  }
  return total;
}

// Brute-force truncated field: xdot from G_k(x_j,x_j) tuples, mdot from the
// two-term averaged-derivative chains of the k-th iterated kernel.
inline void field_brute(const isoflow::DiscreteString& s, int k,
                        std::vector<double>& xdot, std::vector<double>& mdot) {
  const auto g0 = isoflow::BareGreen::make(s.bc);
  const int n = s.n();
  const double sx = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  xdot.assign(n, 0.0);
  mdot.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    xdot[j] = sx * iterated_diag_brute(s, k, s.x[j]);
    std::vector<int> idx(k, 0);
    double avg = 0.0;
    while (true) {
      double term = g0.dx_avg(s.x[j], s.x[idx[k - 1]]);
      for (int r = k - 1; r >= 1; --r)
        term *= s.m[idx[r]] * g0(s.x[idx[r]], s.x[idx[r - 1]]);
      term *= s.m[idx[0]] * g0(s.x[idx[0]], s.x[j]);
      avg += 2.0 * term;
      int pos = 0;
      while (pos < k && ++idx[pos] == n) idx[pos++] = 0;
      if (pos == k) break;
    }
    mdot[j] = -sx * s.m[j] * avg;  // (-1)^k m_j <G_{k,x}>
  }
}

// Value-level shooting for phi(1;z), phi_x(1;z): propagate (v, v') across the
// gaps with the derivative jump -z m v at each atom.
inline void shoot(const isoflow::DiscreteString& s, double z, double& phi1, double& phix1) {
  double v, vp;
  if (s.bc.h.is_infinite()) {
    v = 0.0;
    vp = 1.0;
  } else {
    v = 1.0;
    vp = s.bc.h.value();
  }
  double prev = 0.0;
  for (int j = 0; j < s.n(); ++j) {
    v += vp * (s.x[j] - prev);
    vp -= z * s.m[j] * v;
    prev = s.x[j];
  }
  v += vp * (1.0 - prev);
  phi1 = v;
  phix1 = vp;
}

inline isoflow::DiscreteString random_string(std::mt19937& rng, int n,
                                             isoflow::RobinCoeff h, isoflow::RobinCoeff H,
                                             double mmin = 0.2, double mmax = 2.0) {
  std::uniform_real_distribution<double> upos(0.05, 0.95), umass(mmin, mmax);
  isoflow::DiscreteString s;
  s.bc = {h, H};
  while (true) {
    std::vector<double> x(n);
    for (auto& v : x) v = upos(rng);
    std::sort(x.begin(), x.end());
    bool ok = true;
    for (int i = 1; i < n; ++i)
      if (x[i] - x[i - 1] < 0.02) ok = false;
    if (!ok) continue;
    s.x = x;
    break;
  }
  s.m.resize(n);
  for (auto& v : s.m) v = umass(rng);
  return s;
}

inline isoflow::PeakonString random_peakons(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> gap(0.3, 1.5), umass(0.2, 2.0);
  isoflow::PeakonString s;
  double x = -2.0;
  for (int i = 0; i < n; ++i) {
    x += gap(rng);
    s.x.push_back(x);
    s.m.push_back(umass(rng));
  }
  return s;
}

}  // namespace oracles
