#include "isoflow/peakon.hpp"

#include <cmath>
#include <stdexcept>

#include "isoflow/flow.hpp"

namespace isoflow {

PeakonKernelSet build_peakon_kernels(const PeakonString& s) {
  require_valid(s);
  const int n = s.n();
  PeakonKernelSet ks;
  ks.masses = Eigen::Map<const Eigen::VectorXd>(s.m.data(), n);
  ks.K.resize(n, n);
  ks.J.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = s.x[i] - s.x[j];
      const double e = std::exp(-0.5 * std::abs(d));
      ks.K(i, j) = e;
      ks.J(i, j) = (d > 0 ? e : (d < 0 ? -e : 0.0));
    }
  }
  return ks;
}

FieldEval peakon_field(const PeakonString& s, int k) {
  if (k < 1) throw std::invalid_argument("peakon_field: k must be >= 1");
  const PeakonKernelSet ks = build_peakon_kernels(s);
  const int n = s.n();
  const Eigen::MatrixXd MK = ks.masses.asDiagonal() * ks.K;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
  for (int r = 0; r < k; ++r) P = MK * P;
  FieldEval f{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  f.xdot = (ks.K * P).diagonal();
  f.mdot = ks.masses.asDiagonal() * (ks.J * P).diagonal();
  return f;
}

PeakonDiagnostics peakon_conserved(const PeakonString& s, int k) {
  const PeakonKernelSet ks = build_peakon_kernels(s);
  const int n = s.n();
  PeakonDiagnostics d{};
  d.total_mass = ks.masses.sum();
  d.h_ch = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d.h_ch += 0.5 * s.m[i] * s.m[j] * std::exp(-std::abs(s.x[i] - s.x[j]));
  const Eigen::MatrixXd MK = ks.masses.asDiagonal() * ks.K;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
  for (int r = 0; r < k; ++r) P = MK * P;
  d.hamiltonian_k = (MK * P).trace() / static_cast<double>(k + 1);
  return d;
}

}  // namespace isoflow
