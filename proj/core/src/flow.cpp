#include "isoflow/flow.hpp"

#include <stdexcept>

namespace isoflow {

namespace {

/// Truncated-flow field from eq-level chains: for each atom j,
///   G_k(x_j,x_j)        = g_j^T M (G M)^{k-1} g_j
///   <G_{k,x}(x,x)>(x_j) = 2 d_j^T M (G M)^{k-1} g_j
/// with g_j = G0(x_j, .), d_j the averaged-derivative vector at x_j.
FieldEval truncated_field(const KernelSet& ks, int k) {
  const int n = ks.n();
  const Eigen::MatrixXd GM = -ks.K * ks.masses.asDiagonal();
  Eigen::MatrixXd chain = Eigen::MatrixXd::Identity(n, n);
  for (int r = 1; r < k; ++r) chain = GM * chain;
  const double sx = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  FieldEval f{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd g = -ks.K.col(j);  // g(x_j) at the atoms
    const Eigen::VectorXd d = 0.5 * ks.J.row(j).transpose();
    const Eigen::VectorXd v = ks.masses.asDiagonal() * (chain * g);
    f.xdot(j) = sx * g.dot(v);
    f.mdot(j) = -sx * ks.masses(j) * 2.0 * d.dot(v);  // (-1)^k m_j <G_{k,x}>
  }
  return f;
}

}  // namespace

FieldEval vector_field(const DiscreteString& s, const FlowSpec& spec) {
  require_valid(spec);
  if (spec.kernel != KernelKind::string)
    throw std::invalid_argument("vector_field: spec selects the ch_peakon kernel");
  if (spec.epsilon == 0.0) return truncated_field(build_kernels(s), spec.k);

  const RationalBFields bf(s, spec.k, spec.epsilon);
  const int n = s.n();
  FieldEval f{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j) {
    f.xdot(j) = -bf.b0(s.x[j]);
    f.mdot(j) = s.m[j] * bf.b0_avg_deriv(s.x[j]);
  }
  return f;
}

FieldEval vector_field_matrix(const DiscreteString& s, int k) {
  if (k < 1) throw std::invalid_argument("vector_field_matrix: k must be >= 1");
  const KernelSet ks = build_kernels(s);
  const int n = ks.n();
  const Eigen::MatrixXd MK = ks.masses.asDiagonal() * ks.K;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
  for (int r = 0; r < k; ++r) P = MK * P;  // (MK)^k
  FieldEval f{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  f.xdot = (ks.K * P).diagonal();
  f.mdot = ks.masses.asDiagonal() * (ks.J * P).diagonal();
  return f;
}

double hamiltonian(const DiscreteString& s, int k) {
  if (k < 1) throw std::invalid_argument("hamiltonian: k must be >= 1");
  const KernelSet ks = build_kernels(s);
  const int n = ks.n();
  const Eigen::MatrixXd MK = ks.masses.asDiagonal() * ks.K;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
  for (int r = 0; r < k; ++r) P = MK * P;
  // 1/(k+1) sum_i m_i (K(MK)^k)_ii = 1/(k+1) tr(M K (MK)^k)
  return (MK * P).trace() / static_cast<double>(k + 1);
}

std::vector<double> invariants(const DiscreteString& s, int jmax) {
  if (jmax < 0) throw std::invalid_argument("invariants: jmax must be >= 0");
  require_valid(s);
  const BareGreen g0 = BareGreen::make(s.bc);
  const int n = s.n();
  std::vector<double> out(jmax + 1, 0.0);
  for (int i = 0; i < n; ++i) out[0] += s.m[i] * g0.diag(s.x[i]);
  if (jmax == 0) return out;

  // W[a][b] = sum over increasing chains from a to b of gap/mass products;
  // extended one link at a time.
  std::vector<std::vector<double>> W(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) W[a][a] = s.m[a];  // chains of length 1
  for (int j = 1; j <= jmax; ++j) {
    if (j >= 2) {
      std::vector<std::vector<double>> Wn(n, std::vector<double>(n, 0.0));
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = a; c < b; ++c)
            Wn[a][b] += W[a][c] * (s.x[b] - s.x[c]) * s.m[b];
      W = std::move(Wn);
    }
    double I = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        if (W[a][b] != 0.0) I += W[a][b] * g0(s.x[a], s.x[b]);
    out[j] = I;
  }
  return out;
}

}  // namespace isoflow
