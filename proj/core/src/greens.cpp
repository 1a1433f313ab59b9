#include "isoflow/greens.hpp"

#include <cmath>
#include <stdexcept>

namespace isoflow {

BareGreen BareGreen::make(const BoundaryConditions& bc) {
  if (bc.h.is_zero() && bc.H.is_zero())
    throw std::invalid_argument("BareGreen: (h,H)=(0,0) excluded");
  BareGreen g{};
  if (bc.h.is_infinite()) {
    g.c0 = 0.0;
    g.c1 = 1.0;
  } else {
    g.c0 = 1.0;
    g.c1 = bc.h.value();
  }
  if (bc.H.is_infinite()) {
    g.ch0 = 1.0;
    g.ch1 = -1.0;
  } else {
    g.ch0 = 1.0 + bc.H.value();
    g.ch1 = -bc.H.value();
  }
  if (bc.h.is_infinite() && bc.H.is_infinite()) {
    g.w = 1.0;
  } else if (bc.h.is_infinite()) {
    g.w = 1.0 + bc.H.value();
  } else if (bc.H.is_infinite()) {
    g.w = 1.0 + bc.h.value();
  } else {
    g.w = bc.h.value() + bc.H.value() + bc.h.value() * bc.H.value();
  }
  return g;
}

namespace {
void check_domain(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::domain_error("G0: arguments must lie in [0,1]");
}
}  // namespace

double BareGreen::operator()(double x, double y) const {
  check_domain(x, y);
  const double lo = std::min(x, y), hi = std::max(x, y);
  return -c(lo) * chat(hi) / w;
}

double BareGreen::dx_avg(double x, double y) const {
  check_domain(x, y);
  if (x < y) return -c1 * chat(y) / w;
  if (x > y) return -c(y) * ch1 / w;
  return -0.5 * (c1 * chat(x) + c(x) * ch1) / w;
}

KernelSet build_kernels(const DiscreteString& s) {
  require_valid(s);
  KernelSet ks{BareGreen::make(s.bc), {}, {}, {}, s.x};
  const int n = s.n();
  ks.masses = Eigen::Map<const Eigen::VectorXd>(s.m.data(), n);
  ks.K.resize(n, n);
  ks.J.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ks.K(i, j) = -ks.g0(s.x[i], s.x[j]);
      ks.J(i, j) = 2.0 * ks.g0.dx_avg(s.x[i], s.x[j]);
    }
  }
  return ks;
}

Eigen::VectorXd KernelSet::gvec(double xq) const {
  Eigen::VectorXd g(n());
  for (int i = 0; i < n(); ++i) g(i) = g0(xq, x[i]);
  return g;
}

Eigen::VectorXd KernelSet::dvec(double xq) const {
  Eigen::VectorXd d(n());
  for (int i = 0; i < n(); ++i) d(i) = g0.dx_avg(xq, x[i]);
  return d;
}

double iterated_diag(const DiscreteString& s, int k, double x) {
  if (k < 1) throw std::invalid_argument("iterated_diag: k must be >= 1");
  const KernelSet ks = build_kernels(s);
  const Eigen::VectorXd g = ks.gvec(x);
  const Eigen::MatrixXd GM = -ks.K * ks.masses.asDiagonal();
  Eigen::VectorXd v = g;
  for (int r = 1; r < k; ++r) v = GM * v;
  return g.dot(ks.masses.asDiagonal() * v);
}

Eigen::MatrixXd epsilon_resolvent(const DiscreteString& s, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon_resolvent: eps must be > 0");
  const KernelSet ks = build_kernels(s);
  const int n = ks.n();
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) + eps * ks.K * ks.masses.asDiagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    // -KM has real negative spectrum, so this signals conditioning loss only.
    throw std::runtime_error(
        "epsilon_resolvent: I + eps*K*M numerically singular (|det| ~ " +
        std::to_string(std::abs(lu.determinant())) + ")");
  }
  return -lu.solve(ks.K);
}

RationalBFields::RationalBFields(const DiscreteString& s, int k, double eps)
    : ks_(build_kernels(s)), k_(k), eps_(eps) {
  if (k < 1) throw std::invalid_argument("RationalBFields: k must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("RationalBFields: eps must be > 0");
  const int n = ks_.n();
  const Eigen::MatrixXd A =
      Eigen::MatrixXd::Identity(n, n) + eps * ks_.K * ks_.masses.asDiagonal();
  inv_ = A.partialPivLu().inverse();
  resolvent_ = -inv_ * ks_.K;
  // (G_eps M)^r for r = 0..k-1, stacked side by side.
  iter_.resize(n, n * k_);
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd GeM = resolvent_ * ks_.masses.asDiagonal();
  for (int r = 0; r < k_; ++r) {
    iter_.middleCols(r * n, n) = P;
    P = GeM * P;
  }
}

double RationalBFields::iter_diag(int r, double x) const {
  // T_r(x,x) = ((G_eps M)^r G_eps)(x,x) through u(x) = (I+eps K M)^{-1} g(x),
  // where u_i(x) = G_eps(x_i, x).
  const Eigen::VectorXd g = ks_.gvec(x);
  if (r == 0) return ks_.g0.diag(x) + eps_ * g.dot(ks_.masses.asDiagonal() * (inv_ * g));
  const int n = ks_.n();
  const Eigen::VectorXd u = inv_ * g;
  const Eigen::VectorXd chain = iter_.middleCols((r - 1) * n, n) * u;
  return u.dot(ks_.masses.asDiagonal() * chain);
}

double RationalBFields::iter_diag_deriv(int r, double x) const {
  const Eigen::VectorXd d = ks_.dvec(x);
  const Eigen::VectorXd g = ks_.gvec(x);
  const Eigen::VectorXd u = inv_ * g;
  if (r == 0)
    return ks_.g0.diag_deriv(x) + 2.0 * eps_ * d.dot(ks_.masses.asDiagonal() * u);
  const int n = ks_.n();
  const Eigen::VectorXd du = inv_ * d;  // averaged derivative of u(x)
  const Eigen::VectorXd chain = iter_.middleCols((r - 1) * n, n) * u;
  return 2.0 * du.dot(ks_.masses.asDiagonal() * chain);
}

double RationalBFields::b(int j, double x) const {
  if (j < 0 || j > k_) throw std::invalid_argument("RationalBFields: need 0 <= j <= k");
  if (j >= 1) {
    // b_{-j}(x) = (-1)^{k-j} G_eps^{(k-j)}(x,x) / (k-j)! = (-1)^{k-j} T_{k-j}(x,x).
    const int r = k_ - j;
    return ((r % 2 == 0) ? 1.0 : -1.0) * iter_diag(r, x);
  }
  // b_0(x) = [G0(x,x) - sum_{r<k} (-eps)^r T_r(x,x)] / eps^k.
  double acc = ks_.g0.diag(x);
  double pw = 1.0;
  for (int r = 0; r < k_; ++r) {
    acc -= pw * iter_diag(r, x);
    pw *= -eps_;
  }
  return acc / std::pow(eps_, k_);
}

double RationalBFields::b0_avg_deriv(double x) const {
  double acc = ks_.g0.diag_deriv(x);
  double pw = 1.0;
  for (int r = 0; r < k_; ++r) {
    acc -= pw * iter_diag_deriv(r, x);
    pw *= -eps_;
  }
  return acc / std::pow(eps_, k_);
}

}  // namespace isoflow
