#include "isoflow/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isoflow/greens.hpp"

namespace isoflow {

namespace {

// polynomial helpers, ascending coefficients
std::vector<double> padd(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<double> axpy(double c, const std::vector<double>& a) {
  std::vector<double> r(a);
  for (auto& v : r) v *= c;
  return r;
}

// a - c * z * b
std::vector<double> sub_shift(const std::vector<double>& a, double c,
                              const std::vector<double>& b) {
  std::vector<double> r(std::max(a.size(), b.size() + 1), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i + 1] -= c * b[i];
  return r;
}

struct StartPair {
  double p, q;
};

StartPair start_pair(const BoundaryConditions& bc) {
  // h = inf uses the normalized limit of ((hx+1)/h)' data: (p0,q0) = (1,0).
  if (bc.h.is_infinite()) return {1.0, 0.0};
  return {bc.h.value(), 1.0};
}

}  // namespace

TransferPolynomials transfer(const DiscreteString& s) {
  require_valid(s);
  const auto l = s.gaps();
  const auto st = start_pair(s.bc);
  TransferPolynomials tp;
  tp.p.push_back({st.p});
  tp.q.push_back({st.q});
  for (int j = 0; j < s.n(); ++j) {
    const auto qn = padd(tp.q.back(), axpy(l[j], tp.p.back()));
    const auto pn = sub_shift(tp.p.back(), s.m[j], qn);
    tp.q.push_back(qn);
    tp.p.push_back(pn);
  }
  return tp;
}

namespace {

struct TransferValueL {
  long double phi1, phix1, dphi1, dphix1;
};

// Extended-precision core. Near the top of the spectrum the boundary values
// are tiny residuals of large cancelling terms and the Weyl residues amplify
// the root error by the inverse of that smallness, so both the evaluation and
// the final Newton polish have to run beyond double.
TransferValueL transfer_eval_core(const DiscreteString& s, long double z) {
  const auto l = s.gaps();
  const auto st = start_pair(s.bc);
  long double p = st.p, q = st.q, dp = 0.0L, dq = 0.0L;
  for (int j = 0; j < s.n(); ++j) {
    const long double lj = l[j], mj = s.m[j];
    q += lj * p;
    dq += lj * dp;
    dp += -mj * (q + z * dq);
    p += -z * mj * q;
  }
  const long double ln = l[s.n()];
  return {p * ln + q, p, dp * ln + dq, dp};
}

struct NDValueL {
  long double N, D, dN, dD;
};

NDValueL nd_eval_core(const DiscreteString& s, long double z) {
  const TransferValueL tv = transfer_eval_core(s, z);
  const auto& H = s.bc.H;
  if (H.is_infinite()) return {tv.phix1, tv.phi1, tv.dphix1, tv.dphi1};
  if (H.is_zero()) return {-tv.phi1, tv.phix1, -tv.dphi1, tv.dphix1};
  const long double Hv = H.value();
  return {tv.phix1 - Hv * tv.phi1, tv.phix1 + Hv * tv.phi1,
          tv.dphix1 - Hv * tv.dphi1, tv.dphix1 + Hv * tv.dphi1};
}

}  // namespace

TransferValue transfer_eval(const DiscreteString& s, double z) {
  const TransferValueL tv = transfer_eval_core(s, z);
  return {static_cast<double>(tv.phi1), static_cast<double>(tv.phix1),
          static_cast<double>(tv.dphi1), static_cast<double>(tv.dphix1)};
}

NDValue nd_eval(const DiscreteString& s, double z) {
  const TransferValue tv = transfer_eval(s, z);
  const auto& H = s.bc.H;
  if (H.is_infinite()) return {tv.phix1, tv.phi1, tv.dphix1, tv.dphi1};
  if (H.is_zero()) return {-tv.phi1, tv.phix1, -tv.dphi1, tv.dphix1};
  const double Hv = H.value();
  return {tv.phix1 - Hv * tv.phi1, tv.phix1 + Hv * tv.phi1,
          tv.dphix1 - Hv * tv.dphi1, tv.dphix1 + Hv * tv.dphi1};
}

namespace {

struct RootData {
  double z;
  double mu;
};

RootData refine_root(const DiscreteString& s, double lo, double hi) {
  auto D = [&](double z) { return static_cast<double>(nd_eval_core(s, z).D); };
  double flo = D(lo);
  for (int it = 0; it < 80 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = D(mid);
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  // Newton polish inside the bracket, carried in extended precision: the
  // residue N/D' can be many orders below the local scale of N, and its
  // relative error grows by the same factor over the root error.
  long double z = 0.5L * (static_cast<long double>(lo) + hi);
  NDValueL nd = nd_eval_core(s, z);
  for (int it = 0; it < 12; ++it) {
    if (nd.dD == 0.0L) break;
    const long double step = nd.D / nd.dD;
    const long double znew = z - step;
    if (znew <= 0.0L) break;
    z = znew;
    nd = nd_eval_core(s, z);
    if (std::abs(step) <= 1e-20L * z) break;
  }
  return {static_cast<double>(z), static_cast<double>(nd.N / nd.dD)};
}

}  // namespace

SpectralData spectrum(const DiscreteString& s) {
  require_valid(s);
  const int n = s.n();
  const KernelSet ks = build_kernels(s);

  // v = z K M v at the atoms, so z_j = 1/lambda_j of M^{1/2} K M^{1/2};
  // the eigensolve only seeds the bracketing window on the z axis.
  const Eigen::VectorXd sqm = ks.masses.cwiseSqrt();
  const Eigen::MatrixXd S = sqm.asDiagonal() * ks.K * sqm.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  const double lam_min = es.eigenvalues().minCoeff();
  const double lam_max = es.eigenvalues().maxCoeff();
  if (!(lam_min > 0.0))
    throw std::runtime_error("spectrum: kernel matrix not positive definite");
  const double z_lo = 0.5 / lam_max, z_hi = 2.0 / lam_min;

  auto D = [&](double z) { return nd_eval(s, z).D; };
  int grid = std::max(64, 32 * n);
  std::vector<std::pair<double, double>> brackets;
  for (int attempt = 0; attempt < 4; ++attempt) {
    brackets.clear();
    const double r = std::pow(z_hi / z_lo, 1.0 / grid);
    double a = z_lo, fa = D(a);
    for (int i = 1; i <= grid; ++i) {
      const double b = z_lo * std::pow(r, i);
      const double fb = D(b);
      if ((fa < 0) != (fb < 0)) brackets.emplace_back(a, b);
      a = b;
      fa = fb;
    }
    if (static_cast<int>(brackets.size()) == n) break;
    grid *= 4;
  }
  if (static_cast<int>(brackets.size()) != n) {
    std::ostringstream os;
    os << "spectrum: found " << brackets.size() << " sign changes of D, expected " << n
       << " in [" << z_lo << ", " << z_hi << "]";
    throw std::runtime_error(os.str());
  }

  SpectralData sd;
  sd.gamma = s.gaps().back();
  for (const auto& [lo, hi] : brackets) {
    const auto [z, mu] = refine_root(s, lo, hi);
    if (!(z > 0.0) || !(mu > 0.0)) {
      std::ostringstream os;
      os << "spectrum: nonpositive eigenvalue/residue (z=" << z << ", mu=" << mu << ")";
      throw std::runtime_error(os.str());
    }
    sd.z.push_back(z);
    sd.mu.push_back(mu);
  }
  return sd;
}

double stieltjes_value(const SpectralData& sd, double z) {
  double v = sd.gamma;
  for (int j = 0; j < sd.n(); ++j) v += sd.mu[j] / (z + sd.z[j]);
  return v;
}

SpectralData evolve_spectral(const SpectralData& sd, int k, double t) {
  if (k < 1) throw std::invalid_argument("evolve_spectral: k must be >= 1");
  SpectralData out = sd;
  for (int j = 0; j < sd.n(); ++j)
    out.mu[j] = sd.mu[j] * std::exp(t / std::pow(sd.z[j], k));
  return out;
}

}  // namespace isoflow
