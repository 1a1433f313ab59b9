#include <doctest.h>

#include <cmath>
#include <random>

#include "isoflow/greens.hpp"
#include "oracles.hpp"

using namespace isoflow;

namespace {
BoundaryConditions bc(double h, double H) {
  return {RobinCoeff::finite(h), RobinCoeff::finite(H)};
}
const BoundaryConditions kHalfFree = bc(1.0, 0.0);
}  // namespace

TEST_CASE("bare Green's function anchors") {
  const auto g10 = BareGreen::make(kHalfFree);
  CHECK(g10.w == doctest::Approx(1.0));
  CHECK(g10(0.5, 0.5) == doctest::Approx(-1.5).epsilon(1e-15));

  const auto gdd = BareGreen::make({RobinCoeff::infinity(), RobinCoeff::infinity()});
  CHECK(gdd(0.5, 0.5) == doctest::Approx(-0.25).epsilon(1e-15));

  const auto g11 = BareGreen::make(bc(1.0, 1.0));
  CHECK(g11.w == doctest::Approx(3.0));
  CHECK(g11(0.25, 0.75) == doctest::Approx(-25.0 / 48.0).epsilon(1e-15));
}

TEST_CASE("bare Green's function is symmetric and negative") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& b : {kHalfFree, bc(2.0, 3.0),
                        BoundaryConditions{RobinCoeff::infinity(), RobinCoeff::finite(0.5)},
                        BoundaryConditions{RobinCoeff::finite(0.0), RobinCoeff::infinity()}}) {
    const auto g0 = BareGreen::make(b);
    for (int it = 0; it < 50; ++it) {
      const double x = u(rng), y = u(rng);
      CHECK(g0(x, y) == doctest::Approx(g0(y, x)).epsilon(1e-15));
      CHECK(g0(x, y) < 0.0);
    }
  }
}

TEST_CASE("bare Green's function matches the finite-difference solve") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const auto& b : {kHalfFree, bc(2.0, 1.5), bc(0.0, 3.0),
                        BoundaryConditions{RobinCoeff::infinity(), RobinCoeff::infinity()},
                        BoundaryConditions{RobinCoeff::infinity(), RobinCoeff::finite(2.0)},
                        BoundaryConditions{RobinCoeff::finite(1.0), RobinCoeff::infinity()}}) {
    const auto g0 = BareGreen::make(b);
    for (int it = 0; it < 10; ++it) {
      const int N = 10000;
      const double y = std::round(u(rng) * N) / N;  // snap to the oracle grid
      const double x = u(rng);
      CHECK(g0(x, y) == doctest::Approx(oracles::g0_fd(b, x, y, N)).epsilon(1e-9));
    }
  }
}

TEST_CASE("bare Green's function satisfies the boundary conditions") {
  for (const auto& b : {kHalfFree, bc(2.0, 1.5), bc(0.0, 3.0)}) {
    const auto g0 = BareGreen::make(b);
    for (double y : {0.2, 0.55, 0.9}) {
      CHECK(std::abs(g0.dx_avg(0.0, y) - b.h.value() * g0(0.0, y)) < 1e-12);
      CHECK(std::abs(g0.dx_avg(1.0, y) + b.H.value() * g0(1.0, y)) < 1e-12);
    }
  }
  const auto gd = BareGreen::make({RobinCoeff::infinity(), RobinCoeff::infinity()});
  CHECK(std::abs(gd(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(gd(1.0, 0.5)) < 1e-15);
}

TEST_CASE("bare Green's function rejects points outside the unit square") {
  const auto g0 = BareGreen::make(kHalfFree);
  CHECK_THROWS_AS(g0(-0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(g0(0.5, 1.1), std::domain_error);
}

TEST_CASE("kernel matrices: single-mass anchor") {
  DiscreteString s{{0.5}, {1.0}, kHalfFree};
  const auto ks = build_kernels(s);
  REQUIRE(ks.n() == 1);
  CHECK(ks.K(0, 0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(ks.J(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ks.gvec(0.5)(0) == doctest::Approx(-1.5));
  CHECK(ks.MK()(0, 0) == doctest::Approx(1.5));
}

TEST_CASE("kernel matrices: Dirichlet pair") {
  DiscreteString s{{1.0 / 3.0, 2.0 / 3.0},
                   {1.0, 1.0},
                   {RobinCoeff::infinity(), RobinCoeff::infinity()}};
  const auto ks = build_kernels(s);
  CHECK(ks.K(0, 0) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(ks.K(0, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(ks.K(1, 0) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(ks.K(1, 1) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK((ks.K.array() > 0.0).all());
}

TEST_CASE("iterated kernel diagonal: anchor and brute force") {
  DiscreteString s1{{0.5}, {1.0}, kHalfFree};
  CHECK(iterated_diag(s1, 1, 0.5) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(iterated_diag(s1, 2, 0.5) == doctest::Approx(-3.375).epsilon(1e-15));

  std::mt19937 rng(23);
  for (int trial = 0; trial < 4; ++trial) {
    const auto s = oracles::random_string(rng, 3, RobinCoeff::finite(1.0 + trial),
                                          RobinCoeff::finite(0.5 * trial));
    for (int k = 1; k <= 4; ++k) {
      for (double x : {0.15, s.x[1], 0.85}) {
        const double got = iterated_diag(s, k, x);
        CHECK(got == doctest::Approx(oracles::iterated_diag_brute(s, k, x)).epsilon(1e-12));
        CHECK(((k % 2 == 0) ? -got : got) > 0.0);  // (-1)^{k+1} G_k > 0 sign check
      }
    }
  }
}

TEST_CASE("epsilon resolvent: scalar anchor and Neumann limit") {
  DiscreteString s{{0.5}, {1.0}, kHalfFree};
  const auto ge = epsilon_resolvent(s, 0.1);
  CHECK(ge(0, 0) == doctest::Approx(-1.5 / 1.15).epsilon(1e-15));

  std::mt19937 rng(31);
  const auto r = oracles::random_string(rng, 4, RobinCoeff::finite(1.0), RobinCoeff::finite(2.0));
  const auto ks = build_kernels(r);
  const Eigen::MatrixXd G = -ks.K;
  const Eigen::MatrixXd M = ks.masses.asDiagonal();
  // second-order truncation error of G_eps = G + eps G M G + ... halves slope 2
  double prev = 0.0;
  for (int p = 0; p < 2; ++p) {
    const double eps = 1e-3 / (1 << p);
    const double err = (epsilon_resolvent(r, eps) - (G + eps * G * M * G)).norm();
    if (p == 1) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("epsilon resolvent requires eps > 0") {
  DiscreteString s{{0.5}, {1.0}, kHalfFree};
  CHECK_THROWS_AS(epsilon_resolvent(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_resolvent(s, -0.1), std::invalid_argument);
}

TEST_CASE("rational b-fields: scalar anchor") {
  DiscreteString s{{0.5}, {1.0}, kHalfFree};
  RationalBFields bf(s, 1, 0.1);
  CHECK(bf.b(1, 0.5) == doctest::Approx(-1.5 / 1.15).epsilon(1e-14));
  CHECK(bf.b0(0.5) == doctest::Approx((-1.5 + 1.5 / 1.15) / 0.1).epsilon(1e-12));
}

TEST_CASE("rational b-fields: b_{-k} is the resolvent diagonal") {
  std::mt19937 rng(41);
  const auto s = oracles::random_string(rng, 3, RobinCoeff::finite(2.0), RobinCoeff::finite(0.0));
  for (int k : {1, 2, 3}) {
    const double eps = 0.05;
    RationalBFields bf(s, k, eps);
    const auto ge = epsilon_resolvent(s, eps);
    for (int i = 0; i < s.n(); ++i)
      CHECK(bf.b(k, s.x[i]) == doctest::Approx(ge(i, i)).epsilon(1e-12));
  }
}

TEST_CASE("rational b-fields: eps -> 0 recovers the iterated diagonal") {
  std::mt19937 rng(43);
  const auto s = oracles::random_string(rng, 3, RobinCoeff::finite(1.0), RobinCoeff::finite(1.0));
  for (int k : {1, 2}) {
    const double sx = (k % 2 == 0) ? -1.0 : 1.0;  // b_0 -> (-1)^k G_k = -sx G_k
    double prev = 0.0;
    for (int p = 0; p < 2; ++p) {
      const double eps = 1e-4 / (1 << p);
      RationalBFields bf(s, k, eps);
      double err = 0.0;
      for (int i = 0; i < s.n(); ++i)
        err = std::max(err, std::abs(bf.b0(s.x[i]) + sx * iterated_diag(s, k, s.x[i])));
      if (p == 1) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.1));
      prev = err;
    }
  }
}
