#include "isoflow/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isoflow/flow.hpp"
#include "isoflow/peakon.hpp"

namespace isoflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B6 = 11.0 / 84;
constexpr double B5 = -2187.0 / 6784;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

Trajectory integrate_rk45(const OdeField& field, Eigen::VectorXd y, double t0, double t1,
                          double tol, double h0, double hmin, const StateCheck& valid) {
  Trajectory tr;
  double t = t0;
  Eigen::VectorXd f = field(t, y);
  tr.steps.push_back({t, y, f});
  double h = std::min(h0, t1 - t0);
  while (t < t1) {
    h = std::min(h, t1 - t);
    bool stage_failed = false;
    try {
    const Eigen::VectorXd k1 = f;
    const Eigen::VectorXd k2 = field(t + C2 * h, y + h * (A21 * k1));
    const Eigen::VectorXd k3 = field(t + C3 * h, y + h * (A31 * k1 + A32 * k2));
    const Eigen::VectorXd k4 = field(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3));
    const Eigen::VectorXd k5 =
        field(t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
    const Eigen::VectorXd k6 =
        field(t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
    const Eigen::VectorXd ynew =
        y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    const Eigen::VectorXd k7 = field(t + h, ynew);
    const Eigen::VectorXd errv =
        h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);

    double err = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double sc = tol + tol * std::max(std::abs(y(i)), std::abs(ynew(i)));
      err = std::max(err, std::abs(errv(i)) / sc);
    }
    const bool state_ok = !valid || valid(ynew);
    if (err <= 1.0 && state_ok) {
      t += h;
      y = ynew;
      f = k7;  // FSAL
      tr.steps.push_back({t, y, f});
    }
    const double fac = state_ok ? 0.9 * std::pow(std::max(err, 1e-10), -0.2) : 0.5;
    h *= std::clamp(fac, 0.2, 5.0);
    if (h < hmin) {
      tr.aborted = true;
      tr.diagnostic = state_ok
                          ? "step size underflow at t=" + std::to_string(t)
                          : "state invariant violated (collision or mass sign change) at t=" +
                                std::to_string(t);
      return tr;
    }
    } catch (const std::exception&) {
      // A stage left the admissible region; retry with a smaller step.
      stage_failed = true;
      h *= 0.5;
    }
    if (stage_failed && h < hmin) {
      tr.aborted = true;
      tr.diagnostic = "field evaluation failed near t=" + std::to_string(t);
      return tr;
    }
  }
  return tr;
}

Trajectory integrate_rk4(const OdeField& field, Eigen::VectorXd y, double t0, double t1,
                         double dt, const StateCheck& valid) {
  Trajectory tr;
  double t = t0;
  tr.steps.push_back({t, y, field(t, y)});
  while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
    const double h = std::min(dt, t1 - t);
    const Eigen::VectorXd k1 = field(t, y);
    const Eigen::VectorXd k2 = field(t + 0.5 * h, y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = field(t + 0.5 * h, y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = field(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if (valid && !valid(y)) {
      tr.aborted = true;
      tr.diagnostic = "state invariant violated at t=" + std::to_string(t);
      return tr;
    }
    tr.steps.push_back({t, y, field(t, y)});
  }
  return tr;
}

}  // namespace

Trajectory integrate_ode(const OdeField& field, Eigen::VectorXd y0, double t0, double t1,
                         const StepPolicy& policy, const StateCheck& valid) {
  if (t1 < t0) throw std::invalid_argument("integrate_ode: t1 < t0");
  if (policy.fixed_dt.has_value() == policy.adaptive_tol.has_value())
    throw std::invalid_argument("integrate_ode: exactly one of fixed_dt/adaptive_tol required");
  if (t1 == t0) {
    Trajectory tr;
    tr.steps.push_back({t0, y0, field(t0, y0)});
    return tr;
  }
  if (policy.fixed_dt) return integrate_rk4(field, std::move(y0), t0, t1, *policy.fixed_dt, valid);
  return integrate_rk45(field, std::move(y0), t0, t1, *policy.adaptive_tol,
                        std::min(policy.initial_dt, t1 - t0), policy.min_dt, valid);
}

Eigen::VectorXd Trajectory::sample(double t) const {
  if (steps.empty()) throw std::logic_error("Trajectory::sample: empty trajectory");
  t = std::clamp(t, steps.front().t, steps.back().t);
  auto it = std::lower_bound(steps.begin(), steps.end(), t,
                             [](const StepRecord& s, double tt) { return s.t < tt; });
  if (it == steps.begin()) return it->y;
  const StepRecord& b = *it;
  const StepRecord& a = *(it - 1);
  const double h = b.t - a.t;
  if (h <= 0.0) return b.y;
  const double s = (t - a.t) / h;
  // Cubic Hermite in s over [a,b].
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * a.y + h10 * h * a.f + h01 * b.y + h11 * h * b.f;
}

Eigen::VectorXd pack_state(const std::vector<double>& x, const std::vector<double>& m) {
  Eigen::VectorXd y(x.size() + m.size());
  for (std::size_t i = 0; i < x.size(); ++i) y(i) = x[i];
  for (std::size_t i = 0; i < m.size(); ++i) y(x.size() + i) = m[i];
  return y;
}

void unpack_state(const Eigen::VectorXd& y, std::vector<double>& x, std::vector<double>& m) {
  const int n = static_cast<int>(y.size()) / 2;
  x.assign(y.data(), y.data() + n);
  m.assign(y.data() + n, y.data() + 2 * n);
}

namespace {

StateCheck string_check(int n) {
  return [n](const Eigen::VectorXd& y) {
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(y(i) > prev) || !(y(i) < 1.0)) return false;
      prev = y(i);
    }
    for (int i = n; i < 2 * n; ++i)
      if (!(y(i) > 0.0)) return false;
    return true;
  };
}

StateCheck peakon_check(int n) {
  return [n](const Eigen::VectorXd& y) {
    for (int i = 1; i < n; ++i)
      if (!(y(i) > y(i - 1))) return false;
    for (int i = n; i < 2 * n; ++i)
      if (!(y(i) > 0.0)) return false;
    return true;
  };
}

}  // namespace

Trajectory integrate_flow(const DiscreteString& s, const FlowSpec& spec, double t_end,
                          const StepPolicy& policy) {
  require_valid(s);
  require_valid(spec);
  DiscreteString work = s;
  const OdeField field = [&work, spec](double, const Eigen::VectorXd& y) {
    unpack_state(y, work.x, work.m);
    const FieldEval f = vector_field(work, spec);
    return pack_state(std::vector<double>(f.xdot.data(), f.xdot.data() + f.xdot.size()),
                      std::vector<double>(f.mdot.data(), f.mdot.data() + f.mdot.size()));
  };
  return integrate_ode(field, pack_state(s.x, s.m), 0.0, t_end, policy, string_check(s.n()));
}

Trajectory integrate_peakons(const PeakonString& s, int k, double t_end,
                             const StepPolicy& policy) {
  require_valid(s);
  PeakonString work = s;
  const OdeField field = [&work, k](double, const Eigen::VectorXd& y) {
    unpack_state(y, work.x, work.m);
    const FieldEval f = peakon_field(work, k);
    return pack_state(std::vector<double>(f.xdot.data(), f.xdot.data() + f.xdot.size()),
                      std::vector<double>(f.mdot.data(), f.mdot.data() + f.mdot.size()));
  };
  return integrate_ode(field, pack_state(s.x, s.m), 0.0, t_end, policy, peakon_check(s.n()));
}

DiscreteString string_at(const DiscreteString& s0, const Trajectory& tr, double t) {
  DiscreteString s = s0;
  unpack_state(tr.sample(t), s.x, s.m);
  return s;
}

PeakonString peakons_at(const PeakonString& s0, const Trajectory& tr, double t) {
  PeakonString s = s0;
  unpack_state(tr.sample(t), s.x, s.m);
  return s;
}

}  // namespace isoflow
