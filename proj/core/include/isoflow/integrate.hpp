#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isoflow/types.hpp"

namespace isoflow {

struct StepPolicy {
  std::optional<double> fixed_dt;      // fixed-step RK4 when set
  std::optional<double> adaptive_tol;  // embedded RK45 when set
  double initial_dt = 1e-3;
  double min_dt = 1e-13;

  static StepPolicy adaptive(double tol) { return {{}, tol, 1e-3, 1e-13}; }
  static StepPolicy fixed(double dt) { return {dt, {}, 1e-3, 1e-13}; }
};

/// One accepted integrator step; y and f endpoints support cubic Hermite
/// interpolation between nodes.
struct StepRecord {
  double t;
  Eigen::VectorXd y;
  Eigen::VectorXd f;
};

struct Trajectory {
  std::vector<StepRecord> steps;
  bool aborted = false;
  std::string diagnostic;

  double t_begin() const { return steps.front().t; }
  double t_end() const { return steps.back().t; }
  /// Dense output by cubic Hermite interpolation; t clamped to the covered span.
  Eigen::VectorXd sample(double t) const;
};

using OdeField = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
using StateCheck = std::function<bool(const Eigen::VectorXd&)>;

/// Explicit Runge-Kutta integration of y' = field(t,y) on [t0,t1].
/// Adaptive: Dormand-Prince 5(4) with embedded error estimate; fixed: RK4.
/// Steps whose endpoint fails `valid` are rejected (adaptive) or abort (fixed).
Trajectory integrate_ode(const OdeField& field, Eigen::VectorXd y0, double t0, double t1,
                         const StepPolicy& policy, const StateCheck& valid = {});

/// State packing for flow trajectories: y = [x_1..x_n, m_1..m_n].
Eigen::VectorXd pack_state(const std::vector<double>& x, const std::vector<double>& m);
void unpack_state(const Eigen::VectorXd& y, std::vector<double>& x, std::vector<double>& m);

/// Integrates the string flow ODEs from eq-level fields; aborts on ordering or
/// mass-positivity violation.
Trajectory integrate_flow(const DiscreteString& s, const FlowSpec& spec, double t_end,
                          const StepPolicy& policy);

/// Camassa-Holm peakon trajectories (k-th flow).
Trajectory integrate_peakons(const PeakonString& s, int k, double t_end,
                             const StepPolicy& policy);

DiscreteString string_at(const DiscreteString& s0, const Trajectory& tr, double t);
PeakonString peakons_at(const PeakonString& s0, const Trajectory& tr, double t);

}  // namespace isoflow
