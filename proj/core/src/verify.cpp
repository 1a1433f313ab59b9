#include "isoflow/verify.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "isoflow/flow.hpp"
#include "isoflow/peakon.hpp"
#include "isoflow/stieltjes.hpp"

namespace isoflow {

namespace {

double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

StepPolicy policy_from(const RunParams& run) {
  if (run.dt) return StepPolicy::fixed(*run.dt);
  return StepPolicy::adaptive(run.adaptive_tol.value_or(1e-10));
}

}  // namespace

VerifyReport run_verify(const Config& cfg, const VerifyThresholds& thr) {
  VerifyReport rep;
  rep.thresholds = thr;
  if (!cfg.is_string())
    throw std::invalid_argument("verify: implemented for the string kernel");
  if (cfg.flow.epsilon > 0.0)
    throw std::invalid_argument(
        "verify: residue law is established for the truncated flows; use epsilon=0");

  const DiscreteString& s0 = cfg.string();
  const int k = cfg.flow.k;
  const double t_end = cfg.run.t_end;
  const Trajectory tr = integrate_flow(s0, cfg.flow, t_end, policy_from(cfg.run));
  if (tr.aborted) throw std::runtime_error("verify: integration aborted: " + tr.diagnostic);

  const SpectralData sd0 = spectrum(s0);
  const double ham0 = hamiltonian(s0, k);
  std::vector<double> times;
  const int samples = 8;
  for (int i = 1; i <= samples; ++i) times.push_back(t_end * i / samples);

  for (double t : times) {
    const DiscreteString st = string_at(s0, tr, t);
    const SpectralData sdt = spectrum(st);
    for (int j = 0; j < sd0.n(); ++j) {
      rep.spectrum_drift = std::max(rep.spectrum_drift, rel_err(sdt.z[j], sd0.z[j]));
      const double law = std::exp(t / std::pow(sd0.z[j], k));
      rep.residue_law_error =
          std::max(rep.residue_law_error, rel_err(sdt.mu[j] / sd0.mu[j], law));
    }
    rep.hamiltonian_drift = std::max(rep.hamiltonian_drift, rel_err(hamiltonian(st, k), ham0));
  }

  // Two-route check in the case the Hankel inversion covers.
  if (s0.bc.H.is_zero()) {
    rep.two_route_checked = true;
    for (double t : times) {
      const DiscreteString ode_route = string_at(s0, tr, t);
      const DiscreteString exact_route = invert(evolve_spectral(sd0, k, t), s0.bc).string;
      for (int j = 0; j < s0.n(); ++j) {
        rep.two_route_error =
            std::max(rep.two_route_error, rel_err(ode_route.x[j], exact_route.x[j]));
        rep.two_route_error =
            std::max(rep.two_route_error, rel_err(ode_route.m[j], exact_route.m[j]));
      }
    }
  }

  rep.pass = rep.spectrum_drift <= thr.spectrum_drift &&
             rep.residue_law_error <= thr.residue_law &&
             rep.hamiltonian_drift <= thr.hamiltonian_drift &&
             (!rep.two_route_checked || rep.two_route_error <= thr.two_route);
  return rep;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["spectrum_drift"] = spectrum_drift;
  j["residue_law_error"] = residue_law_error;
  j["hamiltonian_drift"] = hamiltonian_drift;
  j["two_route_error"] = two_route_checked ? nlohmann::json(two_route_error) : nlohmann::json();
  j["pass"] = pass;
  j["thresholds"] = {{"spectrum_drift", thresholds.spectrum_drift},
                     {"residue_law", thresholds.residue_law},
                     {"hamiltonian_drift", thresholds.hamiltonian_drift},
                     {"two_route", thresholds.two_route}};
  return j.dump(2);
}

std::string spectral_to_json(const SpectralData& sd) {
  nlohmann::json j;
  j["z"] = sd.z;
  j["mu"] = sd.mu;
  j["gamma"] = sd.gamma;
  return j.dump(2);
}

SpectralData spectral_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SpectralData sd;
  sd.z = j.at("z").get<std::vector<double>>();
  sd.mu = j.at("mu").get<std::vector<double>>();
  sd.gamma = j.at("gamma").get<double>();
  return sd;
}

std::string format_rows(const std::vector<SampleRow>& rows, OutputFormat fmt) {
  std::ostringstream os;
  os.precision(17);
  if (fmt == OutputFormat::csv) {
    const std::size_t n = rows.empty() ? 0 : rows.front().x.size();
    os << "t";
    for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
    for (std::size_t i = 1; i <= n; ++i) os << ",m" << i;
    os << ",H,drift_max\n";
    for (const auto& r : rows) {
      os << r.t;
      for (double v : r.x) os << "," << v;
      for (double v : r.m) os << "," << v;
      os << "," << r.hamiltonian << "," << r.drift_max << "\n";
    }
  } else {
    for (const auto& r : rows) {
      nlohmann::json j;
      j["t"] = r.t;
      j["x"] = r.x;
      j["m"] = r.m;
      j["H"] = r.hamiltonian;
      j["drift_max"] = r.drift_max;
      os << j.dump() << "\n";
    }
  }
  return os.str();
}

}  // namespace isoflow
