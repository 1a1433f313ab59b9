#pragma once

#include <string>

#include "isoflow/config.hpp"
#include "isoflow/integrate.hpp"
#include "isoflow/spectral.hpp"

namespace isoflow {

struct VerifyThresholds {
  double spectrum_drift = 1e-8;
  double residue_law = 1e-7;
  double hamiltonian_drift = 1e-8;
  double two_route = 1e-6;
};

/// Aggregated consistency report: spectrum constancy, residue law
/// mu_j(t)/mu_j(0) = exp(t/z_j^k), Hamiltonian drift, and (when the inversion
/// case applies) ODE-vs-Hankel-reconstruction agreement along a trajectory.
struct VerifyReport {
  double spectrum_drift = 0.0;
  double residue_law_error = 0.0;
  double hamiltonian_drift = 0.0;
  double two_route_error = 0.0;
  bool two_route_checked = false;
  bool pass = false;
  VerifyThresholds thresholds;

  std::string to_json() const;
};

VerifyReport run_verify(const Config& cfg, const VerifyThresholds& thr = {});

/// SpectralData JSON: {"z": [...], "mu": [...], "gamma": g}.
std::string spectral_to_json(const SpectralData& sd);
SpectralData spectral_from_json(const std::string& text);

/// One trajectory sample row for the CSV/JSONL writers.
struct SampleRow {
  double t;
  std::vector<double> x;
  std::vector<double> m;
  double hamiltonian;
  double drift_max;
};

/// CSV header: t,x1..xn,m1..mn,H,drift_max. JSONL: one object per row.
std::string format_rows(const std::vector<SampleRow>& rows, OutputFormat fmt);

}  // namespace isoflow
