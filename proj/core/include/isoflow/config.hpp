#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isoflow/types.hpp"

namespace isoflow {

enum class OutputFormat { csv, jsonl };

struct RunParams {
  double t_end = 1.0;
  std::optional<double> dt;            // fixed-step
  std::optional<double> adaptive_tol;  // adaptive (exactly one of the two)
  std::vector<double> sample_times;    // empty: evenly spaced default
  std::string output;                  // empty: stdout
  OutputFormat format = OutputFormat::csv;
};

/// Parsed configuration document. `model` holds a string on [0,1] or a peakon
/// configuration depending on flow.kernel.
struct Config {
  std::variant<DiscreteString, PeakonString> model;
  FlowSpec flow;
  RunParams run;

  bool is_string() const { return std::holds_alternative<DiscreteString>(model); }
  const DiscreteString& string() const { return std::get<DiscreteString>(model); }
  const PeakonString& peakons() const { return std::get<PeakonString>(model); }
};

/// Raised on malformed documents; message carries field-level diagnostics.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the JSON configuration document (sections string/flow/run; schema in
/// the README). Unknown keys are rejected; validation failures list all
/// violations. load_config(serialize(cfg)) is the identity on valid configs.
Config load_config(const std::string& text);
Config load_config_file(const std::string& path);
std::string serialize(const Config& cfg);

}  // namespace isoflow
