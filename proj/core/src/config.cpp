#include "isoflow/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace isoflow {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& section,
                    const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + section + "." + it.key() + "'");
  }
}

double number_at(const json& obj, const std::string& section, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("field '" + section + "." + key + "' must be a number");
  return v.get<double>();
}

RobinCoeff robin_at(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") return RobinCoeff::infinity();
  if (v.is_number()) return RobinCoeff::finite(v.get<double>());
  throw ConfigError("field 'string." + key + "' must be a number or the literal \"inf\"");
}

std::vector<double> array_at(const json& obj, const std::string& section,
                             const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ConfigError("field '" + section + "." + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw ConfigError("field '" + section + "." + key + "' must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

Config load_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("document root must be an object");
  reject_unknown(doc, "<root>", {"string", "flow", "run"});
  if (!doc.contains("string") || !doc.contains("flow") || !doc.contains("run"))
    throw ConfigError("sections 'string', 'flow' and 'run' are required");

  Config cfg;

  const json& jf = doc.at("flow");
  reject_unknown(jf, "flow", {"k", "epsilon", "kernel"});
  cfg.flow.k = jf.contains("k") ? jf.at("k").get<int>() : 1;
  cfg.flow.epsilon = jf.contains("epsilon") ? number_at(jf, "flow", "epsilon") : 0.0;
  if (jf.contains("kernel")) {
    const std::string kind = jf.at("kernel").get<std::string>();
    if (kind == "string")
      cfg.flow.kernel = KernelKind::string;
    else if (kind == "ch_peakon")
      cfg.flow.kernel = KernelKind::ch_peakon;
    else
      throw ConfigError("field 'flow.kernel' must be \"string\" or \"ch_peakon\"");
  }

  const json& js = doc.at("string");
  if (cfg.flow.kernel == KernelKind::string) {
    reject_unknown(js, "string", {"positions", "masses", "h", "H"});
    if (!js.contains("h") || !js.contains("H"))
      throw ConfigError("fields 'string.h' and 'string.H' are required for the string kernel");
    DiscreteString s;
    s.x = array_at(js, "string", "positions");
    s.m = array_at(js, "string", "masses");
    s.bc.h = robin_at(js, "h");
    s.bc.H = robin_at(js, "H");
    cfg.model = s;
  } else {
    reject_unknown(js, "string", {"positions", "masses"});
    PeakonString s;
    s.x = array_at(js, "string", "positions");
    s.m = array_at(js, "string", "masses");
    cfg.model = s;
  }

  const json& jr = doc.at("run");
  reject_unknown(jr, "run",
                 {"t_end", "dt", "adaptive_tol", "sample_times", "output", "format"});
  cfg.run.t_end = jr.contains("t_end") ? number_at(jr, "run", "t_end") : 1.0;
  if (jr.contains("dt")) cfg.run.dt = number_at(jr, "run", "dt");
  if (jr.contains("adaptive_tol")) cfg.run.adaptive_tol = number_at(jr, "run", "adaptive_tol");
  if (jr.contains("sample_times")) cfg.run.sample_times = array_at(jr, "run", "sample_times");
  if (jr.contains("output")) cfg.run.output = jr.at("output").get<std::string>();
  if (jr.contains("format")) {
    const std::string f = jr.at("format").get<std::string>();
    if (f == "csv")
      cfg.run.format = OutputFormat::csv;
    else if (f == "jsonl")
      cfg.run.format = OutputFormat::jsonl;
    else
      throw ConfigError("field 'run.format' must be \"csv\" or \"jsonl\"");
  }

  // Collected validation, reported in one message.
  ValidationReport rep;
  if (cfg.is_string()) rep = validate(cfg.string());
  else rep = validate(cfg.peakons());
  const ValidationReport fr = validate(cfg.flow);
  rep.violations.insert(rep.violations.end(), fr.violations.begin(), fr.violations.end());
  if (cfg.run.dt.has_value() == cfg.run.adaptive_tol.has_value())
    rep.violations.push_back("exactly one of run.dt / run.adaptive_tol must be set");
  if (cfg.run.dt && !(*cfg.run.dt > 0.0)) rep.violations.push_back("run.dt must be positive");
  if (cfg.run.adaptive_tol && !(*cfg.run.adaptive_tol > 0.0))
    rep.violations.push_back("run.adaptive_tol must be positive");
  if (!(cfg.run.t_end >= 0.0)) rep.violations.push_back("run.t_end must be >= 0");
  for (double t : cfg.run.sample_times) {
    if (t < 0.0 || t > cfg.run.t_end) {
      rep.violations.push_back("run.sample_times must lie in [0, t_end]");
      break;
    }
  }
  if (!rep.ok()) throw ConfigError("validation failed: " + rep.joined());
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string serialize(const Config& cfg) {
  json doc;
  json js;
  auto robin_json = [](const RobinCoeff& r) -> json {
    if (r.is_infinite()) return "inf";
    return r.value();
  };
  if (cfg.is_string()) {
    const auto& s = cfg.string();
    js["positions"] = s.x;
    js["masses"] = s.m;
    js["h"] = robin_json(s.bc.h);
    js["H"] = robin_json(s.bc.H);
  } else {
    const auto& s = cfg.peakons();
    js["positions"] = s.x;
    js["masses"] = s.m;
  }
  doc["string"] = js;
  doc["flow"] = {{"k", cfg.flow.k},
                 {"epsilon", cfg.flow.epsilon},
                 {"kernel", cfg.flow.kernel == KernelKind::string ? "string" : "ch_peakon"}};
  json jr;
  jr["t_end"] = cfg.run.t_end;
  if (cfg.run.dt) jr["dt"] = *cfg.run.dt;
  if (cfg.run.adaptive_tol) jr["adaptive_tol"] = *cfg.run.adaptive_tol;
  if (!cfg.run.sample_times.empty()) jr["sample_times"] = cfg.run.sample_times;
  if (!cfg.run.output.empty()) jr["output"] = cfg.run.output;
  jr["format"] = cfg.run.format == OutputFormat::csv ? "csv" : "jsonl";
  doc["run"] = jr;
  return doc.dump(2);
}

}  // namespace isoflow
