#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "isoflow_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(ISOFLOW_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

const char* kSingleMass = R"({
  "string": {"positions": [0.5], "masses": [1.0], "h": 1.0, "H": 0.0},
  "flow": {"k": 1, "epsilon": 0.0, "kernel": "string"},
  "run": {"t_end": 0.1, "adaptive_tol": 1e-12}
})";

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

std::vector<double> split_csv(const std::string& line) {
  std::vector<double> vals;
  std::istringstream in(line);
  std::string tok;
  while (std::getline(in, tok, ',')) vals.push_back(std::stod(tok));
  return vals;
}

}  // namespace

TEST_CASE("simulate: csv trajectory of the single mass") {
  const auto cfg = write_config("single.json", kSingleMass);
  const auto r = run_cli("simulate --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 12);  // header + 11 default samples
  CHECK(ls[0] == "t,x1,m1,H,drift_max");
  const auto last = split_csv(ls.back());
  REQUIRE(last.size() == 5);
  CHECK(last[0] == doctest::Approx(0.1));
  CHECK(last[1] == doctest::Approx(1.5 * std::exp(0.15) - 1.0).epsilon(1e-8));
  CHECK(last[2] == doctest::Approx(std::exp(-0.15)).epsilon(1e-8));
  CHECK(last[4] < 1e-8);  // spectral drift column
}

TEST_CASE("simulate: jsonl format and --output") {
  const auto cfg = write_config("single.json", kSingleMass);
  const fs::path out = scratch_dir() / "traj.jsonl";
  const auto r = run_cli("simulate --config " + cfg.string() + " --format jsonl --output " +
                         out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  const auto ls = lines_of(slurp(out));
  REQUIRE(ls.size() == 11);
  const auto row = nlohmann::json::parse(ls.back());
  CHECK(row.at("t").get<double>() == doctest::Approx(0.1));
  CHECK(row.at("m")[0].get<double>() == doctest::Approx(std::exp(-0.15)).epsilon(1e-8));
}

TEST_CASE("simulate runs are bit-stable") {
  const auto cfg = write_config("single.json", kSingleMass);
  const auto a = run_cli("simulate --config " + cfg.string());
  const auto b = run_cli("simulate --config " + cfg.string());
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("solve-exact matches the closed form") {
  const auto cfg = write_config("single.json", kSingleMass);
  const auto r = run_cli("solve-exact --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 12);
  const auto last = split_csv(ls.back());
  CHECK(last[1] == doctest::Approx(1.5 * std::exp(0.15) - 1.0).epsilon(1e-12));
  CHECK(last[2] == doctest::Approx(std::exp(-0.15)).epsilon(1e-12));
}

TEST_CASE("spectrum emits the spectral data as JSON") {
  const auto cfg = write_config("single.json", kSingleMass);
  const auto r = run_cli("spectrum --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("z").size() == 1);
  CHECK(j.at("z")[0].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(j.at("mu")[0].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(j.at("gamma").get<double>() == doctest::Approx(0.5));
}

TEST_CASE("verify exits 0 on a consistent configuration") {
  const auto cfg = write_config("single.json", kSingleMass);
  const auto r = run_cli("verify --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("spectrum_drift").get<double>() < 1e-8);
}

TEST_CASE("verify --tol can be made to fail") {
  const auto cfg = write_config("single.json", kSingleMass);
  const auto r = run_cli("verify --config " + cfg.string() + " --tol 1e-300");
  CHECK(r.exit_code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK_FALSE(j.at("pass").get<bool>());
}

TEST_CASE("invalid configuration exits 2 with a JSON error") {
  const auto cfg = write_config("bad.json", R"({
    "string": {"positions": [0.5], "masses": [1.0], "h": 0.0, "H": 0.0},
    "flow": {}, "run": {"adaptive_tol": 1e-10}
  })");
  const auto r = run_cli("simulate --config " + cfg.string());
  CHECK(r.exit_code == 2);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j.at("error").get<std::string>().find("(h,H)=(0,0)") != std::string::npos);
}

TEST_CASE("missing config file exits 2") {
  const auto r = run_cli("spectrum --config /nonexistent/cfg.json");
  CHECK(r.exit_code == 2);
  CHECK(nlohmann::json::parse(r.err).contains("error"));
}

TEST_CASE("usage errors are rejected by the parser") {
  CHECK(run_cli("simulate").exit_code != 0);
  const auto cfg = write_config("single.json", kSingleMass);
  CHECK(run_cli("simulate --config " + cfg.string() + " --format xml").exit_code != 0);
  CHECK(run_cli("").exit_code != 0);
}

TEST_CASE("peakon simulation conserves total mass") {
  const auto cfg = write_config("peakons.json", R"({
    "string": {"positions": [-1.0, 1.0], "masses": [1.5, 0.8]},
    "flow": {"k": 1, "kernel": "ch_peakon"},
    "run": {"t_end": 1.0, "adaptive_tol": 1e-11}
  })");
  const auto r = run_cli("simulate --config " + cfg.string() + " --format jsonl");
  REQUIRE(r.exit_code == 0);
  for (const auto& line : lines_of(r.out)) {
    const auto row = nlohmann::json::parse(line);
    const double mass = row.at("m")[0].get<double>() + row.at("m")[1].get<double>();
    CHECK(mass == doctest::Approx(2.3).epsilon(1e-10));
    CHECK(row.at("drift_max").get<double>() < 1e-10);
  }
}
