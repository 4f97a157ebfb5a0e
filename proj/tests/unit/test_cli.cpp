// Copyright 2026 The blockade-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "blockade/cli/commands.hpp"
#include "blockade/cli/config.hpp"
#include "blockade/cli/output.hpp"
#include "blockade/errors.hpp"

using namespace blockade;
using namespace blockade::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunOutput {
  int code = 0;
  std::string out;
  std::string err;
};

RunOutput invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "blockade-lab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("blockade-cli-" + std::to_string(std::rand()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string config_error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal preset config materializes the caption parameters") {
  const RunConfig c = parse_config(R"({"preset": "fig2a"})");
  CHECK(c.has_plan);
  const SystemParams& p = c.params();
  CHECK(p.kappa1 == 1.0);
  CHECK(p.kappa2 == 1.0);
  CHECK(p.omega_m == 500.0);
  CHECK(p.g == doctest::Approx(21.0));
  CHECK(p.lambda1 == 0.95);
  CHECK(p.drive == 0.02);
  CHECK(p.gamma_m == doctest::Approx(5e-4));
  CHECK(c.plan.axes.size() == 1);
  CHECK(c.plan.axes[0].points == 501);
  CHECK(c.plan.slaving.at(0).branch == Branch::Plus);

  const json j = to_json(c);
  CHECK(j.at("params").at("omega_m") == 500.0);
  CHECK(to_json(parse_config(j.dump())) == j);
}

TEST_CASE("every preset round-trips through its materialized config") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const json j = to_json(config_for_preset(name));
    CHECK(to_json(parse_config(j)) == j);
  }
}

TEST_CASE("schema violations name the field") {
  CHECK(config_error_path(R"({"preset": "fig2a", "colour": 1})").find("colour") != std::string::npos);
  CHECK(config_error_path(R"({"params": {"kapa2": 1}})").find("params.kapa2") != std::string::npos);
  CHECK(config_error_path(R"({"workers": 0})").find("workers") != std::string::npos);
  CHECK(config_error_path(R"({"units": "furlongs"})").find("units") != std::string::npos);
  CHECK(config_error_path(R"({"preset": "fig2b", "plan": {"axes": [{"parameter": "lambda2", "min": 0.5, "max": 2, "points": 5}]}})")
            .find("slaved and swept") != std::string::npos);
  CHECK(config_error_path("{not json").find("invalid JSON") != std::string::npos);
  CHECK(config_error_path(R"({"units": "MHz-angular", "params": {"g": 3}})").find("kappa2") != std::string::npos);
}

TEST_CASE("MHz-angular input is converted to kappa2 units") {
  const RunConfig c = parse_config(
      R"({"preset": "fig2b", "units": "MHz-angular",
          "params": {"kappa2": 0.9424777960769379, "kappa1": 0.9424777960769379, "omega_m": 471.23889803846896,
                     "g": 19.792033717615696, "drive": 0.018849555921538757, "n_th": 0.5}})");
  CHECK(c.params().kappa2 == 1.0);
  CHECK(c.params().omega_m == doctest::Approx(500.0).epsilon(1e-14));
  CHECK(c.params().g == doctest::Approx(21.0).epsilon(1e-14));
  CHECK(c.params().drive == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(c.params().n_th == 0.5);
  CHECK(c.params().units == UnitSystem::Kappa2);
}

TEST_CASE("CSV formatting") {
  CHECK(format_value(0.5446) == "5.44600000000e-01");
  CHECK(format_value(-1.0) == "-1.00000000000e+00");
  CHECK(format_value(std::nan("")).empty());
  CHECK(csv_text({"delta2", "g2_analytic"}, {}) == "# units: kappa2\ndelta2,g2_analytic\n");
  CHECK(csv_text({"x", "y"}, {{1.0, 2.0}}) == "# units: kappa2\nx,y\n1.00000000000e+00,2.00000000000e+00\n");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.718281828459045e-7, 1e-300}) {
    const double back = std::stod(format_value(v));
    CHECK(std::abs(back - v) <= 5e-12 * std::abs(v));
  }
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("output writer is all or nothing") {
  TempDir t;
  {
    OutputWriter w(t.path / "run");
    w.add("a.csv", "x\n");
    CHECK(fs::exists(t.path / "run" / ".a.csv.partial"));
  }
  CHECK_FALSE(fs::exists(t.path / "run" / ".a.csv.partial"));
  CHECK_FALSE(fs::exists(t.path / "run" / "a.csv"));
  OutputWriter w(t.path / "run");
  w.add("a.csv", "x\n");
  w.commit();
  CHECK(slurp(t.path / "run" / "a.csv") == "x\n");
  CHECK(w.files().at(0).sha256 == sha256_hex("x\n"));
}

TEST_CASE("optimal subcommand") {
  const RunOutput r = invoke({"optimal", "--chi", "0.882", "--lambda1", "0.95", "--branch", "minus", "--format", "csv",
                              "--out", (fs::temp_directory_path() / "blockade-cli-optimal").string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("delta2=5.4464") != std::string::npos);
  CHECK(r.out.find("lambda2=9.6884") != std::string::npos);
  fs::remove_all(fs::temp_directory_path() / "blockade-cli-optimal");
}

TEST_CASE("sweep columns and manifest rerun") {
  TempDir t;
  const fs::path cfg = t.path / "small.json";
  write(cfg, R"({"preset": "fig2a", "plan": {"axes": [{"parameter": "delta2", "min": -1, "max": 1, "points": 9}]}})");
  const RunOutput first = invoke({"sweep", "--config", cfg.string(), "--out", (t.path / "a").string()});
  REQUIRE(first.code == kExitOk);
  const std::string csv = slurp(t.path / "a" / "sweep.csv");
  CHECK(csv.rfind("# units: kappa2\ndelta2,g2_analytic,g2_numeric\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);

  const json manifest = json::parse(slurp(t.path / "a" / "manifest.json"));
  CHECK(manifest.at("command") == "sweep");
  CHECK(manifest.at("lab_units").at("kappa2_MHz_angular") == doctest::Approx(0.9424777960769379));
  bool listed = false;
  for (const auto& f : manifest.at("files"))
    if (f.at("name") == "sweep.csv") {
      listed = true;
      CHECK(f.at("sha256") == sha256_hex(csv));
    }
  CHECK(listed);

  const RunOutput second = invoke({"sweep", "--config", (t.path / "a" / "manifest.json").string(), "--workers", "4",
                                   "--out", (t.path / "b").string()});
  REQUIRE(second.code == kExitOk);
  CHECK(slurp(t.path / "b" / "sweep.csv") == csv);
}

TEST_CASE("exit codes") {
  TempDir t;
  CHECK(invoke({"sweep", "--preset", "nonexistent", "--out", t.path.string()}).code == kExitConfig);
  CHECK(invoke({"frobnicate"}).code == kExitConfig);

  const fs::path big = t.path / "big.json";
  write(big, R"({"preset": "fig2b", "cutoffs": {"a1": 80, "a2": 80}})");
  const RunOutput cap = invoke({"sweep", "--config", big.string(), "--out", (t.path / "cap").string()});
  CHECK(cap.code == kExitCapacity);
  CHECK_FALSE(fs::exists(t.path / "cap" / "sweep.csv"));

  const fs::path blocker = t.path / "file";
  write(blocker, "x");
  const RunOutput io = invoke({"optimal", "--chi", "1", "--lambda1", "1", "--out", (blocker / "sub").string()});
  CHECK(io.code == kExitIo);

  const RunOutput num = invoke({"optimal", "--chi", "1e-6", "--lambda1", "1", "--out", (t.path / "n").string()});
  CHECK(num.code == kExitConfig);
}

TEST_CASE("feasibility and spectrum subcommands") {
  TempDir t;
  const RunOutput f = invoke({"feasibility", "--chi", "10", "--out", (t.path / "f").string()});
  CHECK(f.code == kExitOk);
  const json s = json::parse(slurp(t.path / "f" / "summary.json"));
  CHECK(s.at("feasible") == false);
  const RunOutput sp = invoke({"spectrum", "--preset", "fig5a", "--out", (t.path / "s").string()});
  CHECK(sp.code == kExitOk);
  CHECK(fs::exists(t.path / "s" / "spectrum.csv"));
}

TEST_CASE("standalone binary") {
  const char* bin = std::getenv("BLOCKADE_LAB_BIN");
  if (bin == nullptr) return;
  TempDir t;
  const std::string cmd = std::string(bin) + " optimal --chi 0.882 --lambda1 0.95 --format csv --out " +
                          (t.path / "o").string() + " > " + (t.path / "stdout.txt").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(t.path / "stdout.txt").find("branch=minus") != std::string::npos);
  const std::string bad = std::string(bin) + " sweep --preset nope --out " + t.path.string() + " 2>/dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == kExitConfig);
}
