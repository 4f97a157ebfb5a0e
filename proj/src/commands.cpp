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

#include "blockade/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "blockade/cli/config.hpp"
#include "blockade/cli/output.hpp"
#include "blockade/errors.hpp"
#include "blockade/validate.hpp"

#ifndef BLOCKADE_VERSION
#define BLOCKADE_VERSION "0.0.0"
#endif

namespace blockade::cli {
namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config_file;
  std::string preset;
  std::string out;
  unsigned workers = 0;
  std::string formats;
};

struct QueryFlags {
  std::optional<double> chi;
  std::optional<double> lambda1;
  std::optional<std::string> branch;
  std::optional<double> kappa2;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_config(const CommonFlags& f) {
  json doc = json::object();
  if (!f.config_file.empty()) {
    try {
      doc = json::parse(read_file(f.config_file));
    } catch (const json::parse_error& e) {
      throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("artifact") && doc.contains("config")) doc = json(doc.at("config"));
  }
  if (!f.preset.empty()) {
    if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
    doc["preset"] = f.preset;
  }
  RunConfig c = parse_config(doc);
  if (!f.out.empty()) c.output.dir = f.out;
  if (f.workers > 0) c.workers = f.workers;
  if (!f.formats.empty()) {
    c.output.formats.clear();
    std::stringstream ss(f.formats);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item != "csv" && item != "json") throw ConfigError("--format", "unknown format '" + item + "'");
      if (!c.output.wants(item)) c.output.formats.push_back(item);
    }
  }
  return c;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json dips_json(const std::vector<Dip>& dips) {
  json arr = json::array();
  for (const auto& d : dips) arr.push_back({{"x", d.x}, {"y", d.y}});
  return arr;
}

// Emits the requested files plus the manifest, all or nothing.
void emit(const RunConfig& cfg, const std::string& command, const std::string& csv_name, const std::string& csv,
          const json& summary, std::ostream& out) {
  OutputWriter w(cfg.output.dir);
  if (cfg.output.wants("csv") && !csv_name.empty()) w.add(csv_name, csv);
  if (cfg.output.wants("json")) w.add("summary.json", summary.dump(2) + "\n");
  json files = json::array();
  for (const auto& f : w.files()) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  json manifest = {{"artifact", "blockade-lab"},
                   {"version", BLOCKADE_VERSION},
                   {"timestamp", utc_timestamp()},
                   {"command", command},
                   {"config", to_json(cfg)},
                   {"files", files}};
  if (!cfg.artifact_choices.empty()) manifest["artifact_choices"] = cfg.artifact_choices;
  if (cfg.params().kappa2 == 1.0)
    manifest["lab_units"] = {{"kappa2_MHz_angular", kPresetKappa2MHzAngular},
                             {"params", params_to_json(to_mhz_angular(cfg.params(), kPresetKappa2MHzAngular))}};
  w.add("manifest.json", manifest.dump(2) + "\n");
  w.commit();
  for (const auto& f : w.files()) out << (w.dir() / f.name).string() << "\n";
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.has_plan) throw ConfigError("plan", "sweep needs a sweep preset or an explicit plan");
  const SweepPlan& plan = cfg.plan;
  const SweepResult result = run_sweep(plan, cfg.workers);

  json summary = {{"command", "sweep"}, {"preset", cfg.preset}, {"grid_points", plan.grid_size()},
                  {"rows", result.rows.size()}, {"columns", result.wide_columns()}};
  json errors = json::array();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    if (!r.error.empty())
      errors.push_back({{"row", i}, {"coords", r.coords}, {"method", to_string(r.method)}, {"message", r.error}});
  }
  summary["errors"] = errors;

  if (plan.axes.size() == 1 && plan.axes[0].points >= 5) {
    const auto x = result.axis_values(0);
    const bool refine = plan.resolved_spec().dimension() * plan.resolved_spec().dimension() <= 1600;
    json dips = json::object();
    for (const auto& obs : plan.observables) {
      if (obs.rfind("g2", 0) != 0) continue;
      for (Method m : plan.methods()) {
        const std::string key = obs + (m == Method::Analytic ? "_analytic" : "_numeric");
        const auto y = result.series(obs, m);
        const bool usable = std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v) && v > 0; });
        if (!usable) {
          dips[key] = "not located: series has non-positive or missing values";
          continue;
        }
        std::function<double(double)> eval;
        if (refine || m == Method::Analytic)
          eval = [&plan, m, obs](double v) {
            try {
              return evaluate_observable(plan, resolve_point(plan, {v}), m, obs);
            } catch (const Error&) {
              return std::numeric_limits<double>::infinity();
            }
          };
        dips[key] = dips_json(locate_dips(x, y, eval));
      }
    }
    summary["dips"] = dips;
  }
  try {
    std::vector<double> first;
    for (const auto& a : plan.axes) first.push_back(a.values().front());
    summary["resolved_first_point"] = params_to_json(resolve_point(plan, first));
  } catch (const Error&) {
  }
  emit(cfg, "sweep", "sweep.csv", csv_text(result.wide_columns(), result.wide_rows()), summary, out);
  return kExitOk;
}

int cmd_dynamics(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.has_scenario) throw ConfigError("scenario", "dynamics needs a dynamics preset or a scenario");
  const DynamicsResult r = run_dynamics(cfg.scenario, {}, cfg.workers);
  const std::vector<std::string> cols{"scale", "t", "g2_a2", "n_a2", "g2_a1", "n_a1", "trace_drift",
                                      "hermiticity_deviation"};
  std::vector<std::vector<double>> rows;
  json variants = json::array();
  for (const auto& v : r.variants) {
    const auto& t = v.trajectory;
    for (std::size_t i = 0; i < t.times.size(); ++i)
      rows.push_back({v.scale, t.times[i], t.column("g2_a2")[i], t.column("n_a2")[i], t.column("g2_a1")[i],
                      t.column("n_a1")[i], t.trace_drift[i], t.hermiticity_deviation[i]});
    variants.push_back({{"scale", v.scale},
                        {"params", params_to_json(v.params)},
                        {"final_g2_a2", t.column("g2_a2").back()},
                        {"final_n_a2", t.column("n_a2").back()},
                        {"max_trace_drift", *std::max_element(t.trace_drift.begin(), t.trace_drift.end())},
                        {"max_hermiticity_deviation",
                         *std::max_element(t.hermiticity_deviation.begin(), t.hermiticity_deviation.end())}});
  }
  const json summary = {{"command", "dynamics"}, {"preset", cfg.preset}, {"variants", variants}};
  emit(cfg, "dynamics", "dynamics.csv", csv_text(cols, rows), summary, out);
  return kExitOk;
}

int cmd_gtau(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.has_scenario) throw ConfigError("scenario", "gtau needs a delayed-correlation preset or a scenario");
  const DelayedResult r = run_delayed(cfg.scenario, {}, cfg.workers);
  std::vector<std::vector<double>> rows;
  json variants = json::array();
  for (const auto& v : r.variants) {
    for (std::size_t i = 0; i < r.tau.size(); ++i) rows.push_back({v.scale, r.tau[i], v.g2[i]});
    const auto it = std::min_element(v.g2.begin(), v.g2.end());
    variants.push_back({{"scale", v.scale},
                        {"params", params_to_json(v.params)},
                        {"g2_zero", v.g2_zero},
                        {"min_g2", *it},
                        {"tau_at_min", r.tau[static_cast<std::size_t>(it - v.g2.begin())]},
                        {"g2_at_end", v.g2.back()}});
  }
  const json summary = {{"command", "gtau"}, {"preset", cfg.preset}, {"variants", variants}};
  emit(cfg, "gtau", "gtau.csv", csv_text({"scale", "tau", "g2"}, rows), summary, out);
  return kExitOk;
}

int cmd_optimal(RunConfig cfg, const QueryFlags& q, std::ostream& out) {
  if (q.chi) cfg.optimal.chi = q.chi;
  if (q.lambda1) cfg.optimal.lambda1 = q.lambda1;
  if (q.branch) cfg.optimal.branch = branch_from_string(*q.branch);
  if (q.kappa2) cfg.optimal.kappa2 = *q.kappa2;
  if (!cfg.optimal.chi) cfg.optimal.chi = kerr_strength(cfg.params());
  if (!cfg.optimal.lambda1) cfg.optimal.lambda1 = cfg.params().lambda1;
  const double chi = *cfg.optimal.chi;
  const double l1 = *cfg.optimal.lambda1;
  const OptimalPoint o = upb_optimal(chi, cfg.optimal.kappa2, l1, cfg.optimal.branch);
  const auto cpb = cpb_locations(chi, l1, o.lambda2);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> row{chi, l1, cfg.optimal.kappa2, o.delta2, o.lambda2, l1 * o.lambda2,
                                cpb ? cpb->plus : nan, cpb ? cpb->minus : nan};
  const std::vector<std::string> cols{"chi", "lambda1", "kappa2", "delta2", "lambda2", "lambda1_lambda2",
                                      "cpb_plus", "cpb_minus"};
  json summary = {{"command", "optimal"}, {"branch", to_string(o.branch)}};
  for (std::size_t i = 0; i < cols.size(); ++i) summary[cols[i]] = row[i];
  out << "branch=" << to_string(o.branch) << " delta2=" << format_value(o.delta2)
      << " lambda2=" << format_value(o.lambda2) << " lambda1*lambda2=" << format_value(l1 * o.lambda2) << "\n";
  emit(cfg, "optimal", "optimal.csv", csv_text(cols, {row}), summary, out);
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::vector<double>> rows;
  json blocks = json::object();
  for (int n : cfg.excitations) {
    const auto ev = excitation_block_spectrum(cfg.params(), n);
    json arr = json::array();
    for (const Complex& z : ev) {
      rows.push_back({static_cast<double>(n), z.real(), z.imag()});
      arr.push_back({z.real(), z.imag()});
    }
    blocks[std::to_string(n)] = arr;
  }
  json summary = {{"command", "spectrum"}, {"preset", cfg.preset}, {"blocks", blocks}};
  try {
    const auto e = single_excitation_eigenvalues(cfg.params());
    summary["single_excitation_closed_form"] = {{"plus", {e.plus.real(), e.plus.imag()}},
                                                {"minus", {e.minus.real(), e.minus.imag()}}};
  } catch (const InvalidArgument& e) {
    summary["single_excitation_closed_form"] = e.what();
  }
  emit(cfg, "spectrum", "spectrum.csv", csv_text({"excitations", "re", "im"}, rows), summary, out);
  return kExitOk;
}

int cmd_feasibility(RunConfig cfg, const QueryFlags& q, std::ostream& out) {
  if (q.chi) cfg.feasibility.chi = q.chi;
  if (q.kappa2) cfg.feasibility.kappa2 = *q.kappa2;
  if (!cfg.feasibility.chi) cfg.feasibility.chi = kerr_strength(cfg.params());
  const double chi = *cfg.feasibility.chi;
  const double k = cfg.feasibility.kappa2;
  const FeasibilityReport r = altdrive_blockade_feasibility(chi, k);
  std::vector<std::vector<double>> rows;
  auto add = [&](double d, double which) {
    rows.push_back({which, d, k * k - (12.0 * d * d - 4.0 * chi * d), 4.0 * d * (chi - 4.0 * d) * (chi - 4.0 * d)});
  };
  for (double d : r.condition1_roots) add(d, 1.0);
  for (double d : r.condition2_roots) add(d, 2.0);
  const json summary = {{"command", "feasibility"},
                        {"chi", chi},
                        {"kappa2", k},
                        {"condition1_roots", r.condition1_roots},
                        {"condition2_roots", r.condition2_roots},
                        {"condition1_residuals_at_condition2_roots", r.condition1_residuals},
                        {"feasible", r.feasible}};
  out << (r.feasible ? "feasible" : "infeasible: no detuning satisfies both conditions") << "\n";
  emit(cfg, "feasibility", "feasibility.csv",
       csv_text({"condition", "delta2", "residual_condition1", "residual_condition2"}, rows), summary, out);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, bool write, std::ostream& out) {
  const ValidationReport report = run_validation_suite(cfg.workers);
  json checks = json::array();
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.module << ": " << c.name << " (" << c.detail << ")\n";
    checks.push_back({{"module", c.module}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  out << report.checks.size() - report.failures() << "/" << report.checks.size() << " checks passed\n";
  if (write) emit(cfg, "validate", "", "", json{{"command", "validate"}, {"checks", checks}}, out);
  return report.passed() ? kExitOk : kExitNumerical;
}

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_file, "JSON configuration or run manifest");
  sub->add_option("--preset", f.preset, "Named preset (see `blockade-lab presets`)");
  sub->add_option("--out", f.out, "Output directory");
  sub->add_option("--workers", f.workers, "Worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--format", f.formats, "Comma-separated output formats: csv,json");
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-blockade laboratory for nonreciprocally coupled optomechanical cavities", "blockade-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BLOCKADE_VERSION);
  CommonFlags flags;
  QueryFlags query;

  std::vector<CLI::App*> subs;
  for (const char* name : {"sweep", "dynamics", "gtau", "optimal", "spectrum", "feasibility", "validate"}) {
    static const std::map<std::string, std::string> help{
        {"sweep", "Steady-state g2 over a 1D/2D parameter grid"},
        {"dynamics", "Time evolution from vacuum"},
        {"gtau", "Delayed second-order correlation"},
        {"optimal", "Optimal detuning and coupling for complete two-photon suppression"},
        {"spectrum", "Eigenvalues of the undriven Hamiltonian by excitation number"},
        {"feasibility", "Blockade conditions for a drive on the optomechanical cavity"},
        {"validate", "Run the built-in invariant suite"}};
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    add_common(sub, flags);
    subs.push_back(sub);
  }
  CLI::App* presets = app.add_subcommand("presets", "List the preset catalog");
  for (CLI::App* sub : {subs[3], subs[5]}) {
    sub->add_option("--chi", query.chi, "Kerr strength g^2/omega_m (kappa2 units)");
    sub->add_option("--kappa2", query.kappa2, "Decay rate of the driven cavity");
  }
  subs[3]->add_option("--lambda1", query.lambda1, "Hopping a1^dag a2 strength");
  subs[3]->add_option("--branch", query.branch, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (presets->parsed()) {
      for (const auto& name : preset_names()) out << std::left << std::setw(7) << name << find_preset(name).description << "\n";
      return kExitOk;
    }
    const RunConfig cfg = load_config(flags);
    if (subs[0]->parsed()) return cmd_sweep(cfg, out);
    if (subs[1]->parsed()) return cmd_dynamics(cfg, out);
    if (subs[2]->parsed()) return cmd_gtau(cfg, out);
    if (subs[3]->parsed()) return cmd_optimal(cfg, query, out);
    if (subs[4]->parsed()) return cmd_spectrum(cfg, out);
    if (subs[5]->parsed()) return cmd_feasibility(cfg, query, out);
    return cmd_validate(cfg, !flags.out.empty(), out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace blockade::cli
