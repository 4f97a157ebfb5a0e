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

#include "blockade/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "blockade/errors.hpp"

namespace blockade::cli {
namespace {

using nlohmann::json;

const char* kind_name(const json& v) { return v.type_name(); }

// Walks one JSON object, rejecting keys outside `allowed`.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    for (auto it = value_.begin(); it != value_.end(); ++it) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
        throw ConfigError(join(it.key()), "unknown key");
    }
  }

  bool has(const char* key) const { return value_.contains(key); }
  const json& raw(const char* key) const { return value_.at(key); }
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double number(const char* key) const {
    const json& v = value_.at(key);
    if (!v.is_number()) throw ConfigError(join(key), std::string("expected a number, got ") + kind_name(v));
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(join(key), "must be finite");
    return d;
  }

  long long integer(const char* key) const {
    const json& v = value_.at(key);
    if (!v.is_number_integer()) throw ConfigError(join(key), std::string("expected an integer, got ") + kind_name(v));
    return v.get<long long>();
  }

  std::string string(const char* key) const {
    const json& v = value_.at(key);
    if (!v.is_string()) throw ConfigError(join(key), std::string("expected a string, got ") + kind_name(v));
    return v.get<std::string>();
  }

  bool boolean(const char* key) const {
    const json& v = value_.at(key);
    if (!v.is_boolean()) throw ConfigError(join(key), std::string("expected a boolean, got ") + kind_name(v));
    return v.get<bool>();
  }

  const json& array(const char* key) const {
    const json& v = value_.at(key);
    if (!v.is_array()) throw ConfigError(join(key), std::string("expected an array, got ") + kind_name(v));
    return v;
  }

  Node child(const char* key) const { return Node(value_.at(key), join(key)); }

 private:
  const json& value_;
  std::string path_;
};

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

const std::vector<std::pair<const char*, double SystemParams::*>>& param_fields() {
  static const std::vector<std::pair<const char*, double SystemParams::*>> fields{
      {"delta1", &SystemParams::delta1},   {"delta2", &SystemParams::delta2},
      {"omega_m", &SystemParams::omega_m}, {"lambda1", &SystemParams::lambda1},
      {"lambda2", &SystemParams::lambda2}, {"g", &SystemParams::g},
      {"drive", &SystemParams::drive},     {"kappa1", &SystemParams::kappa1},
      {"kappa2", &SystemParams::kappa2},   {"gamma_m", &SystemParams::gamma_m},
      {"n_th", &SystemParams::n_th}};
  return fields;
}

void read_params(const Node& n, UnitSystem units, SystemParams& p) {
  n.allow({"delta1", "delta2", "omega_m", "lambda1", "lambda2", "g", "drive", "kappa1", "kappa2", "gamma_m",
           "n_th"});
  double scale = 1.0;
  if (units == UnitSystem::MHzAngular) {
    if (!n.has("kappa2")) throw ConfigError(n.join("kappa2"), "required when units is MHz-angular");
    scale = n.number("kappa2");
    if (!(scale > 0)) throw ConfigError(n.join("kappa2"), "must be > 0");
  }
  for (const auto& [key, member] : param_fields()) {
    if (!n.has(key)) continue;
    const double v = n.number(key);
    p.*member = std::string(key) == "n_th" ? v : v / scale;
  }
  p.units = UnitSystem::Kappa2;
}

std::vector<Slaving> read_slaving(const Node& parent, const char* key) {
  std::vector<Slaving> out;
  const json& arr = parent.array(key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Node s(arr[i], parent.join(key) + "[" + std::to_string(i) + "]");
    s.allow({"target", "relation", "branch", "scale"});
    Slaving v;
    if (!s.has("target")) throw ConfigError(s.join("target"), "required");
    v.target = s.string("target");
    if (s.has("relation")) v.relation = guarded(s.join("relation"), [&] { return relation_from_string(s.string("relation")); });
    if (s.has("branch")) v.branch = guarded(s.join("branch"), [&] { return branch_from_string(s.string("branch")); });
    if (s.has("scale")) v.scale = s.number("scale");
    out.push_back(v);
  }
  return out;
}

json slaving_to_json(const std::vector<Slaving>& slaving) {
  json arr = json::array();
  for (const auto& s : slaving)
    arr.push_back({{"target", s.target}, {"relation", to_string(s.relation)}, {"branch", to_string(s.branch)},
                   {"scale", s.scale}});
  return arr;
}

HilbertSpec read_cutoffs(const Node& n, ModelVariant variant) {
  std::vector<std::string> labels{"a1", "a2"};
  if (variant == ModelVariant::Full) labels.push_back("b");
  const HilbertSpec defaults = default_spec(variant);
  std::vector<Mode> modes;
  for (const auto& label : labels) {
    std::size_t c = defaults.cutoff(label);
    if (n.has(label.c_str())) {
      const long long v = n.integer(label.c_str());
      if (v < 2) throw ConfigError(n.join(label), "cutoff must be >= 2");
      c = static_cast<std::size_t>(v);
    }
    modes.push_back({label, c});
  }
  if (variant == ModelVariant::Full) n.allow({"a1", "a2", "b"});
  else n.allow({"a1", "a2"});
  return guarded("cutoffs", [&] { return HilbertSpec(modes); });
}

void sync_shared(RunConfig& c) {
  c.scenario.base = c.plan.fixed;
  c.scenario.variant = c.plan.variant;
  c.scenario.spec = c.plan.spec;
  c.scenario.master_equation = c.plan.master_equation;
}

}  // namespace

bool OutputOptions::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

RunConfig config_for_preset(const std::string& preset) {
  RunConfig c;
  if (preset.empty()) return c;
  const Preset p = guarded("preset", [&] { return find_preset(preset); });
  c.preset = preset;
  c.artifact_choices = p.artifact_choices;
  if (p.kind == PresetKind::Sweep) {
    c.plan = p.plan;
    c.has_plan = true;
  } else {
    c.scenario = p.scenario;
    c.has_scenario = true;
    c.plan.fixed = p.scenario.base;
    c.plan.variant = p.scenario.variant;
    c.plan.spec = p.scenario.spec;
    c.plan.master_equation = p.scenario.master_equation;
    c.plan.axes.clear();
  }
  sync_shared(c);
  return c;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig parse_config(const json& input) {
  const json* docp = &input;
  if (input.is_object() && input.contains("artifact") && input.contains("config")) docp = &input.at("config");
  const Node root(*docp, "");
  root.allow({"preset", "units", "params", "variant", "cutoffs", "plan", "scenario", "method",
              "lindblad_convention", "hermitize", "workers", "output", "optimal", "feasibility", "excitations"});

  RunConfig c = config_for_preset(root.has("preset") ? root.string("preset") : std::string());

  UnitSystem units = UnitSystem::Kappa2;
  if (root.has("units")) units = guarded("units", [&] { return unit_system_from_string(root.string("units")); });
  if (root.has("params")) read_params(root.child("params"), units, c.plan.fixed);
  else if (units == UnitSystem::MHzAngular)
    throw ConfigError("params", "units is MHz-angular but no params were given");

  if (root.has("variant")) {
    const ModelVariant v = guarded("variant", [&] { return model_variant_from_string(root.string("variant")); });
    if (v != c.plan.variant) c.plan.spec.reset();
    c.plan.variant = v;
  }
  if (root.has("cutoffs")) c.plan.spec = read_cutoffs(root.child("cutoffs"), c.plan.variant);
  if (root.has("method")) c.plan.method = guarded("method", [&] { return method_from_string(root.string("method")); });
  if (root.has("lindblad_convention"))
    c.plan.master_equation.convention = guarded("lindblad_convention", [&] {
      return dissipator_convention_from_string(root.string("lindblad_convention"));
    });
  if (root.has("hermitize")) c.plan.master_equation.hermitize = root.boolean("hermitize");

  if (root.has("plan")) {
    const Node n = root.child("plan");
    n.allow({"axes", "observables", "slaving", "tie_detunings"});
    c.has_plan = true;
    if (n.has("axes")) {
      c.plan.axes.clear();
      const json& arr = n.array("axes");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const Node a(arr[i], "plan.axes[" + std::to_string(i) + "]");
        a.allow({"parameter", "min", "max", "points", "log_scale"});
        for (const char* k : {"parameter", "min", "max", "points"})
          if (!a.has(k)) throw ConfigError(a.join(k), "required");
        Axis axis;
        axis.parameter = a.string("parameter");
        axis.min = a.number("min");
        axis.max = a.number("max");
        const long long pts = a.integer("points");
        if (pts < 1) throw ConfigError(a.join("points"), "must be >= 1");
        axis.points = static_cast<std::size_t>(pts);
        if (a.has("log_scale")) axis.log_scale = a.boolean("log_scale");
        c.plan.axes.push_back(axis);
      }
    }
    if (n.has("observables")) {
      c.plan.observables.clear();
      const json& arr = n.array("observables");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) throw ConfigError("plan.observables[" + std::to_string(i) + "]", "expected a string");
        c.plan.observables.push_back(arr[i].get<std::string>());
      }
    }
    if (n.has("slaving")) c.plan.slaving = read_slaving(n, "slaving");
    if (n.has("tie_detunings")) c.plan.tie_detunings = n.boolean("tie_detunings");
  }

  if (root.has("scenario")) {
    const Node n = root.child("scenario");
    n.allow({"scales", "t_end", "dt", "tau_end", "dtau", "slaving", "tie_detunings"});
    c.has_scenario = true;
    if (n.has("scales")) {
      c.scenario.scales.clear();
      const json& arr = n.array("scales");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) throw ConfigError("scenario.scales[" + std::to_string(i) + "]", "expected a number");
        c.scenario.scales.push_back(arr[i].get<double>());
      }
    }
    if (n.has("t_end")) c.scenario.t_end = n.number("t_end");
    if (n.has("dt")) c.scenario.dt = n.number("dt");
    if (n.has("tau_end")) c.scenario.tau_end = n.number("tau_end");
    if (n.has("dtau")) c.scenario.dtau = n.number("dtau");
    if (n.has("slaving")) c.scenario.slaving = read_slaving(n, "slaving");
    if (n.has("tie_detunings")) c.scenario.tie_detunings = n.boolean("tie_detunings");
  }

  if (root.has("excitations")) {
    c.excitations.clear();
    const json& arr = root.array("excitations");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "excitations[" + std::to_string(i) + "]";
      if (!arr[i].is_number_integer()) throw ConfigError(path, "expected an integer");
      const int k = arr[i].get<int>();
      if (k < 0 || k > 2) throw ConfigError(path, "excitation number must be 0, 1 or 2");
      c.excitations.push_back(k);
    }
  }
  if (root.has("optimal")) {
    const Node n = root.child("optimal");
    n.allow({"chi", "lambda1", "branch", "kappa2"});
    if (n.has("chi")) c.optimal.chi = n.number("chi");
    if (n.has("lambda1")) c.optimal.lambda1 = n.number("lambda1");
    if (n.has("branch")) c.optimal.branch = guarded("optimal.branch", [&] { return branch_from_string(n.string("branch")); });
    if (n.has("kappa2")) c.optimal.kappa2 = n.number("kappa2");
  }
  if (root.has("feasibility")) {
    const Node n = root.child("feasibility");
    n.allow({"chi", "kappa2"});
    if (n.has("chi")) c.feasibility.chi = n.number("chi");
    if (n.has("kappa2")) c.feasibility.kappa2 = n.number("kappa2");
  }
  if (root.has("workers")) {
    const long long w = root.integer("workers");
    if (w < 1 || w > 256) throw ConfigError("workers", "must be between 1 and 256");
    c.workers = static_cast<unsigned>(w);
  }
  if (root.has("output")) {
    const Node n = root.child("output");
    n.allow({"dir", "formats"});
    if (n.has("dir")) c.output.dir = n.string("dir");
    if (n.has("formats")) {
      c.output.formats.clear();
      const json& arr = n.array("formats");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "output.formats[" + std::to_string(i) + "]";
        if (!arr[i].is_string()) throw ConfigError(path, "expected a string");
        const std::string f = arr[i].get<std::string>();
        if (f != "csv" && f != "json") throw ConfigError(path, "unknown format '" + f + "' (expected csv or json)");
        if (!c.output.wants(f)) c.output.formats.push_back(f);
      }
    }
  }

  sync_shared(c);
  guarded("params", [&] { c.plan.fixed.validate(); });
  if (c.has_plan) guarded("plan", [&] { c.plan.validate(); });
  if (c.has_scenario) guarded("scenario", [&] { c.scenario.validate(); });
  return c;
}

json params_to_json(const SystemParams& p) {
  json out = json::object();
  for (const auto& [key, member] : param_fields()) out[key] = p.*member;
  return out;
}

json to_json(const RunConfig& c) {
  json out = json::object();
  if (!c.preset.empty()) out["preset"] = c.preset;
  out["units"] = to_string(UnitSystem::Kappa2);
  out["params"] = params_to_json(c.plan.fixed);
  out["variant"] = to_string(c.plan.variant);
  json cutoffs = json::object();
  const HilbertSpec spec = c.spec();
  for (const auto& m : spec.modes()) cutoffs[m.label] = m.cutoff;
  out["cutoffs"] = cutoffs;
  out["method"] = to_string(c.plan.method);
  out["lindblad_convention"] = to_string(c.plan.master_equation.convention);
  out["hermitize"] = c.plan.master_equation.hermitize;
  if (c.has_plan) {
    json axes = json::array();
    for (const auto& a : c.plan.axes)
      axes.push_back({{"parameter", a.parameter}, {"min", a.min}, {"max", a.max}, {"points", a.points},
                      {"log_scale", a.log_scale}});
    out["plan"] = {{"axes", axes},
                   {"observables", c.plan.observables},
                   {"slaving", slaving_to_json(c.plan.slaving)},
                   {"tie_detunings", c.plan.tie_detunings}};
  }
  if (c.has_scenario) {
    out["scenario"] = {{"scales", c.scenario.scales},
                       {"t_end", c.scenario.t_end},
                       {"dt", c.scenario.dt},
                       {"tau_end", c.scenario.tau_end},
                       {"dtau", c.scenario.dtau},
                       {"slaving", slaving_to_json(c.scenario.slaving)},
                       {"tie_detunings", c.scenario.tie_detunings}};
  }
  out["excitations"] = c.excitations;
  json opt = {{"branch", to_string(c.optimal.branch)}, {"kappa2", c.optimal.kappa2}};
  if (c.optimal.chi) opt["chi"] = *c.optimal.chi;
  if (c.optimal.lambda1) opt["lambda1"] = *c.optimal.lambda1;
  out["optimal"] = opt;
  json feas = {{"kappa2", c.feasibility.kappa2}};
  if (c.feasibility.chi) feas["chi"] = *c.feasibility.chi;
  out["feasibility"] = feas;
  out["workers"] = c.workers;
  out["output"] = {{"dir", c.output.dir}, {"formats", c.output.formats}};
  return out;
}

}  // namespace blockade::cli
