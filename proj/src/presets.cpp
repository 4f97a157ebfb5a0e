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

#include <cmath>

#include "blockade/errors.hpp"
#include "blockade/scenarios.hpp"

namespace blockade {
namespace {

SystemParams weak_coupling_base() {
  SystemParams p;
  p.kappa1 = 1.0;
  p.kappa2 = 1.0;
  p.drive = 0.02;
  p.lambda1 = 0.95;
  p.omega_m = 500.0;
  p.g = 0.042 * p.omega_m;
  p.gamma_m = p.omega_m / 1e6;
  p.n_th = 0.0;
  return p;
}

SystemParams strong_coupling_base() {
  SystemParams p = weak_coupling_base();
  p.g = 0.2 * p.omega_m;
  p.lambda1 = 8.0;
  return p;
}

Axis axis(const std::string& name, double lo, double hi, std::size_t n, bool log = false) {
  return Axis{name, lo, hi, n, log};
}

Slaving lambda2_upb(Branch b, double scale = 1.0) { return {"lambda2", Relation::Upb, b, scale}; }
Slaving delta2_upb(Branch b) { return {"delta2", Relation::Upb, b, 1.0}; }
Slaving delta2_cpb_plus() { return {"delta2", Relation::Cpb, Branch::Plus, 1.0}; }

Preset sweep(std::string name, std::string description, SweepPlan plan,
             std::vector<std::string> choices = {}) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.kind = PresetKind::Sweep;
  p.plan = std::move(plan);
  p.artifact_choices = std::move(choices);
  return p;
}

Preset scenario(std::string name, std::string description, PresetKind kind, ScenarioSpec spec,
                std::vector<std::string> choices = {}) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.kind = kind;
  p.scenario = std::move(spec);
  p.artifact_choices = std::move(choices);
  return p;
}

SweepPlan detuning_scan(Branch b) {
  SweepPlan plan;
  plan.fixed = weak_coupling_base();
  plan.axes = {axis("delta2", -2.0, 3.0, 501)};
  plan.slaving = {lambda2_upb(b)};
  return plan;
}

ScenarioSpec weak_optimum() {
  ScenarioSpec s;
  s.base = weak_coupling_base();
  s.slaving = {lambda2_upb(Branch::Minus), delta2_upb(Branch::Minus)};
  return s;
}

SweepPlan strong_detuning_scan(double scale) {
  SweepPlan plan;
  plan.fixed = strong_coupling_base();
  plan.axes = {axis("delta2", -10.0, 35.0, 451)};
  plan.slaving = {lambda2_upb(Branch::Minus, scale)};
  return plan;
}

SweepPlan conventional_plane(double lambda1) {
  SweepPlan plan;
  plan.fixed = strong_coupling_base();
  plan.fixed.lambda1 = lambda1;
  plan.axes = {axis("g_over_omega_m", 0.1, 0.25, 31), axis("lambda2", 1.0, 1000.0, 31, true)};
  plan.slaving = {delta2_cpb_plus()};
  return plan;
}

ScenarioSpec strong_dynamics(bool conventional) {
  ScenarioSpec s;
  s.base = strong_coupling_base();
  s.slaving = {conventional ? Slaving{"lambda2", Relation::Conventional, Branch::Plus, 1.0}
                            : lambda2_upb(Branch::Minus),
               delta2_cpb_plus()};
  return s;
}

std::vector<Preset> build_catalog() {
  std::vector<Preset> out;
  out.push_back(sweep("fig2a", "g2 versus detuning, '+' optimal coupling", detuning_scan(Branch::Plus)));
  out.push_back(sweep("fig2b", "g2 versus detuning, '-' optimal coupling", detuning_scan(Branch::Minus)));
  out.push_back(scenario("fig2c", "g2(0) dynamics from vacuum at the '-' optimum", PresetKind::Dynamics,
                         weak_optimum(), {"lambda2 variants 0.8, 1.0, 1.2 of the optimum", "t_end 40, dt 0.1"}));
  out.push_back(scenario("fig2d", "delayed g2(tau) at the '-' optimum", PresetKind::Delayed, weak_optimum(),
                         {"lambda2 variants 0.8, 1.0, 1.2 of the optimum", "tau in [0, 10], step 0.01"}));

  {
    SweepPlan plan;
    plan.method = Method::Analytic;
    plan.fixed = weak_coupling_base();
    plan.axes = {axis("g_over_omega_m", 0.01, 0.1, 91), axis("lambda2", 0.1, 10.0, 81, true)};
    plan.slaving = {delta2_upb(Branch::Minus)};
    out.push_back(sweep("fig3a", "g2 over (g/omega_m, lambda2), delta2 on the '-' relation", plan,
                        {"g/omega_m in [0.01, 0.1]", "lambda2 in [0.1, 10] log-spaced"}));
  }
  {
    SweepPlan plan;
    plan.method = Method::Analytic;
    plan.fixed = weak_coupling_base();
    plan.axes = {axis("lambda1", 0.1, 10.0, 81, true), axis("lambda2", 0.1, 10.0, 81, true)};
    plan.slaving = {delta2_upb(Branch::Minus)};
    out.push_back(sweep("fig3b", "g2 over (lambda1, lambda2) at g/omega_m = 0.042", plan,
                        {"lambda1, lambda2 in [0.1, 10] log-spaced"}));
  }
  {
    SweepPlan plan;
    plan.method = Method::Analytic;
    plan.fixed = weak_coupling_base();
    plan.axes = {axis("g_over_omega_m", 0.01, 0.1, 91), axis("delta2", -2.0, 3.0, 101)};
    plan.slaving = {lambda2_upb(Branch::Minus)};
    out.push_back(sweep("fig3c", "g2 over (g/omega_m, delta2), lambda2 on the '-' relation", plan,
                        {"g/omega_m in [0.01, 0.1]", "delta2 in [-2, 3]"}));
  }
  {
    SweepPlan plan;
    plan.method = Method::Analytic;
    plan.fixed = weak_coupling_base();
    plan.axes = {axis("delta2", -2.0, 3.0, 101), axis("lambda2", 0.1, 10.0, 81, true)};
    out.push_back(sweep("fig3d", "g2 over (delta2, lambda2) at g/omega_m = 0.042", plan,
                        {"delta2 in [-2, 3]", "lambda2 in [0.1, 10] log-spaced"}));
  }

  out.push_back(scenario("fig4", "photon-number dynamics from vacuum at the '-' optimum", PresetKind::Dynamics,
                         weak_optimum(), {"lambda2 variants 0.8, 1.0, 1.2 of the optimum", "t_end 40, dt 0.1"}));

  out.push_back(sweep("fig5a", "strong coupling, lambda2 at the '-' optimum", strong_detuning_scan(1.0),
                      {"delta2 in [-10, 35], step 0.1"}));
  out.push_back(sweep("fig5b", "strong coupling, lambda2 = 0.8 of the optimum", strong_detuning_scan(0.8),
                      {"delta2 in [-10, 35], step 0.1"}));
  out.push_back(sweep("fig5c", "strong coupling, lambda2 = 1.2 of the optimum", strong_detuning_scan(1.2),
                      {"delta2 in [-10, 35], step 0.1"}));
  {
    SweepPlan plan;
    plan.method = Method::Analytic;
    plan.fixed = strong_coupling_base();
    plan.axes = {axis("delta2", -10.0, 35.0, 226), axis("lambda2", 2.0, 14.0, 61)};
    out.push_back(sweep("fig5d", "strong coupling, g2 over (delta2, lambda2)", plan,
                        {"delta2 in [-10, 35]", "lambda2 in [2, 14]"}));
  }

  out.push_back(scenario("fig6", "dynamics at the upper single-excitation resonance", PresetKind::Dynamics,
                         strong_dynamics(false),
                         {"lambda2 variants 0.8, 1.0, 1.2 of the '-' optimum; delta2 follows each variant"}));

  out.push_back(sweep("fig7a", "g2 at the upper resonance over (g/omega_m, lambda2), lambda1 = 8",
                      conventional_plane(8.0), {"g/omega_m in [0.1, 0.25]", "lambda2 in [1, 1000] log-spaced"}));
  out.push_back(sweep("fig7b", "g2 at the upper resonance over (g/omega_m, lambda2), lambda1 = 30",
                      conventional_plane(30.0), {"g/omega_m in [0.1, 0.25]", "lambda2 in [1, 1000] log-spaced"}));
  out.push_back(scenario("fig7c", "g2(0) dynamics on the fitted conventional relation", PresetKind::Dynamics,
                         strong_dynamics(true),
                         {"lambda1 = 8 with lambda2 from the fitted relation", "lambda2 variants 0.8, 1.0, 1.2"}));
  out.push_back(scenario("fig7d", "photon-number dynamics on the fitted conventional relation", PresetKind::Dynamics,
                         strong_dynamics(true),
                         {"lambda1 = 8 with lambda2 from the fitted relation", "lambda2 variants 0.8, 1.0, 1.2"}));

  {
    SweepPlan plan;
    plan.fixed = weak_coupling_base();
    plan.fixed.omega_m = 10.0;
    plan.fixed.gamma_m = plan.fixed.omega_m / 1e6;
    plan.axes = {axis("g", 0.1, 1.0, 46), axis("lambda2", 0.1, 1e3, 61, true)};
    plan.slaving = {delta2_upb(Branch::Minus)};
    out.push_back(sweep("fig8", "g2 over (g, lambda2) with g below kappa2", plan,
                        {"omega_m = 10", "g in [0.1, 1]", "lambda2 in [0.1, 1000] log-spaced"}));
  }
  {
    SweepPlan plan;
    plan.variant = ModelVariant::AltDrive;
    plan.method = Method::Analytic;
    plan.fixed = weak_coupling_base();
    plan.fixed.lambda1 = 5.0;
    plan.fixed.lambda2 = 5.0;
    set_parameter(plan.fixed, "chi", 10.0);
    plan.axes = {axis("delta2", 0.0, 10.0, 1001)};
    plan.observables = {"g2_a1"};
    out.push_back(sweep("appb", "g2 of the driven mechanical cavity near delta2 = chi/2", plan,
                        {"chi = 10, lambda1 = lambda2 = 5", "delta2 in chi/2 +/- 5"}));
  }
  return out;
}

const std::vector<Preset>& catalog() {
  static const std::vector<Preset> presets = build_catalog();
  return presets;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& p : catalog()) n.push_back(p.name);
    return n;
  }();
  return names;
}

Preset find_preset(const std::string& name) {
  for (const auto& p : catalog())
    if (p.name == name) return p;
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidArgument("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace blockade
