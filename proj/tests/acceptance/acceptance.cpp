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

// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "blockade/analytic.hpp"
#include "blockade/errors.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/model.hpp"
#include "blockade/scenarios.hpp"

using namespace blockade;

namespace {

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void guarded(int n, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

SystemParams with_chi(double chi, double lambda1) {
  SystemParams p;
  p.omega_m = 1.0;
  p.g = std::sqrt(chi);
  p.lambda1 = lambda1;
  p.drive = 0.02;
  return p;
}

void criterion1() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.1, 30.0);
  double worst = 0.0;
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double chi = u(rng), l1 = u(rng);
    for (Branch b : {Branch::Minus, Branch::Plus}) {
      const OptimalPoint o = upb_optimal(chi, 1.0, l1, b);
      SystemParams p = with_chi(chi, l1);
      p.lambda2 = o.lambda2;
      p.delta1 = p.delta2 = o.delta2;
      const AmplitudeSet a = steady_amplitudes_cavity_drive(p);
      const double ratio = std::abs(a.c02) / std::norm(a.c01);
      worst = std::max(worst, ratio);
      if (!(ratio <= 1e-10)) ++violations;
    }
  }
  report(1, violations == 0, fmt("2000 optimal points, max |c02|/|c01|^2 = %.3e, violations %d", worst, violations));
}

void criterion2() {
  SystemParams p;
  p.omega_m = 500.0;
  p.g = 0.042 * 500.0;
  const OptimalPoint o = upb_optimal(kerr_strength(p), 1.0, 0.95, Branch::Minus);
  const double product = 0.95 * o.lambda2;
  report(2, std::abs(product - 0.920) <= 0.005,
         fmt("lambda1*lambda2 = %.6f (delta2 = %.6f, lambda2 = %.6f)", product, o.delta2, o.lambda2));
}

void criterion3() {
  const SweepPlan plan = find_preset("fig2b").plan;
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(plan, workers());
  const double elapsed = seconds_since(t0);
  const auto x = r.axis_values(0);
  const auto ya = r.series("g2", Method::Analytic);
  const auto yn = r.series("g2", Method::MasterEquation);
  const double dopt = upb_optimal(kerr_strength(plan.fixed), 1.0, plan.fixed.lambda1).delta2;
  double worst = 0.0;
  int bad = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - dopt) <= 0.05) continue;
    const double lr = std::abs(std::log10(yn[i] / ya[i]));
    if (!(lr <= 0.3)) ++bad;
    if (std::isfinite(lr)) worst = std::max(worst, lr);
  }
  const std::size_t imin = std::min_element(yn.begin(), yn.end()) - yn.begin();
  const double step = x[1] - x[0];
  const bool located = std::abs(x[imin] - dopt) <= step + 1e-12;
  const bool deep = yn[imin] <= 1e-2;
  const bool fast = elapsed <= 60.0;
  report(3, r.error_count() == 0 && bad == 0 && located && deep && fast,
         fmt("max off-dip |log10 ratio| = %.3f (%d outside 0.3), numeric dip at %.4f vs %.4f, depth %.3e, "
             "%zu points in %.1f s, errors %zu",
             worst, bad, x[imin], dopt, yn[imin], x.size(), elapsed, r.error_count()));
}

void criterion4() {
  const SweepPlan plan = find_preset("fig5a").plan;
  const SweepResult r = run_sweep(plan, workers());
  const SystemParams p0 = resolve_point(plan, {0.0});
  const auto loc = cpb_locations(kerr_strength(p0), p0.lambda1, p0.lambda2);
  const double mid_expected = upb_optimal(kerr_strength(p0), 1.0, p0.lambda1).delta2;
  DipOptions opt;
  opt.max_value = 1.0;
  bool pass = r.error_count() == 0 && loc.has_value();
  std::string detail;
  for (Method m : {Method::Analytic, Method::MasterEquation}) {
    auto eval = [&](double d) { return evaluate_observable(plan, resolve_point(plan, {d}), m, "g2"); };
    const auto dips = locate_dips(r.axis_values(0), r.series("g2", m), eval, opt);
    detail += to_string(m) + ":";
    for (const auto& d : dips) detail += fmt(" %.4f(%.2e)", d.x, d.y);
    detail += "; ";
    if (dips.size() != 3) {
      pass = false;
      continue;
    }
    pass = pass && std::abs(dips[1].x - 14.51) <= 0.2;
    if (loc) pass = pass && std::abs(dips[0].x - loc->minus) <= 1.0 && std::abs(dips[2].x - loc->plus) <= 1.0;
  }
  if (loc) detail += fmt("resonances %.4f, %.4f; optimal detuning %.4f", loc->minus, loc->plus, mid_expected);
  report(4, pass, detail);
}

void criterion5() {
  const ScenarioSpec s = find_preset("fig4").scenario;
  const HilbertSpec spec = s.resolved_spec();
  auto steady = [&](double scale) {
    const SystemParams p = s.variant_params(scale);
    const DensityMatrix rho = steady_state(model_liouvillian(p, spec, s.variant, s.master_equation));
    return std::pair{photon_number(rho, "a2"), g2_zero(rho, "a2")};
  };
  const auto [n_opt, g_opt] = steady(1.0);
  const auto [n_low, g_low] = steady(0.8);
  const bool pass = n_opt >= 3e-5 && n_opt <= 3e-4 && n_low > n_opt && g_low > g_opt;
  report(5, pass, fmt("n2 = %.4e at the optimum (g2 %.3e); 0.8 variant n2 = %.4e (g2 %.3e)", n_opt, g_opt, n_low,
                      g_low));
}

void criterion6() {
  ScenarioSpec s = find_preset("fig2d").scenario;
  s.scales = {1.0};
  const DelayedResult r = run_delayed(s, {}, workers());
  const auto& v = r.variants.at(0);
  double min_val = INFINITY, min_tau = 0.0, g10 = NAN;
  for (std::size_t i = 0; i < r.tau.size(); ++i) {
    if (r.tau[i] <= 5.0 + 1e-12 && v.g2[i] < min_val) {
      min_val = v.g2[i];
      min_tau = r.tau[i];
    }
    if (std::abs(r.tau[i] - 10.0) < 1e-9) g10 = v.g2[i];
  }
  const bool above = min_val >= v.g2_zero;
  const bool relaxed = std::abs(g10 - 1.0) <= 0.2;
  report(6, above && relaxed,
         fmt("g2(0) = %.7e, min over [0,5] = %.7e at tau = %.2f (%s), g2(10) = %.5f", v.g2_zero, min_val, min_tau,
             above ? "never below g2(0)" : "dips below g2(0)", g10));
}

void criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.2, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SystemParams p = with_chi(pos(rng), u(rng));
    p.lambda2 = u(rng);
    p.delta1 = p.delta2 = u(rng);
    p.kappa1 = p.kappa2 = pos(rng) / 10.0;
    const double direct = g2_analytic(steady_amplitudes_om_drive(p), 1);
    worst = std::max(worst, std::abs(g2_om_drive_closed_form(p) - direct) / direct);
  }
  bool feasible_none = true;
  double worst_residual = 0.0;
  for (double chi : {0.5, 5.0, 10.0, 20.0})
    for (double k : {0.5, 1.0, 2.0}) {
      const FeasibilityReport f = altdrive_blockade_feasibility(chi, k);
      feasible_none = feasible_none && !f.feasible && f.condition1_residuals.size() == 2;
      if (f.condition1_residuals.size() == 2) {
        worst_residual = std::max(worst_residual, std::abs(f.condition1_residuals[0] - k * k) / (k * k));
        const double r2 = k * k + chi * chi / 4.0;
        worst_residual = std::max(worst_residual, std::abs(f.condition1_residuals[1] - r2) / r2);
      }
    }
  std::string locs;
  bool near = true;
  for (double chi : {5.0, 10.0, 20.0}) {
    SweepPlan plan = find_preset("appb").plan;
    set_parameter(plan.fixed, "chi", chi);
    plan.axes = {Axis{"delta2", chi / 2.0 - 5.0, chi / 2.0 + 5.0, 1001}};
    const SweepResult r = run_sweep(plan, workers());
    const auto y = r.series("g2_a1", Method::Analytic);
    const auto x = r.axis_values(0);
    const std::size_t i = std::min_element(y.begin(), y.end()) - y.begin();
    near = near && r.error_count() == 0 && std::abs(x[i] - chi / 2.0) <= 0.5;
    locs += fmt(" chi=%g: %.3f", chi, x[i]);
  }
  report(7, worst <= 1e-12 && feasible_none && worst_residual <= 1e-12 && near,
         fmt("closed form vs amplitudes max rel %.2e; no common root (residual error %.1e); minima at", worst,
             worst_residual) +
             locs);
}

void criterion8() {
  std::vector<ConventionalGridPoint> grid;
  for (double r : {0.1, 0.15, 0.2})
    for (double l1 : {8.0, 30.0}) grid.push_back({r, l1});
  ConventionalFitOptions opt;
  opt.workers = workers();
  const ConventionalFit f = fit_conventional_relation(grid, find_preset("fig7a").plan.fixed, opt);
  const bool pass = std::abs(f.fit.slope - 1.0) <= 0.2 && f.fit.coefficient >= 2.9 && f.fit.coefficient <= 6.0;
  report(8, pass, fmt("slope %.4f, coefficient %.4f, r^2 %.5f from %zu of %zu points", f.fit.slope,
                      f.fit.coefficient, f.fit.r_squared, f.used, grid.size()));
}

void criterion9() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10.0, 10.0), pos(0.1, 20.0);
  double worst_eps = 0.0, worst_zero = 0.0;
  for (int i = 0; i < 500; ++i) {
    SystemParams p = with_chi(pos(rng), u(rng));
    p.lambda2 = u(rng);
    p.delta1 = p.delta2 = u(rng);
    const auto e = single_excitation_eigenvalues(p);
    const auto block = excitation_block_spectrum(p, 1);
    const double d = std::min(std::abs(block[0] - e.plus) + std::abs(block[1] - e.minus),
                              std::abs(block[1] - e.plus) + std::abs(block[0] - e.minus));
    worst_eps = std::max(worst_eps, d);
    const auto loc = cpb_locations(kerr_strength(p), p.lambda1, p.lambda2);
    if (!loc) continue;
    for (double dd : {loc->plus, loc->minus}) {
      p.delta1 = p.delta2 = dd;
      const auto b = excitation_block_spectrum(p, 1);
      worst_zero = std::max(worst_zero, std::min(std::abs(b[0]), std::abs(b[1])));
    }
  }
  report(9, worst_eps <= 1e-10 && worst_zero <= 1e-10,
         fmt("closed form vs diagonalization %.2e; smallest eigenvalue at resonances %.2e", worst_eps, worst_zero));
}

void criterion10() {
  bool pass = true;
  std::string detail;
  double drift = 0.0;
  for (const char* name : {"fig2c", "fig4", "fig6", "fig7c", "fig7d"}) {
    const DynamicsResult r = run_dynamics(name, workers());
    for (const auto& v : r.variants)
      for (double d : v.trajectory.trace_drift) drift = std::max(drift, d);
  }
  pass = pass && drift <= 1e-8;
  detail += fmt("trace drift %.2e on 5 trajectory presets; ", drift);

  double herm = 0.0, min_eig = INFINITY;
  for (const char* name : {"fig2c", "fig6"}) {
    ScenarioSpec s = find_preset(name).scenario;
    const SystemParams p = hermitized(s.variant_params(1.0));
    const HilbertSpec spec = s.resolved_spec();
    const Liouvillian L = model_liouvillian(p, spec, s.variant);
    Observable pos{"min_eig", [&](const CMatrix& rho) { return DensityMatrix(rho, spec).min_eigenvalue(); }};
    const auto grid = uniform_grid(0.0, s.t_end, s.dt);
    const Trajectory t = evolve(DensityMatrix::vacuum(spec), L, grid, std::span(&pos, 1));
    for (double h : t.hermiticity_deviation) herm = std::max(herm, h);
    for (double m : t.column("min_eig")) min_eig = std::min(min_eig, m);
  }
  pass = pass && herm <= 1e-10 && min_eig >= -1e-10;
  detail += fmt("reciprocal runs: hermiticity %.2e, min eigenvalue %.2e; ", herm, min_eig);

  struct Point {
    std::string label;
    SystemParams params;
    HilbertSpec spec;
    ModelVariant variant;
  };
  std::vector<Point> points;
  const ScenarioSpec weak = find_preset("fig4").scenario;
  points.push_back({"fig2b/fig4 optimum", weak.variant_params(1.0), weak.resolved_spec(), weak.variant});
  {
    const SweepPlan plan = find_preset("fig5a").plan;
    for (double d : {-3.2416, 1.5584, 14.5125, 22.9348})
      points.push_back({fmt("fig5a at %.2f", d), resolve_point(plan, {d}), plan.resolved_spec(), plan.variant});
  }
  for (const char* name : {"fig6", "fig7c"}) {
    const ScenarioSpec s = find_preset(name).scenario;
    points.push_back({name, s.variant_params(1.0), s.resolved_spec(), s.variant});
  }
  {
    SystemParams p = weak.variant_params(1.0);
    points.push_back({"full model at the optimum", p, HilbertSpec::full(4, 4, 4), ModelVariant::Full});
  }
  double worst = 0.0;
  std::string worst_label;
  for (const auto& pt : points) {
    const ConvergenceReport c = convergence_check(pt.params, pt.spec, pt.variant, {SteadyObservable::Kind::G2, "a2"});
    for (const auto& e : c.entries)
      if (e.relative_shift > worst) {
        worst = e.relative_shift;
        worst_label = pt.label + " (" + e.mode + ")";
      }
    pass = pass && c.passed;
  }
  detail += fmt("largest cutoff-doubling shift %.2e%% at %s over %zu points", 100.0 * worst, worst_label.c_str(),
                points.size());
  report(10, pass, detail);
}

void criterion11() {
  SweepPlan reduced = find_preset("fig2b").plan;
  reduced.method = Method::MasterEquation;
  reduced.axes = {Axis{"delta2", -2.0, 3.0, 51}};
  SweepPlan full = reduced;
  full.variant = ModelVariant::Full;
  full.spec = HilbertSpec::full(4, 4, 4);
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult rr = run_sweep(reduced, workers());
  const SweepResult rf = run_sweep(full, workers());
  const double elapsed = seconds_since(t0);
  const auto x = rr.axis_values(0);
  const auto yr = rr.series("g2", Method::MasterEquation);
  const auto yf = rf.series("g2", Method::MasterEquation);
  const double dopt = upb_optimal(kerr_strength(reduced.fixed), 1.0, reduced.fixed.lambda1).delta2;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - dopt) >= 0.2) worst = std::max(worst, std::abs(yf[i] - yr[i]) / std::abs(yr[i]));
  const long ir = std::min_element(yr.begin(), yr.end()) - yr.begin();
  const long iff = std::min_element(yf.begin(), yf.end()) - yf.begin();
  const bool pass = rr.error_count() == 0 && rf.error_count() == 0 && worst <= 0.2 && std::labs(ir - iff) <= 1;
  report(11, pass, fmt("max off-dip relative difference %.3e%%, dips at %.2f (reduced) and %.2f (full %s), %.1f s",
                       100.0 * worst, x[ir], x[iff], full.spec->describe().c_str(), elapsed));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8,
                                                    criterion9, criterion10, criterion11};
  for (std::size_t i = 0; i < criteria.size(); ++i) guarded(static_cast<int>(i + 1), criteria[i]);
  std::printf("acceptance: %d of %zu criteria failed (%.1f s)\n", failures, criteria.size(), seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
