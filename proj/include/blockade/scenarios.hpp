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

#ifndef BLOCKADE_SCENARIOS_HPP
#define BLOCKADE_SCENARIOS_HPP

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "blockade/analytic.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/model.hpp"

namespace blockade {

enum class Method { Analytic, MasterEquation, Both };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Names accepted by set_parameter: delta1, delta2, omega_m, lambda1, lambda2,
/// g, g_over_omega_m, chi, drive, kappa1, kappa2, gamma_m, n_th.
const std::vector<std::string>& sweepable_parameters();
/// Setting delta2 also sets delta1 when `tie_detunings` is true. Setting chi
/// adjusts g at fixed omega_m; g_over_omega_m likewise.
void set_parameter(SystemParams& p, const std::string& name, double value, bool tie_detunings = true);
double get_parameter(const SystemParams& p, const std::string& name);

struct Axis {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 2;
  bool log_scale = false;

  void validate() const;
  std::vector<double> values() const;
};

enum class Relation { Upb, Cpb, Conventional };

std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

/// Ties `target` (delta2 or lambda2) to an optimal relation at every grid
/// point. lambda2 slavings resolve before delta2 slavings.
struct Slaving {
  std::string target;
  Relation relation = Relation::Upb;
  Branch branch = Branch::Minus;
  double scale = 1.0;

  bool operator==(const Slaving&) const = default;
};

/// Applies the slavings in resolution order. Throws on an unsatisfiable relation.
SystemParams apply_slaving(const SystemParams& p, const std::vector<Slaving>& slaving,
                           bool tie_detunings = true);

/// Observable identifiers: g2 (cavity 2), g2_a1, n2, n1.
const std::vector<std::string>& observable_names();

struct SweepPlan {
  ModelVariant variant = ModelVariant::Reduced;
  Method method = Method::Both;
  std::vector<Axis> axes;
  SystemParams fixed;
  std::vector<std::string> observables{"g2"};
  std::vector<Slaving> slaving;
  std::optional<HilbertSpec> spec;
  MasterEquationOptions master_equation;
  bool tie_detunings = true;

  void validate() const;
  HilbertSpec resolved_spec() const;
  std::size_t grid_size() const;
  std::vector<Method> methods() const;
};

struct SweepRow {
  std::vector<double> coords;
  Method method = Method::Analytic;
  /// One entry per plan observable; NaN when `error` is set.
  std::vector<double> values;
  std::string error;
};

struct SweepResult {
  SweepPlan plan;
  /// Grid-point major (first axis slowest), then analytic before numeric.
  std::vector<SweepRow> rows;

  std::vector<std::string> wide_columns() const;
  /// One line per grid point, columns as in wide_columns().
  std::vector<std::vector<double>> wide_rows() const;
  /// Values of `observable` for `method`, one per grid point.
  std::vector<double> series(const std::string& observable, Method method) const;
  std::vector<double> axis_values(std::size_t axis) const;
  std::size_t error_count() const;
};

/// Observable value at resolved parameters; throws on failure.
double evaluate_observable(const SweepPlan& plan, const SystemParams& resolved, Method method,
                           const std::string& observable);
/// Resolves the plan parameters at `coords` (one value per axis).
SystemParams resolve_point(const SweepPlan& plan, const std::vector<double>& coords);

SweepResult run_sweep(const SweepPlan& plan, unsigned workers = 1);

// ---------------------------------------------------------------------------

struct Dip {
  double x = 0.0;
  double y = 0.0;
  std::size_t grid_index = 0;
};

struct DipOptions {
  /// Only minima with y below this value are reported.
  double max_value = std::numeric_limits<double>::infinity();
  /// Refinement tolerance as a fraction of the grid span.
  double tolerance_fraction = 1e-3;
};

/// Minimum of `f` on [a, b] to |dx| <= tol.
double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol);

std::vector<Dip> locate_dips(const std::vector<double>& x, const std::vector<double>& y,
                             const std::function<double(double)>& evaluator = {},
                             const DipOptions& options = {});

// ---------------------------------------------------------------------------

struct PowerLawFit {
  double slope = 0.0;
  double coefficient = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log y against log x.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct ConventionalGridPoint {
  double g_over_omega_m = 0.0;
  double lambda1 = 0.0;
};

struct ConventionalFitEntry {
  ConventionalGridPoint point;
  double chi = 0.0;
  double x = 0.0;  ///< chi^2 / lambda1
  double lambda2_opt = std::numeric_limits<double>::quiet_NaN();
  double g2_min = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
  std::string note;
};

struct ConventionalFit {
  std::vector<ConventionalFitEntry> entries;
  PowerLawFit fit;
  std::size_t used = 0;
};

struct ConventionalFitOptions {
  std::size_t scan_points = 25;
  double bracket_low = 0.1;
  double bracket_high = 3.0;
  double log_tolerance = 1e-4;
  unsigned workers = 1;
};

/// Minimizes the master-equation g2 of cavity 2 over lambda2 at the upper
/// single-excitation resonance for every grid point, then fits the optima.
ConventionalFit fit_conventional_relation(const std::vector<ConventionalGridPoint>& grid,
                                          const SystemParams& base,
                                          const ConventionalFitOptions& options = {});

// ---------------------------------------------------------------------------

struct ScenarioSpec {
  SystemParams base;
  ModelVariant variant = ModelVariant::Reduced;
  std::optional<HilbertSpec> spec;
  std::vector<Slaving> slaving;
  /// Multipliers applied to lambda2 after lambda2 slaving.
  std::vector<double> scales{0.8, 1.0, 1.2};
  MasterEquationOptions master_equation;
  bool tie_detunings = true;
  double t_end = 40.0;
  double dt = 0.1;
  double tau_end = 10.0;
  double dtau = 0.01;

  void validate() const;
  HilbertSpec resolved_spec() const;
  SystemParams variant_params(double scale) const;
};

struct DynamicsVariant {
  double scale = 1.0;
  SystemParams params;
  Trajectory trajectory;
};

struct DynamicsResult {
  std::vector<DynamicsVariant> variants;
};

DynamicsResult run_dynamics(const ScenarioSpec& scenario, const EvolveOptions& options = {},
                            unsigned workers = 1);

struct DelayedVariant {
  double scale = 1.0;
  SystemParams params;
  double g2_zero = 0.0;
  std::vector<double> g2;
};

struct DelayedResult {
  std::vector<double> tau;
  std::vector<DelayedVariant> variants;
};

DelayedResult run_delayed(const ScenarioSpec& scenario, const EvolveOptions& options = {},
                          unsigned workers = 1);

std::vector<double> uniform_grid(double start, double end, double step);

// ---------------------------------------------------------------------------

enum class PresetKind { Sweep, Dynamics, Delayed };

struct Preset {
  std::string name;
  std::string description;
  PresetKind kind = PresetKind::Sweep;
  SweepPlan plan;
  ScenarioSpec scenario;
  /// Values chosen here because the source figures leave them open.
  std::vector<std::string> artifact_choices;
};

/// kappa2 in MHz-angular units for the lab-value presets.
inline constexpr double kPresetKappa2MHzAngular = 0.9424777960769379;

const std::vector<std::string>& preset_names();
Preset find_preset(const std::string& name);

DynamicsResult run_dynamics(const std::string& preset_name, unsigned workers = 1);
DelayedResult run_delayed(const std::string& preset_name, unsigned workers = 1);

}  // namespace blockade

#endif  // BLOCKADE_SCENARIOS_HPP
