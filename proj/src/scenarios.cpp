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

#include "blockade/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "blockade/errors.hpp"

namespace blockade {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs task(i) for i in [0, n) on up to `workers` threads. Each task writes
// only its own output slot; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task) {
  if (n == 0) return;
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t count = std::clamp<std::size_t>(workers == 0 ? 1 : workers, 1, n);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (std::size_t k = 0; k < count; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool is_known(const std::vector<std::string>& names, const std::string& s) {
  return std::find(names.begin(), names.end(), s) != names.end();
}

double chi_of(const SystemParams& p) { return kerr_strength(p); }

SystemParams slave(const SystemParams& input, const std::vector<Slaving>& slaving, bool tie,
                   double lambda2_scale) {
  SystemParams p = input;
  for (const auto& s : slaving) {
    if (s.target != "lambda2") continue;
    if (s.relation == Relation::Upb) {
      p.lambda2 = s.scale * upb_optimal(chi_of(p), p.kappa2, p.lambda1, s.branch).lambda2;
    } else if (s.relation == Relation::Conventional) {
      p.lambda2 = s.scale * conventional_optimal_lambda2(p.g, p.lambda1, p.omega_m);
    } else {
      throw InvalidArgument("slaving: lambda2 cannot follow the cpb relation");
    }
  }
  p.lambda2 *= lambda2_scale;
  for (const auto& s : slaving) {
    if (s.target != "delta2") continue;
    double d = 0.0;
    if (s.relation == Relation::Upb) {
      d = upb_optimal(chi_of(p), p.kappa2, p.lambda1, s.branch).delta2;
    } else if (s.relation == Relation::Cpb) {
      const auto loc = cpb_locations(chi_of(p), p.lambda1, p.lambda2);
      if (!loc) throw InvalidArgument("slaving: no real single-excitation resonance");
      d = s.branch == Branch::Plus ? loc->plus : loc->minus;
    } else {
      throw InvalidArgument("slaving: delta2 cannot follow the conventional relation");
    }
    p.delta2 = d;
    if (tie) p.delta1 = d;
  }
  return p;
}

void validate_slaving(const std::vector<Slaving>& slaving) {
  bool seen_delta = false;
  bool seen_lambda = false;
  for (const auto& s : slaving) {
    if (s.target == "delta2") {
      if (s.relation == Relation::Conventional)
        throw InvalidArgument("slaving: delta2 cannot follow the conventional relation");
      if (s.scale != 1.0) throw InvalidArgument("slaving: scale applies to lambda2 only");
      if (seen_delta) throw InvalidArgument("slaving: delta2 slaved twice");
      seen_delta = true;
    } else if (s.target == "lambda2") {
      if (s.relation == Relation::Cpb)
        throw InvalidArgument("slaving: lambda2 cannot follow the cpb relation");
      if (!std::isfinite(s.scale)) throw InvalidArgument("slaving: scale must be finite");
      if (seen_lambda) throw InvalidArgument("slaving: lambda2 slaved twice");
      seen_lambda = true;
    } else {
      throw InvalidArgument("slaving: unknown target '" + s.target + "' (expected delta2 or lambda2)");
    }
  }
}

AmplitudeSet analytic_amplitudes(ModelVariant variant, const SystemParams& p) {
  return variant == ModelVariant::AltDrive ? steady_amplitudes_om_drive(p)
                                           : steady_amplitudes_cavity_drive(p);
}

double analytic_value(const AmplitudeSet& a, const std::string& obs) {
  if (obs == "g2") return g2_analytic(a, 2);
  if (obs == "g2_a1") return g2_analytic(a, 1);
  if (obs == "n2") return std::norm(a.c01);
  if (obs == "n1") return std::norm(a.c10);
  throw InvalidArgument("unknown observable '" + obs + "'");
}

double numeric_value(const DensityMatrix& rho, const std::string& obs) {
  if (obs == "g2") return g2_zero(rho, "a2");
  if (obs == "g2_a1") return g2_zero(rho, "a1");
  if (obs == "n2") return photon_number(rho, "a2");
  if (obs == "n1") return photon_number(rho, "a1");
  throw InvalidArgument("unknown observable '" + obs + "'");
}

DensityMatrix sweep_steady_state(const SweepPlan& plan, const SystemParams& p) {
  SteadyStateOptions opts;
  opts.check_uniqueness = false;
  return steady_state(model_liouvillian(p, plan.resolved_spec(), plan.variant, plan.master_equation), opts);
}

std::string tag(Method m) { return m == Method::Analytic ? "analytic" : "numeric"; }

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::MasterEquation: return "master-equation";
    case Method::Both: return "both";
  }
  return "both";
}

Method method_from_string(const std::string& s) {
  if (s == "analytic") return Method::Analytic;
  if (s == "master-equation") return Method::MasterEquation;
  if (s == "both") return Method::Both;
  throw InvalidArgument("unknown method '" + s + "' (expected analytic, master-equation or both)");
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Upb: return "upb";
    case Relation::Cpb: return "cpb";
    case Relation::Conventional: return "conventional";
  }
  return "upb";
}

Relation relation_from_string(const std::string& s) {
  if (s == "upb") return Relation::Upb;
  if (s == "cpb") return Relation::Cpb;
  if (s == "conventional") return Relation::Conventional;
  throw InvalidArgument("unknown relation '" + s + "' (expected upb, cpb or conventional)");
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names{"delta1", "delta2", "omega_m", "lambda1", "lambda2",
                                              "g", "g_over_omega_m", "chi", "drive", "kappa1",
                                              "kappa2", "gamma_m", "n_th"};
  return names;
}

void set_parameter(SystemParams& p, const std::string& name, double value, bool tie_detunings) {
  if (name == "delta1") p.delta1 = value;
  else if (name == "delta2") {
    p.delta2 = value;
    if (tie_detunings) p.delta1 = value;
  } else if (name == "omega_m") p.omega_m = value;
  else if (name == "lambda1") p.lambda1 = value;
  else if (name == "lambda2") p.lambda2 = value;
  else if (name == "g") p.g = value;
  else if (name == "g_over_omega_m") p.g = value * p.omega_m;
  else if (name == "chi") {
    if (!(value >= 0.0) || !(p.omega_m > 0.0))
      throw InvalidArgument("set_parameter: chi needs chi >= 0 and omega_m > 0");
    p.g = std::sqrt(value * p.omega_m);
  } else if (name == "drive") p.drive = value;
  else if (name == "kappa1") p.kappa1 = value;
  else if (name == "kappa2") p.kappa2 = value;
  else if (name == "gamma_m") p.gamma_m = value;
  else if (name == "n_th") p.n_th = value;
  else throw InvalidArgument("unknown parameter '" + name + "'");
}

double get_parameter(const SystemParams& p, const std::string& name) {
  if (name == "delta1") return p.delta1;
  if (name == "delta2") return p.delta2;
  if (name == "omega_m") return p.omega_m;
  if (name == "lambda1") return p.lambda1;
  if (name == "lambda2") return p.lambda2;
  if (name == "g") return p.g;
  if (name == "g_over_omega_m") return p.omega_m > 0 ? p.g / p.omega_m : kNaN;
  if (name == "chi") return p.omega_m > 0 ? p.g * p.g / p.omega_m : kNaN;
  if (name == "drive") return p.drive;
  if (name == "kappa1") return p.kappa1;
  if (name == "kappa2") return p.kappa2;
  if (name == "gamma_m") return p.gamma_m;
  if (name == "n_th") return p.n_th;
  throw InvalidArgument("unknown parameter '" + name + "'");
}

void Axis::validate() const {
  if (!is_known(sweepable_parameters(), parameter))
    throw InvalidArgument("axis: unknown parameter '" + parameter + "'");
  if (!std::isfinite(min) || !std::isfinite(max)) throw InvalidArgument("axis: non-finite bounds");
  if (points == 0) throw InvalidArgument("axis '" + parameter + "': points must be >= 1");
  if (points == 1 && min != max)
    throw InvalidArgument("axis '" + parameter + "': a single point requires min == max");
  if (points >= 2 && !(min < max))
    throw InvalidArgument("axis '" + parameter + "': min must be < max");
  if (log_scale && !(min > 0.0))
    throw InvalidArgument("axis '" + parameter + "': log scale requires min > 0");
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = min;
    return out;
  }
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / n;
    out[i] = log_scale ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                       : min + f * (max - min);
  }
  out.back() = max;
  return out;
}

SystemParams apply_slaving(const SystemParams& p, const std::vector<Slaving>& slaving, bool tie_detunings) {
  validate_slaving(slaving);
  return slave(p, slaving, tie_detunings, 1.0);
}

const std::vector<std::string>& observable_names() {
  static const std::vector<std::string> names{"g2", "g2_a1", "n2", "n1"};
  return names;
}

namespace {

void require_capacity(const HilbertSpec& s, const char* who) {
  if (s.dimension() > dimension_cap()) {
    std::ostringstream os;
    os << who << ": Hilbert dimension " << s.dimension() << " (" << s.describe() << ") exceeds the cap "
       << dimension_cap();
    throw CapacityError(os.str());
  }
}

}  // namespace

void SweepPlan::validate() const {
  if (axes.empty() || axes.size() > 2) throw InvalidArgument("plan: one or two axes required");
  for (const auto& a : axes) a.validate();
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter)
    throw InvalidArgument("plan: the same parameter is swept twice");
  if (observables.empty()) throw InvalidArgument("plan: no observables requested");
  for (const auto& o : observables)
    if (!is_known(observable_names(), o)) throw InvalidArgument("plan: unknown observable '" + o + "'");
  validate_slaving(slaving);
  for (const auto& s : slaving)
    for (const auto& a : axes)
      if (a.parameter == s.target)
        throw InvalidArgument("plan: '" + s.target + "' is both slaved and swept");
  fixed.validate();
  const HilbertSpec s = resolved_spec();
  for (const char* label : variant == ModelVariant::Full ? std::vector<const char*>{"a1", "a2", "b"}
                                                          : std::vector<const char*>{"a1", "a2"})
    if (!s.has(label)) throw InvalidArgument(std::string("plan: Hilbert space lacks mode ") + label);
  if (method != Method::Analytic) require_capacity(s, "plan");
}

HilbertSpec SweepPlan::resolved_spec() const { return spec ? *spec : default_spec(variant); }

std::size_t SweepPlan::grid_size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.points;
  return n;
}

std::vector<Method> SweepPlan::methods() const {
  if (method == Method::Both) return {Method::Analytic, Method::MasterEquation};
  return {method};
}

SystemParams resolve_point(const SweepPlan& plan, const std::vector<double>& coords) {
  if (coords.size() != plan.axes.size()) throw InvalidArgument("resolve_point: coordinate count mismatch");
  SystemParams p = plan.fixed;
  for (std::size_t k = 0; k < coords.size(); ++k)
    set_parameter(p, plan.axes[k].parameter, coords[k], plan.tie_detunings);
  return slave(p, plan.slaving, plan.tie_detunings, 1.0);
}

double evaluate_observable(const SweepPlan& plan, const SystemParams& resolved, Method method,
                           const std::string& observable) {
  if (method == Method::Analytic) return analytic_value(analytic_amplitudes(plan.variant, resolved), observable);
  if (method == Method::MasterEquation) return numeric_value(sweep_steady_state(plan, resolved), observable);
  throw InvalidArgument("evaluate_observable: choose a single method");
}

SweepResult run_sweep(const SweepPlan& plan, unsigned workers) {
  plan.validate();
  std::vector<std::vector<double>> axis_values;
  for (const auto& a : plan.axes) axis_values.push_back(a.values());
  const std::size_t n = plan.grid_size();
  const auto methods = plan.methods();

  SweepResult result;
  result.plan = plan;
  result.rows.resize(n * methods.size());
  parallel_for(n, workers, [&](std::size_t i) {
    std::vector<double> coords(plan.axes.size());
    std::size_t rem = i;
    for (std::size_t k = plan.axes.size(); k-- > 0;) {
      coords[k] = axis_values[k][rem % plan.axes[k].points];
      rem /= plan.axes[k].points;
    }
    std::optional<SystemParams> params;
    std::string resolve_error;
    try {
      params = resolve_point(plan, coords);
    } catch (const std::exception& e) {
      resolve_error = e.what();
    }
    for (std::size_t m = 0; m < methods.size(); ++m) {
      SweepRow& row = result.rows[i * methods.size() + m];
      row.coords = coords;
      row.method = methods[m];
      row.values.assign(plan.observables.size(), kNaN);
      if (!params) {
        row.error = resolve_error;
        continue;
      }
      try {
        if (methods[m] == Method::Analytic) {
          const AmplitudeSet amps = analytic_amplitudes(plan.variant, *params);
          for (std::size_t o = 0; o < plan.observables.size(); ++o)
            row.values[o] = analytic_value(amps, plan.observables[o]);
        } else {
          const DensityMatrix rho = sweep_steady_state(plan, *params);
          for (std::size_t o = 0; o < plan.observables.size(); ++o)
            row.values[o] = numeric_value(rho, plan.observables[o]);
        }
        for (double v : row.values)
          if (!std::isfinite(v)) throw NumericalError("non-finite observable value");
      } catch (const std::exception& e) {
        row.values.assign(plan.observables.size(), kNaN);
        row.error = e.what();
      }
    }
  });
  return result;
}

std::vector<std::string> SweepResult::wide_columns() const {
  std::vector<std::string> cols;
  for (const auto& a : plan.axes) cols.push_back(a.parameter);
  for (const auto& o : plan.observables)
    for (Method m : plan.methods()) cols.push_back(o + "_" + tag(m));
  return cols;
}

std::vector<std::vector<double>> SweepResult::wide_rows() const {
  const auto methods = plan.methods();
  const std::size_t nm = methods.size();
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i + nm <= rows.size(); i += nm) {
    std::vector<double> line = rows[i].coords;
    for (std::size_t o = 0; o < plan.observables.size(); ++o)
      for (std::size_t m = 0; m < nm; ++m) line.push_back(rows[i + m].values[o]);
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<double> SweepResult::series(const std::string& observable, Method method) const {
  const auto it = std::find(plan.observables.begin(), plan.observables.end(), observable);
  if (it == plan.observables.end()) throw InvalidArgument("series: observable not in plan");
  const auto o = static_cast<std::size_t>(it - plan.observables.begin());
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.method == method) out.push_back(r.values[o]);
  if (out.empty()) throw InvalidArgument("series: method not in plan");
  return out;
}

std::vector<double> SweepResult::axis_values(std::size_t axis) const {
  if (axis >= plan.axes.size()) throw InvalidArgument("axis_values: no such axis");
  const std::size_t nm = plan.methods().size();
  std::vector<double> out;
  for (std::size_t i = 0; i < rows.size(); i += nm) out.push_back(rows[i].coords[axis]);
  return out;
}

std::size_t SweepResult::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); }));
}

// ---------------------------------------------------------------------------

double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(a < b)) throw InvalidArgument("golden_section_minimize: empty bracket");
  if (!(tol > 0.0)) throw InvalidArgument("golden_section_minimize: tolerance must be > 0");
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

std::vector<Dip> locate_dips(const std::vector<double>& x, const std::vector<double>& y,
                             const std::function<double(double)>& evaluator, const DipOptions& options) {
  if (x.size() != y.size()) throw InvalidArgument("locate_dips: x and y differ in length");
  if (x.size() < 5) throw InvalidArgument("locate_dips: at least 5 points required");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw InvalidArgument("locate_dips: y must be > 0");
    if (i > 0 && !(x[i] > x[i - 1])) throw InvalidArgument("locate_dips: x must be increasing");
  }
  std::vector<double> ly(y.size());
  std::transform(y.begin(), y.end(), ly.begin(), [](double v) { return std::log(v); });
  const double tol = options.tolerance_fraction * (x.back() - x.front());

  std::vector<Dip> dips;
  std::size_t i = 1;
  while (i + 1 < ly.size()) {
    if (!(ly[i] < ly[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < ly.size() && ly[j + 1] == ly[i]) ++j;
    if (j + 1 < ly.size() && ly[j + 1] > ly[i]) {
      Dip d{x[i], y[i], i};
      if (evaluator) {
        auto g = [&](double t) {
          const double v = evaluator(t);
          return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
        };
        const double xs = golden_section_minimize(g, x[i - 1], x[j + 1], tol);
        const double ys = evaluator(xs);
        if (ys <= y[i]) {
          d.x = xs;
          d.y = ys;
        }
      }
      if (d.y < options.max_value) dips.push_back(d);
    }
    i = j + 1;
  }
  return dips;
}

// ---------------------------------------------------------------------------

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("fit_power_law: length mismatch");
  if (x.size() < 2) throw InvalidArgument("fit_power_law: at least two points required");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InvalidArgument("fit_power_law: values must be > 0");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double vxx = sxx - sx * sx / n;
  if (!(vxx > 0)) throw NumericalError("fit_power_law: abscissae do not vary");
  PowerLawFit f;
  f.slope = (sxy - sx * sy / n) / vxx;
  const double intercept = (sy - f.slope * sx) / n;
  f.coefficient = std::exp(intercept);
  const double vyy = syy - sy * sy / n;
  f.r_squared = vyy > 0 ? (f.slope * (sxy - sx * sy / n)) / vyy : 1.0;
  return f;
}

ConventionalFit fit_conventional_relation(const std::vector<ConventionalGridPoint>& grid,
                                          const SystemParams& base, const ConventionalFitOptions& options) {
  if (grid.size() < 6) throw InvalidArgument("fit_conventional_relation: at least 6 grid points required");
  if (options.scan_points < 5) throw InvalidArgument("fit_conventional_relation: scan needs >= 5 points");
  if (!(0 < options.bracket_low && options.bracket_low < options.bracket_high))
    throw InvalidArgument("fit_conventional_relation: invalid bracket");
  ConventionalFit out;
  out.entries.resize(grid.size());
  const std::vector<Slaving> cpb{{"delta2", Relation::Cpb, Branch::Plus, 1.0}};
  const HilbertSpec spec = default_spec(ModelVariant::Reduced);

  parallel_for(grid.size(), options.workers, [&](std::size_t i) {
    ConventionalFitEntry& e = out.entries[i];
    e.point = grid[i];
    try {
      SystemParams p = base;
      p.lambda1 = grid[i].lambda1;
      p.g = grid[i].g_over_omega_m * p.omega_m;
      e.chi = kerr_strength(p);
      e.x = e.chi * e.chi / p.lambda1;
      const double ref = kConventionalCoefficient * e.x;
      auto g2_at = [&](double log_l2) {
        SystemParams q = p;
        q.lambda2 = std::exp(log_l2);
        q = slave(q, cpb, true, 1.0);
        SteadyStateOptions so;
        so.check_uniqueness = false;
        const auto rho = steady_state(model_liouvillian(q, spec, ModelVariant::Reduced), so);
        return std::log(g2_zero(rho, "a2"));
      };
      const double lo = std::log(options.bracket_low * ref);
      const double hi = std::log(options.bracket_high * ref);
      std::vector<double> scan(options.scan_points);
      std::size_t best = 0;
      for (std::size_t k = 0; k < scan.size(); ++k) {
        scan[k] = g2_at(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(scan.size() - 1));
        if (scan[k] < scan[best]) best = k;
      }
      if (best == 0 || best + 1 == scan.size()) {
        e.note = "minimum at bracket edge";
        return;
      }
      const double step = (hi - lo) / static_cast<double>(scan.size() - 1);
      const double a = lo + step * static_cast<double>(best - 1);
      const double l = golden_section_minimize(g2_at, a, a + 2 * step, options.log_tolerance);
      e.lambda2_opt = std::exp(l);
      e.g2_min = std::exp(g2_at(l));
      e.ok = true;
    } catch (const std::exception& ex) {
      e.note = ex.what();
    }
  });

  std::vector<double> xs, ys;
  for (const auto& e : out.entries)
    if (e.ok) {
      xs.push_back(e.x);
      ys.push_back(e.lambda2_opt);
    }
  out.used = xs.size();
  if (out.used < 4) {
    std::ostringstream os;
    os << "fit_conventional_relation: only " << out.used << " grid points produced a bracketed minimum";
    throw NumericalError(os.str());
  }
  out.fit = fit_power_law(xs, ys);
  return out;
}

// ---------------------------------------------------------------------------

void ScenarioSpec::validate() const {
  base.validate();
  validate_slaving(slaving);
  if (scales.empty()) throw InvalidArgument("scenario: no lambda2 scales");
  for (double s : scales)
    if (!std::isfinite(s)) throw InvalidArgument("scenario: non-finite lambda2 scale");
  if (!(t_end > 0) || !(dt > 0) || dt > t_end) throw InvalidArgument("scenario: invalid time grid");
  if (!(tau_end >= 0) || !(dtau > 0)) throw InvalidArgument("scenario: invalid delay grid");
  require_capacity(resolved_spec(), "scenario");
}

HilbertSpec ScenarioSpec::resolved_spec() const { return spec ? *spec : default_spec(variant); }

SystemParams ScenarioSpec::variant_params(double scale) const {
  return slave(base, slaving, tie_detunings, scale);
}

std::vector<double> uniform_grid(double start, double end, double step) {
  if (!(step > 0) || !(end >= start)) throw InvalidArgument("uniform_grid: invalid range");
  const auto n = static_cast<std::size_t>(std::ceil((end - start) / step - 1e-9));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + step * static_cast<double>(i);
  out[n] = end;
  return out;
}

DynamicsResult run_dynamics(const ScenarioSpec& scenario, const EvolveOptions& options, unsigned workers) {
  scenario.validate();
  const HilbertSpec spec = scenario.resolved_spec();
  const std::vector<double> grid = uniform_grid(0.0, scenario.t_end, scenario.dt);
  DynamicsResult out;
  out.variants.resize(scenario.scales.size());
  parallel_for(scenario.scales.size(), workers, [&](std::size_t i) {
    DynamicsVariant& v = out.variants[i];
    v.scale = scenario.scales[i];
    v.params = scenario.variant_params(v.scale);
    const Liouvillian L = model_liouvillian(v.params, spec, scenario.variant, scenario.master_equation);
    const std::vector<Observable> obs{g2_observable("a2", spec), photon_number_observable("a2", spec),
                                      g2_observable("a1", spec), photon_number_observable("a1", spec)};
    v.trajectory = evolve(DensityMatrix::vacuum(spec), L, grid, obs, options);
  });
  return out;
}

DelayedResult run_delayed(const ScenarioSpec& scenario, const EvolveOptions& options, unsigned workers) {
  scenario.validate();
  const HilbertSpec spec = scenario.resolved_spec();
  DelayedResult out;
  out.tau = scenario.tau_end == 0.0 ? std::vector<double>{0.0} : uniform_grid(0.0, scenario.tau_end, scenario.dtau);
  out.variants.resize(scenario.scales.size());
  parallel_for(scenario.scales.size(), workers, [&](std::size_t i) {
    DelayedVariant& v = out.variants[i];
    v.scale = scenario.scales[i];
    v.params = scenario.variant_params(v.scale);
    const Liouvillian L = model_liouvillian(v.params, spec, scenario.variant, scenario.master_equation);
    const DensityMatrix rho = steady_state(L);
    v.g2_zero = g2_zero(rho, "a2");
    v.g2 = g2_tau(rho, L, out.tau, "a2", options);
  });
  return out;
}

DynamicsResult run_dynamics(const std::string& preset_name, unsigned workers) {
  const Preset p = find_preset(preset_name);
  if (p.kind != PresetKind::Dynamics)
    throw InvalidArgument("preset '" + preset_name + "' is not a dynamics preset");
  return run_dynamics(p.scenario, {}, workers);
}

DelayedResult run_delayed(const std::string& preset_name, unsigned workers) {
  const Preset p = find_preset(preset_name);
  if (p.kind != PresetKind::Delayed)
    throw InvalidArgument("preset '" + preset_name + "' is not a delayed-correlation preset");
  return run_delayed(p.scenario, {}, workers);
}

}  // namespace blockade
