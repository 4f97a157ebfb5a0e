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

#include "blockade/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <cstring>
#include <sstream>

#include "blockade/analytic.hpp"
#include "blockade/errors.hpp"
#include "blockade/lindblad.hpp"
#include "blockade/scenarios.hpp"

namespace blockade {
namespace {

class Suite {
 public:
  // `body` returns the measured deviation; the check passes when it is <= bound.
  void bounded(const std::string& module, const std::string& name, double bound,
               const std::function<double()>& body) {
    ValidationCheck c{module, name, false, {}};
    try {
      const double v = body();
      c.passed = std::isfinite(v) && v <= bound;
      std::ostringstream os;
      os << "measured " << v << ", bound " << bound;
      c.detail = os.str();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(c));
  }

  void holds(const std::string& module, const std::string& name, const std::function<bool()>& body) {
    ValidationCheck c{module, name, false, {}};
    try {
      c.passed = body();
      c.detail = c.passed ? "holds" : "violated";
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(c));
  }

  ValidationReport report;
};

SystemParams weak_optimum() {
  SystemParams p;
  p.drive = 0.02;
  p.lambda1 = 0.95;
  p.omega_m = 500.0;
  p.g = 21.0;
  p.gamma_m = 5e-4;
  const OptimalPoint o = upb_optimal(kerr_strength(p), 1.0, p.lambda1, Branch::Minus);
  p.delta1 = p.delta2 = o.delta2;
  p.lambda2 = o.lambda2;
  return p;
}

}  // namespace

bool ValidationReport::passed() const { return failures() == 0; }

std::size_t ValidationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const ValidationCheck& c) { return !c.passed; }));
}

ValidationReport run_validation_suite(unsigned workers) {
  Suite s;
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  s.bounded("tensor", "truncated commutator [a, a^dag]", 1e-12, [] {
    const std::size_t c = 5;
    CMatrix expected = CMatrix::identity(c);
    expected(c - 1, c - 1) = -static_cast<double>(c - 1);
    return max_abs_diff(commutator(annihilation(c), creation(c)), expected);
  });
  s.bounded("tensor", "operators on distinct modes commute", 1e-14, [] {
    const HilbertSpec spec = HilbertSpec::full(3, 3, 4);
    const CMatrix a1 = mode_annihilation("a1", spec);
    const CMatrix b = mode_annihilation("b", spec);
    return max_abs(commutator(a1, dagger(b)));
  });
  s.bounded("tensor", "linear solve residual", 1e-12, [&] {
    const std::size_t n = 12;
    CMatrix a(n, n);
    std::vector<Complex> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = {unit(rng), unit(rng)};
      for (std::size_t j = 0; j < n; ++j) a(i, j) = {unit(rng) - 0.5, unit(rng) - 0.5};
      a(i, i) += 4.0;
    }
    const auto x = solve_linear(a, b);
    const auto r = matvec(a, x);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(r[i] - b[i]));
    return worst;
  });

  s.holds("model", "Hamiltonian Hermitian for equal hopping", [] {
    SystemParams p = weak_optimum();
    p.lambda2 = p.lambda1;
    return is_hermitian(build_full_hamiltonian(p, HilbertSpec::full(3, 3, 4)), 1e-12) &&
           is_hermitian(build_reduced_hamiltonian(p, HilbertSpec::reduced()), 1e-12);
  });
  s.bounded("model", "drive power round trip", 1e-12, [] {
    const double e = drive_amplitude_from_power(2e-9, 2.0 * M_PI * 2e8, 0.9424777960769379);
    return std::abs(power_from_drive_amplitude(e, 2.0 * M_PI * 2e8, 0.9424777960769379) - 2e-9) / 2e-9;
  });

  s.bounded("analytic", "steady amplitudes solve the truncated equations", 1e-12, [] {
    const SystemParams p = weak_optimum();
    const AmplitudeSet a = steady_amplitudes_cavity_drive(p);
    const AmplitudeSet r = amplitude_rhs(a, p, FeedTerms::DropHigherOrder);
    return std::max({std::abs(r.c10), std::abs(r.c01), std::abs(r.c20), std::abs(r.c11), std::abs(r.c02)}) /
           std::abs(a.c01);
  });
  s.bounded("analytic", "optimal relation suppresses |0,2>", 1e-10, [&] {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      SystemParams p;
      p.omega_m = 1.0;
      p.drive = 0.02;
      const double chi = 0.1 + 29.9 * unit(rng);
      p.g = std::sqrt(chi);
      p.lambda1 = 0.1 + 29.9 * unit(rng);
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        const OptimalPoint o = upb_optimal(chi, 1.0, p.lambda1, b);
        p.delta1 = p.delta2 = o.delta2;
        p.lambda2 = o.lambda2;
        const AmplitudeSet a = steady_amplitudes_cavity_drive(p);
        worst = std::max(worst, std::abs(a.c02) / std::norm(a.c01));
      }
    }
    return worst;
  });
  s.bounded("analytic", "alternate-drive closed form matches amplitudes", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      SystemParams p;
      p.omega_m = 1.0;
      p.drive = 0.01;
      p.g = std::sqrt(0.5 + 20.0 * unit(rng));
      p.lambda1 = 0.2 + 5.0 * unit(rng);
      p.lambda2 = 0.2 + 5.0 * unit(rng);
      p.delta1 = p.delta2 = -5.0 + 20.0 * unit(rng);
      const double direct = g2_analytic(steady_amplitudes_om_drive(p), 1);
      worst = std::max(worst, std::abs(g2_om_drive_closed_form(p) - direct) / direct);
    }
    return worst;
  });
  s.bounded("analytic", "resonance zeroes a single-excitation eigenvalue", 1e-10, [] {
    SystemParams p;
    p.omega_m = 500.0;
    p.g = 100.0;
    p.lambda1 = 8.0;
    p.lambda2 = 7.97;
    const auto loc = cpb_locations(kerr_strength(p), p.lambda1, p.lambda2);
    double worst = 0.0;
    for (double d : {loc->plus, loc->minus}) {
      p.delta1 = p.delta2 = d;
      const auto ev = excitation_block_spectrum(p, 1);
      double closest = 1e300;
      for (const Complex& z : ev) closest = std::min(closest, std::abs(z));
      worst = std::max(worst, closest);
    }
    return worst;
  });
  s.holds("analytic", "alternate-drive blockade conditions infeasible", [] {
    for (double chi : {0.5, 5.0, 20.0})
      if (altdrive_blockade_feasibility(chi, 1.0).feasible) return false;
    return true;
  });

  s.bounded("lindblad", "Liouvillian preserves trace", 1e-12, [] {
    const SystemParams p = weak_optimum();
    const Liouvillian L = model_liouvillian(p, HilbertSpec::reduced(3, 3), ModelVariant::Reduced);
    const std::size_t d = L.hilbert_dimension();
    const CMatrix dense = L.dense();
    double worst = 0.0;
    for (std::size_t col = 0; col < L.dimension(); ++col) {
      Complex t{};
      for (std::size_t i = 0; i < d; ++i) t += dense(i * d + i, col);
      worst = std::max(worst, std::abs(t));
    }
    return worst;
  });
  s.bounded("lindblad", "steady state matches the weak-drive g2 off the dip", 0.05, [] {
    SystemParams p = weak_optimum();
    p.delta1 = p.delta2 = 0.0;
    const DensityMatrix rho = steady_state(model_liouvillian(p, HilbertSpec::reduced(), ModelVariant::Reduced));
    const double analytic = g2_analytic(steady_amplitudes_cavity_drive(p), 2);
    return std::abs(std::log10(g2_zero(rho, "a2") / analytic));
  });
  s.bounded("lindblad", "hermitized gauge leaves cavity-2 statistics unchanged", 1e-8, [] {
    SystemParams p = weak_optimum();
    p.lambda2 = 0.3;
    const HilbertSpec spec = HilbertSpec::reduced();
    const auto raw = steady_state(model_liouvillian(p, spec, ModelVariant::Reduced));
    MasterEquationOptions h;
    h.hermitize = true;
    const auto sym = steady_state(model_liouvillian(p, spec, ModelVariant::Reduced, h));
    return std::abs(g2_zero(raw, "a2") - g2_zero(sym, "a2")) / g2_zero(sym, "a2");
  });
  s.bounded("lindblad", "coherent state has g2 = 1", 1e-4, [] {
    const HilbertSpec spec({{"a1", 20}, {"a2", 2}});
    std::vector<Complex> psi(spec.dimension());
    const double alpha = 0.2;
    double term = std::exp(-0.5 * alpha * alpha);
    for (std::size_t n = 0; n < 20; ++n) {
      const std::size_t occ[] = {n, 0};
      psi[spec.index(occ)] = term;
      term *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return std::abs(g2_zero(DensityMatrix::from_ket(psi, spec), "a1") - 1.0);
  });
  s.bounded("lindblad", "trajectory conserves trace", 1e-8, [] {
    const SystemParams p = weak_optimum();
    const Liouvillian L = model_liouvillian(p, HilbertSpec::reduced(), ModelVariant::Reduced);
    const auto grid = uniform_grid(0.0, 20.0, 0.5);
    const Trajectory t = evolve(DensityMatrix::vacuum(L.spec()), L, grid);
    return *std::max_element(t.trace_drift.begin(), t.trace_drift.end());
  });
  s.holds("lindblad", "cutoff doubling converges at weak drive", [] {
    const SystemParams p = weak_optimum();
    return convergence_check(p, HilbertSpec::reduced(), ModelVariant::Reduced, {}).passed;
  });

  s.holds("scenarios", "parallel sweep equals serial sweep", [&] {
    SweepPlan plan = find_preset("fig2b").plan;
    plan.axes[0].points = 21;
    const SweepResult a = run_sweep(plan, 1);
    const SweepResult b = run_sweep(plan, std::max(2U, workers));
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
      if (a.rows[i].coords != b.rows[i].coords || a.rows[i].error != b.rows[i].error ||
          std::memcmp(a.rows[i].values.data(), b.rows[i].values.data(), a.rows[i].values.size() * sizeof(double)) != 0)
        return false;
    return true;
  });
  s.bounded("scenarios", "dip refinement finds a parabola vertex", 1e-3, [] {
    std::vector<double> x, y;
    for (int i = 0; i <= 40; ++i) {
      x.push_back(-2.0 + 0.1 * i);
      y.push_back(1.0 + (x.back() - 0.37) * (x.back() - 0.37));
    }
    const auto dips = locate_dips(x, y, [](double t) { return 1.0 + (t - 0.37) * (t - 0.37); });
    return dips.size() == 1 ? std::abs(dips[0].x - 0.37) : 1.0;
  });
  s.bounded("scenarios", "power-law fit recovers its generator", 1e-9, [] {
    std::vector<double> x, y;
    for (int i = 0; i < 8; ++i) {
      x.push_back(std::pow(10.0, 0.3 * i));
      y.push_back(kConventionalCoefficient * x.back());
    }
    const PowerLawFit f = fit_power_law(x, y);
    return std::max(std::abs(f.slope - 1.0), std::abs(f.coefficient - kConventionalCoefficient));
  });
  s.holds("scenarios", "every preset validates", [] {
    for (const auto& name : preset_names()) {
      const Preset p = find_preset(name);
      if (p.kind == PresetKind::Sweep) p.plan.validate();
      else p.scenario.validate();
    }
    return true;
  });
  return s.report;
}

}  // namespace blockade
