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

#ifndef BLOCKADE_LINDBLAD_HPP
#define BLOCKADE_LINDBLAD_HPP

#include <Eigen/SparseCore>

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "blockade/model.hpp"
#include "blockade/tensor.hpp"

namespace blockade {

/// D[o] rho = o rho o^dag - c {o^dag o, rho} with c = 1/2 (Half) or c = 1 (Literal).
enum class DissipatorConvention { Half, Literal };

std::string to_string(DissipatorConvention c);
DissipatorConvention dissipator_convention_from_string(const std::string& s);

/// Density operator on a truncated composite space. Under a non-Hermitian
/// Hamiltonian the matrix need not stay Hermitian; see hermiticity_deviation().
class DensityMatrix {
 public:
  DensityMatrix(CMatrix matrix, HilbertSpec spec);

  static DensityMatrix vacuum(const HilbertSpec& spec);
  static DensityMatrix from_ket(std::span<const Complex> psi, const HilbertSpec& spec);

  const CMatrix& matrix() const { return matrix_; }
  const HilbertSpec& spec() const { return spec_; }

  Complex trace() const { return blockade::trace(matrix_); }
  double hermiticity_deviation() const { return blockade::hermiticity_deviation(matrix_); }
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  CMatrix matrix_;
  HilbertSpec spec_;
};

/// Superoperator acting on row-major vectorized operators:
/// vec(rho)[i*d + j] = rho(i, j).
class Liouvillian {
 public:
  using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  Liouvillian(SparseMatrix matrix, HilbertSpec spec);

  const HilbertSpec& spec() const { return spec_; }
  std::size_t hilbert_dimension() const { return spec_.dimension(); }
  /// d^2
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  const SparseMatrix& matrix() const { return matrix_; }

  CMatrix apply(const CMatrix& rho) const;
  /// Dense d^2 x d^2 copy; throws CapacityError above the cap.
  CMatrix dense(std::size_t cap = dimension_cap()) const;
  /// Induced infinity norm (max absolute row sum).
  double norm_inf() const;

 private:
  SparseMatrix matrix_;
  HilbertSpec spec_;
};

Liouvillian build_liouvillian(const CMatrix& hamiltonian, const DissipatorSpec& dissipators,
                              DissipatorConvention convention = DissipatorConvention::Half);

/// Options shared by every master-equation entry point that starts from
/// SystemParams.
struct MasterEquationOptions {
  DissipatorConvention convention = DissipatorConvention::Half;
  /// Replace (lambda1, lambda2) by the symmetric pair before building H.
  bool hermitize = false;
};

/// Hamiltonian of `variant` plus its dissipators, assembled into a Liouvillian.
Liouvillian model_liouvillian(const SystemParams& p, const HilbertSpec& spec, ModelVariant variant,
                              const MasterEquationOptions& options = {});

// ---------------------------------------------------------------------------
// Time evolution

struct Observable {
  std::string name;
  std::function<double(const CMatrix&)> evaluate;
};

/// g2(0) of `mode` on the trace-normalized state; NaN when the mode is empty.
Observable g2_observable(const std::string& mode, const HilbertSpec& spec);
/// Re tr(a^dag a rho) / tr(rho).
Observable photon_number_observable(const std::string& mode, const HilbertSpec& spec);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> names;
  /// columns[k][i] is observable names[k] at times[i].
  std::vector<std::vector<double>> columns;
  /// |tr rho(t) - 1|
  std::vector<double> trace_drift;
  /// max |rho - rho^dag|
  std::vector<double> hermiticity_deviation;

  const std::vector<double>& column(const std::string& name) const;
};

struct EvolveOptions {
  /// Step bound h <= step_factor / ||L||_inf.
  double step_factor = 0.005;
  /// Up to this superoperator size the RK4 step map is formed densely and
  /// raised to the step count by repeated squaring.
  std::size_t propagator_limit = 400;
  std::size_t max_steps = 20'000'000;
  double divergence_bound = 1e6;
};

/// Classical RK4 integration of d rho/dt = L rho from rho0 at t = 0.
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& L, std::span<const double> t_grid,
                  std::span<const Observable> observables = {}, const EvolveOptions& options = {});

/// Propagates an arbitrary operator; `visit(i, x)` is called at every grid time.
void propagate(const CMatrix& x0, const Liouvillian& L, std::span<const double> t_grid,
               const std::function<void(std::size_t, const CMatrix&)>& visit,
               const EvolveOptions& options = {});

// ---------------------------------------------------------------------------
// Steady state and statistics

struct SteadyStateOptions {
  /// Check that the null space of L is one-dimensional.
  bool check_uniqueness = true;
  /// The uniqueness check uses the full spectrum of L up to this size and
  /// the conditioning of the bordered system beyond it.
  std::size_t spectral_check_limit = 1024;
  /// Dense LU up to this superoperator size, sparse LU beyond it.
  std::size_t dense_limit = 1600;
  double residual_tolerance = 1e-8;
  /// Also integrate from the solution for `cross_check_time` and compare.
  bool cross_check_evolve = false;
  double cross_check_time = 10.0;
  double cross_check_tolerance = 1e-6;
};

struct SteadyStateReport {
  double residual = 0.0;
  /// |second smallest eigenvalue| / |smallest|, when computed.
  double spectral_gap_ratio = 0.0;
  bool used_sparse_solver = false;
  /// max |rho(T) - rho_ss| after the optional cross-check evolution.
  double cross_check_deviation = 0.0;
};

DensityMatrix steady_state(const Liouvillian& L, const SteadyStateOptions& options = {},
                           SteadyStateReport* report = nullptr);

/// Re tr(a^dag a rho); throws NumericalError if the imaginary part exceeds 1e-10.
double photon_number(const DensityMatrix& rho, const std::string& mode);

/// tr(a^dag a^dag a a rho) / tr(a^dag a rho)^2.
double g2_zero(const DensityMatrix& rho, const std::string& mode);

/// tr[a^dag a e^{L tau}(a rho_ss a^dag)] / tr(a^dag a rho_ss)^2 on `tau_grid`.
std::vector<double> g2_tau(const DensityMatrix& rho_ss, const Liouvillian& L,
                           std::span<const double> tau_grid, const std::string& mode,
                           const EvolveOptions& options = {});

// ---------------------------------------------------------------------------
// Cutoff convergence

struct SteadyObservable {
  enum class Kind { G2, PhotonNumber };
  Kind kind = Kind::G2;
  std::string mode = "a2";
};

double evaluate_steady_observable(const DensityMatrix& rho, const SteadyObservable& obs);

struct ConvergenceEntry {
  std::string mode;
  std::size_t cutoff = 0;
  std::size_t doubled_cutoff = 0;
  double value = 0.0;
  double relative_shift = 0.0;
};

struct ConvergenceReport {
  double baseline = 0.0;
  double threshold = 0.05;
  std::vector<ConvergenceEntry> entries;
  bool passed = false;
};

/// Recomputes the steady observable with each mode's cutoff doubled in turn.
ConvergenceReport convergence_check(const SystemParams& p, const HilbertSpec& spec,
                                    ModelVariant variant, const SteadyObservable& observable,
                                    const MasterEquationOptions& options = {},
                                    double threshold = 0.05);

}  // namespace blockade

#endif  // BLOCKADE_LINDBLAD_HPP
