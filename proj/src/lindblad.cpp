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

#include "blockade/lindblad.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#ifdef BLOCKADE_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "blockade/errors.hpp"

namespace blockade {
namespace {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using Triplet = Eigen::Triplet<Complex>;
using ColumnSparse = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
#ifdef BLOCKADE_HAVE_UMFPACK
using SparseSolver = Eigen::UmfPackLU<ColumnSparse>;
#else
using SparseSolver = Eigen::SparseLU<ColumnSparse, Eigen::COLAMDOrdering<int>>;
#endif

constexpr Complex kI{0.0, 1.0};

DenseVector vectorize(const CMatrix& x) {
  DenseVector v(static_cast<Eigen::Index>(x.size()));
  std::copy(x.entries().begin(), x.entries().end(), v.data());
  return v;
}

CMatrix unvectorize(const DenseVector& v, std::size_t d) {
  CMatrix x(d, d);
  std::copy(v.data(), v.data() + v.size(), x.entries().begin());
  return x;
}

double max_abs(const DenseVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

void validate_grid(std::span<const double> grid, const char* who) {
  if (grid.empty()) throw InvalidArgument(std::string(who) + ": empty time grid");
  if (!(grid.front() >= 0.0)) throw InvalidArgument(std::string(who) + ": grid must start at t >= 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw InvalidArgument(std::string(who) + ": grid must be strictly increasing");
}

// Fixed-step RK4 over a sequence of intervals. Small superoperators use the
// dense one-step map P(h) = sum_{k<=4} (hL)^k/k! raised to the step count.
class Rk4Stepper {
 public:
  Rk4Stepper(const Liouvillian& L, const EvolveOptions& opts) : L_(L), opts_(opts) {
    const double norm = L.norm_inf();
    max_step_ = norm > 0.0 ? opts.step_factor / norm : std::numeric_limits<double>::infinity();
    dense_ = L.dimension() <= opts.propagator_limit;
    if (dense_) generator_ = DenseMatrix(L.matrix());
  }

  // Advances `x` by `span` and returns the number of RK4 steps taken.
  std::size_t advance(DenseVector& x, double span) {
    if (span <= 0.0) return 0;
    std::size_t steps = 1;
    if (std::isfinite(max_step_)) {
      const double n = std::ceil(span / max_step_ * (1.0 - 1e-12));
      if (n > static_cast<double>(opts_.max_steps))
        throw NumericalError("evolve: step underflow (more than max_steps RK4 steps required)");
      steps = std::max<std::size_t>(1, static_cast<std::size_t>(n));
    }
    const double h = span / static_cast<double>(steps);
    if (dense_) {
      x = interval_map(steps, h) * x;
    } else {
      total_steps_ += steps;
      if (total_steps_ > opts_.max_steps)
        throw NumericalError("evolve: step budget exhausted");
      for (std::size_t s = 0; s < steps; ++s) step(x, h);
    }
    return steps;
  }

 private:
  void step(DenseVector& x, double h) const {
    const auto& A = L_.matrix();
    const DenseVector k1 = A * x;
    const DenseVector k2 = A * (x + (0.5 * h) * k1);
    const DenseVector k3 = A * (x + (0.5 * h) * k2);
    const DenseVector k4 = A * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const DenseMatrix& interval_map(std::size_t steps, double h) {
    for (const auto& c : cache_)
      if (c.steps == steps && std::abs(c.h - h) <= 1e-12 * h) return c.map;
    const auto n = generator_.rows();
    const DenseMatrix id = DenseMatrix::Identity(n, n);
    const DenseMatrix a = h * generator_;
    const DenseMatrix one_step = id + a * (id + 0.5 * a * (id + (1.0 / 3.0) * a * (id + 0.25 * a)));
    DenseMatrix result = id;
    DenseMatrix base = one_step;
    for (std::size_t e = steps; e > 0; e >>= 1) {
      if (e & 1U) result = result * base;
      if (e > 1) base = base * base;
    }
    if (cache_.size() > 8) cache_.erase(cache_.begin());
    cache_.push_back({steps, h, std::move(result)});
    return cache_.back().map;
  }

  struct CachedMap {
    std::size_t steps;
    double h;
    DenseMatrix map;
  };

  const Liouvillian& L_;
  EvolveOptions opts_;
  double max_step_ = 0.0;
  bool dense_ = false;
  DenseMatrix generator_;
  std::vector<CachedMap> cache_;
  std::size_t total_steps_ = 0;
};

}  // namespace

std::string to_string(DissipatorConvention c) {
  return c == DissipatorConvention::Half ? "half" : "literal";
}

DissipatorConvention dissipator_convention_from_string(const std::string& s) {
  if (s == "half") return DissipatorConvention::Half;
  if (s == "literal") return DissipatorConvention::Literal;
  throw InvalidArgument("unknown lindblad convention '" + s + "' (expected half or literal)");
}

DensityMatrix::DensityMatrix(CMatrix matrix, HilbertSpec spec)
    : matrix_(std::move(matrix)), spec_(std::move(spec)) {
  if (matrix_.rows() != spec_.dimension() || matrix_.cols() != spec_.dimension())
    throw InvalidArgument("DensityMatrix: matrix does not match Hilbert space " + spec_.describe());
}

DensityMatrix DensityMatrix::vacuum(const HilbertSpec& spec) {
  CMatrix m(spec.dimension(), spec.dimension());
  m(0, 0) = 1.0;
  return DensityMatrix(std::move(m), spec);
}

DensityMatrix DensityMatrix::from_ket(std::span<const Complex> psi, const HilbertSpec& spec) {
  if (psi.size() != spec.dimension()) throw InvalidArgument("from_ket: dimension mismatch");
  double norm = 0.0;
  for (const Complex& z : psi) norm += std::norm(z);
  if (!(norm > 0.0)) throw InvalidArgument("from_ket: zero vector");
  CMatrix m(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) m(i, j) = psi[i] * std::conj(psi[j]) / norm;
  return DensityMatrix(std::move(m), spec);
}

double DensityMatrix::min_eigenvalue() const {
  const auto values = eigvalsh(matrix_);
  return values.empty() ? 0.0 : values.front();
}

Liouvillian::Liouvillian(SparseMatrix matrix, HilbertSpec spec)
    : matrix_(std::move(matrix)), spec_(std::move(spec)) {
  const auto d = static_cast<Eigen::Index>(spec_.dimension());
  if (matrix_.rows() != d * d || matrix_.cols() != d * d)
    throw InvalidArgument("Liouvillian: superoperator size does not match Hilbert space");
  matrix_.makeCompressed();
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
  const std::size_t d = hilbert_dimension();
  if (rho.rows() != d || rho.cols() != d) throw InvalidArgument("Liouvillian::apply: dimension mismatch");
  const DenseVector out = matrix_ * vectorize(rho);
  return unvectorize(out, d);
}

CMatrix Liouvillian::dense(std::size_t cap) const {
  const std::size_t n = dimension();
  if (n > cap) {
    std::ostringstream os;
    os << "Liouvillian::dense: superoperator dimension " << n << " exceeds cap " << cap;
    throw CapacityError(os.str());
  }
  CMatrix out(n, n);
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it)
      out(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col())) = it.value();
  return out;
}

double Liouvillian::norm_inf() const {
  double best = 0.0;
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

Liouvillian build_liouvillian(const CMatrix& hamiltonian, const DissipatorSpec& dissipators,
                              DissipatorConvention convention) {
  const HilbertSpec& spec = dissipators.spec;
  const std::size_t d = spec.dimension();
  if (d > dimension_cap()) throw CapacityError("build_liouvillian: Hilbert dimension exceeds cap");
  if (hamiltonian.rows() != d || hamiltonian.cols() != d)
    throw InvalidArgument("build_liouvillian: Hamiltonian does not match dissipator space");
  for (const auto& ch : dissipators.channels) {
    if (ch.op.rows() != d || ch.op.cols() != d)
      throw InvalidArgument("build_liouvillian: channel '" + ch.label + "' has wrong dimension");
    if (!(ch.rate >= 0.0)) throw InvalidArgument("build_liouvillian: negative rate");
  }

  // Effective generator K = -i H - c sum r o^dag o acts from the left; the
  // right action uses K^dag-like terms written out explicitly so that a
  // non-Hermitian H enters exactly as -i[H, rho].
  const double c = convention == DissipatorConvention::Half ? 0.5 : 1.0;
  CMatrix left = (-kI) * hamiltonian;   // coefficient of (X (x) I)
  CMatrix right = kI * hamiltonian;     // coefficient of (I (x) X^T)
  for (const auto& ch : dissipators.channels) {
    const CMatrix n = dagger(ch.op) * ch.op;
    left = left - (c * ch.rate) * n;
    right = right - (c * ch.rate) * n;
  }

  std::vector<Triplet> triplets;
  auto idx = [d](std::size_t i, std::size_t j) { return static_cast<int>(i * d + j); };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Complex l = left(i, j);
      const Complex r = right(j, i);  // (X^T)(i, j) = X(j, i)
      for (std::size_t k = 0; k < d; ++k) {
        if (l != Complex{}) triplets.emplace_back(idx(i, k), idx(j, k), l);
        if (r != Complex{}) triplets.emplace_back(idx(k, i), idx(k, j), r);
      }
    }
  for (const auto& ch : dissipators.channels) {
    const CMatrix& o = ch.op;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Complex oij = o(i, j);
        if (oij == Complex{}) continue;
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) {
            const Complex okl = o(k, l);
            if (okl == Complex{}) continue;
            triplets.emplace_back(idx(i, k), idx(j, l), ch.rate * oij * std::conj(okl));
          }
      }
  }
  const auto n = static_cast<Eigen::Index>(d * d);
  Liouvillian::SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(Complex{0.0, 0.0});
  return Liouvillian(std::move(m), spec);
}

Liouvillian model_liouvillian(const SystemParams& p, const HilbertSpec& spec, ModelVariant variant,
                              const MasterEquationOptions& options) {
  const SystemParams q = options.hermitize ? hermitized(p) : p;
  const CMatrix h = build_hamiltonian(variant, q, spec);
  const DissipatorSpec diss = collapse_ops(q, spec, variant == ModelVariant::Full);
  return build_liouvillian(h, diss, options.convention);
}

// ---------------------------------------------------------------------------

Observable g2_observable(const std::string& mode, const HilbertSpec& spec) {
  const CMatrix a = mode_annihilation(mode, spec);
  const CMatrix ad = dagger(a);
  const CMatrix n = ad * a;
  const CMatrix nn = ad * ad * a * a;
  return {"g2_" + mode, [n, nn](const CMatrix& rho) {
            const Complex tr = trace(rho);
            const double pop = (expectation(n, rho) / tr).real();
            if (!(pop > 1e-14)) return std::numeric_limits<double>::quiet_NaN();
            return (expectation(nn, rho) / tr).real() / (pop * pop);
          }};
}

Observable photon_number_observable(const std::string& mode, const HilbertSpec& spec) {
  const CMatrix a = mode_annihilation(mode, spec);
  const CMatrix n = dagger(a) * a;
  return {"n_" + mode, [n](const CMatrix& rho) { return (expectation(n, rho) / trace(rho)).real(); }};
}

const std::vector<double>& Trajectory::column(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return columns[k];
  throw InvalidArgument("Trajectory: no column '" + name + "'");
}

void propagate(const CMatrix& x0, const Liouvillian& L, std::span<const double> t_grid,
               const std::function<void(std::size_t, const CMatrix&)>& visit,
               const EvolveOptions& options) {
  validate_grid(t_grid, "propagate");
  const std::size_t d = L.hilbert_dimension();
  if (x0.rows() != d || x0.cols() != d) throw InvalidArgument("propagate: dimension mismatch");
  Rk4Stepper stepper(L, options);
  DenseVector x = vectorize(x0);
  double t = 0.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    stepper.advance(x, t_grid[i] - t);
    t = t_grid[i];
    const double peak = max_abs(x);
    if (!std::isfinite(peak) || peak > options.divergence_bound) {
      std::ostringstream os;
      os << "evolve: state diverged (max |entry| = " << peak << ") at t = " << t;
      throw InstabilityError(os.str(), t);
    }
    visit(i, unvectorize(x, d));
  }
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& L, std::span<const double> t_grid,
                  std::span<const Observable> observables, const EvolveOptions& options) {
  if (!(rho0.spec() == L.spec())) throw InvalidArgument("evolve: state and Liouvillian spaces differ");
  Trajectory traj;
  traj.times.assign(t_grid.begin(), t_grid.end());
  for (const auto& o : observables) traj.names.push_back(o.name);
  traj.columns.assign(observables.size(), std::vector<double>(t_grid.size()));
  traj.trace_drift.resize(t_grid.size());
  traj.hermiticity_deviation.resize(t_grid.size());
  propagate(rho0.matrix(), L, t_grid,
            [&](std::size_t i, const CMatrix& rho) {
              traj.trace_drift[i] = std::abs(trace(rho) - 1.0);
              traj.hermiticity_deviation[i] = blockade::hermiticity_deviation(rho);
              for (std::size_t k = 0; k < observables.size(); ++k)
                traj.columns[k][i] = observables[k].evaluate(rho);
            },
            options);
  return traj;
}

// ---------------------------------------------------------------------------

DensityMatrix steady_state(const Liouvillian& L, const SteadyStateOptions& options,
                           SteadyStateReport* report) {
  const std::size_t d = L.hilbert_dimension();
  const std::size_t n = L.dimension();
  SteadyStateReport local;

  if (options.check_uniqueness && n <= options.spectral_check_limit) {
    auto values = eig(L.dense(std::max(n, dimension_cap())), std::max(n, dimension_cap()));
    std::vector<double> mags(values.size());
    std::transform(values.begin(), values.end(), mags.begin(), [](Complex z) { return std::abs(z); });
    std::partial_sort(mags.begin(), mags.begin() + std::min<std::size_t>(2, mags.size()), mags.end());
    if (mags.size() >= 2) {
      local.spectral_gap_ratio = mags[0] > 0.0 ? mags[1] / mags[0] : std::numeric_limits<double>::infinity();
      if (!(mags[1] > 1e3 * mags[0])) {
        std::ostringstream os;
        os << "steady_state: null space not one-dimensional (|mu0|=" << mags[0]
           << ", |mu1|=" << mags[1] << ")";
        throw DegeneracyError(os.str());
      }
    }
  }

  // Replace the (0,0) row with the trace functional: tr rho = 1.
  std::vector<Complex> rhs(n, Complex{});
  rhs[0] = 1.0;
  DenseVector solution;
  if (n <= options.dense_limit) {
    CMatrix a = L.dense(std::max(n, dimension_cap()));
    for (std::size_t c = 0; c < n; ++c) a(0, c) = 0.0;
    for (std::size_t i = 0; i < d; ++i) a(0, i * d + i) = 1.0;
    std::vector<Complex> x;
    try {
      x = solve_linear(a, rhs);
    } catch (const SingularityError& e) {
      throw DegeneracyError(std::string("steady_state: bordered system singular; ") + e.what());
    }
    solution = Eigen::Map<DenseVector>(x.data(), static_cast<Eigen::Index>(x.size()));
  } else {
    local.used_sparse_solver = true;
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(L.matrix().nonZeros()) + d);
    for (Eigen::Index r = 1; r < L.matrix().outerSize(); ++r)
      for (Liouvillian::SparseMatrix::InnerIterator it(L.matrix(), r); it; ++it)
        triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (std::size_t i = 0; i < d; ++i) triplets.emplace_back(0, static_cast<int>(i * d + i), 1.0);
    ColumnSparse bordered(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    bordered.setFromTriplets(triplets.begin(), triplets.end());
    bordered.makeCompressed();
    SparseSolver lu;
    lu.compute(bordered);
    if (lu.info() != Eigen::Success)
      throw DegeneracyError("steady_state: sparse factorization failed (bordered system singular)");
    const DenseVector b = Eigen::Map<const DenseVector>(rhs.data(), static_cast<Eigen::Index>(n));
    solution = lu.solve(b);
    for (int sweep = 0; sweep < 3; ++sweep) {
      const DenseVector r = b - bordered * solution;
      if (!(r.norm() > 1e-14)) break;
      solution += lu.solve(r);
    }
    if (!solution.allFinite())
      throw DegeneracyError("steady_state: sparse solve produced non-finite entries");
  }

  const DenseVector lrho = L.matrix() * solution;
  local.residual = max_abs(lrho);
  if (!std::isfinite(local.residual) || local.residual > options.residual_tolerance) {
    std::ostringstream os;
    os << "steady_state: residual ||L rho|| = " << local.residual << " exceeds "
       << options.residual_tolerance;
    throw NumericalError(os.str());
  }
  DensityMatrix rho(unvectorize(solution, d), L.spec());

  if (options.cross_check_evolve) {
    const double grid[] = {options.cross_check_time};
    double deviation = 0.0;
    propagate(rho.matrix(), L, grid, [&](std::size_t, const CMatrix& x) {
      deviation = max_abs_diff(x, rho.matrix());
    });
    local.cross_check_deviation = deviation;
    if (deviation > options.cross_check_tolerance) {
      std::ostringstream os;
      os << "steady_state: evolution drifts " << deviation << " away from the solution";
      throw NumericalError(os.str());
    }
  }
  if (report) *report = local;
  return rho;
}

double photon_number(const DensityMatrix& rho, const std::string& mode) {
  const CMatrix a = mode_annihilation(mode, rho.spec());
  const Complex n = expectation(dagger(a) * a, rho.matrix());
  if (std::abs(n.imag()) > 1e-10) {
    std::ostringstream os;
    os << "photon_number: imaginary part " << n.imag() << " exceeds 1e-10";
    throw NumericalError(os.str());
  }
  return n.real();
}

double g2_zero(const DensityMatrix& rho, const std::string& mode) {
  const CMatrix a = mode_annihilation(mode, rho.spec());
  const CMatrix ad = dagger(a);
  const double n = expectation(ad * a, rho.matrix()).real();
  if (!(n > 1e-14)) throw UndefinedCorrelation("g2_zero: mode '" + mode + "' is empty");
  return expectation(ad * ad * a * a, rho.matrix()).real() / (n * n);
}

std::vector<double> g2_tau(const DensityMatrix& rho_ss, const Liouvillian& L,
                           std::span<const double> tau_grid, const std::string& mode,
                           const EvolveOptions& options) {
  if (!(rho_ss.spec() == L.spec())) throw InvalidArgument("g2_tau: state and Liouvillian spaces differ");
  const CMatrix a = mode_annihilation(mode, rho_ss.spec());
  const CMatrix ad = dagger(a);
  const CMatrix number = ad * a;
  const double n = expectation(number, rho_ss.matrix()).real();
  if (!(n > 1e-14)) throw UndefinedCorrelation("g2_tau: mode '" + mode + "' is empty");
  std::vector<double> out(tau_grid.size());
  propagate(a * rho_ss.matrix() * ad, L, tau_grid,
            [&](std::size_t i, const CMatrix& x) {
              out[i] = expectation(number, x).real() / (n * n);
            },
            options);
  return out;
}

// ---------------------------------------------------------------------------

double evaluate_steady_observable(const DensityMatrix& rho, const SteadyObservable& obs) {
  return obs.kind == SteadyObservable::Kind::G2 ? g2_zero(rho, obs.mode)
                                                : photon_number(rho, obs.mode);
}

ConvergenceReport convergence_check(const SystemParams& p, const HilbertSpec& spec,
                                    ModelVariant variant, const SteadyObservable& observable,
                                    const MasterEquationOptions& options, double threshold) {
  SteadyStateOptions ss;
  ss.check_uniqueness = false;
  auto compute = [&](const HilbertSpec& s) {
    return evaluate_steady_observable(steady_state(model_liouvillian(p, s, variant, options), ss),
                                      observable);
  };
  ConvergenceReport report;
  report.threshold = threshold;
  report.baseline = compute(spec);
  report.passed = true;
  for (const Mode& m : spec.modes()) {
    const HilbertSpec doubled = spec.with_cutoff(m.label, 2 * m.cutoff);
    if (doubled.dimension() > dimension_cap()) {
      std::ostringstream os;
      os << "convergence_check: doubled space " << doubled.describe() << " exceeds cap";
      throw CapacityError(os.str());
    }
    ConvergenceEntry e;
    e.mode = m.label;
    e.cutoff = m.cutoff;
    e.doubled_cutoff = 2 * m.cutoff;
    e.value = compute(doubled);
    const double scale = std::abs(report.baseline);
    e.relative_shift = scale > 0.0 ? std::abs(e.value - report.baseline) / scale
                                   : std::abs(e.value - report.baseline);
    if (!(e.relative_shift < threshold)) report.passed = false;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace blockade
