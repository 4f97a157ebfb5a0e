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

#include "blockade/tensor.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "blockade/errors.hpp"

namespace blockade {
namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EigenVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using ConstMap = Eigen::Map<const EigenMatrix>;

ConstMap as_eigen(const CMatrix& a) {
  return ConstMap(a.entries().data(), static_cast<Eigen::Index>(a.rows()),
                  static_cast<Eigen::Index>(a.cols()));
}

CMatrix from_eigen(const EigenMatrix& m) {
  CMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  std::copy(m.data(), m.data() + m.size(), out.entries().begin());
  return out;
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": dimension mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw InvalidArgument(os.str());
  }
}

void require_square(const CMatrix& a, const char* op) {
  if (!a.is_square()) {
    std::ostringstream os;
    os << op << ": matrix is " << a.rows() << "x" << a.cols() << ", expected square";
    throw InvalidArgument(os.str());
  }
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

std::size_t dimension_cap() {
  if (const char* env = std::getenv("BLOCKADE_LAB_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultDimensionCap;
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw InvalidArgument("CMatrix: entry count does not match rows*cols");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("CMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "add");
  CMatrix out = a;
  auto dst = out.entries();
  auto src = b.entries();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "sub");
  CMatrix out = a;
  auto dst = out.entries();
  auto src = b.entries();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  return out;
}

CMatrix operator*(Complex s, const CMatrix& a) {
  CMatrix out = a;
  for (Complex& z : out.entries()) z *= s;
  return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matmul: inner dimensions differ (" << a.cols() << " vs " << b.rows() << ")";
    throw InvalidArgument(os.str());
  }
  EigenMatrix product = as_eigen(a) * as_eigen(b);
  return from_eigen(product);
}

CMatrix dagger(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

CMatrix transpose(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

Complex trace(const CMatrix& a) {
  require_square(a, "trace");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

Complex expectation(const CMatrix& op, const CMatrix& rho) {
  require_square(op, "expectation");
  require_same_shape(op, rho, "expectation");
  const std::size_t n = op.rows();
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += op(i, k) * rho(k, i);
  return t;
}

std::vector<Complex> matvec(const CMatrix& a, std::span<const Complex> x) {
  if (x.size() != a.cols()) throw InvalidArgument("matvec: dimension mismatch");
  std::vector<Complex> y(a.rows(), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t cap) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > cap || cols > cap) {
    std::ostringstream os;
    os << "kron: composite dimension " << rows << "x" << cols << " exceeds cap " << cap;
    throw CapacityError(os.str());
  }
  CMatrix out(rows, cols);
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = aij * b(k, l);
    }
  return out;
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  auto x = a.entries();
  auto y = b.entries();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double hermiticity_deviation(const CMatrix& a) {
  require_square(a, "hermiticity_deviation");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c)
      m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
  return m;
}

bool is_hermitian(const CMatrix& a, double tol) {
  return a.is_square() && hermiticity_deviation(a) <= tol;
}

bool all_finite(const CMatrix& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

std::vector<Complex> eig(const CMatrix& a, std::size_t cap) {
  require_square(a, "eig");
  if (a.rows() > cap) throw CapacityError("eig: dimension exceeds cap");
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(as_eigen(a)), false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eig: QR iteration did not converge (dimension " << a.rows()
       << ", max |entry| " << max_abs(a) << ")";
    throw NumericalError(os.str());
  }
  const auto& values = solver.eigenvalues();
  return std::vector<Complex>(values.data(), values.data() + values.size());
}

std::vector<double> eigvalsh(const CMatrix& a, std::size_t cap) {
  require_square(a, "eigvalsh");
  if (a.rows() > cap) throw CapacityError("eigvalsh: dimension exceeds cap");
  if (a.rows() == 0) return {};
  Eigen::MatrixXcd m = as_eigen(a);
  Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigvalsh: did not converge");
  const auto& values = solver.eigenvalues();
  return std::vector<double>(values.data(), values.data() + values.size());
}

std::vector<Complex> solve_linear(const CMatrix& a, std::span<const Complex> b) {
  require_square(a, "solve_linear");
  if (b.size() != a.rows()) throw InvalidArgument("solve_linear: rhs dimension mismatch");
  const auto n = static_cast<Eigen::Index>(a.rows());
  if (n == 0) return {};

  const Eigen::MatrixXcd m = as_eigen(a);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > 1e-15)) {
    throw SingularityError("solve_linear: matrix is singular to working precision", cond);
  }

  const Eigen::Map<const EigenVector> rhs(b.data(), n);
  EigenVector x = lu.solve(rhs);
  const double bnorm = norm2(b);
  const double tol = 1e-10 * (bnorm > 0.0 ? bnorm : 1.0);
  for (int sweep = 0; sweep < 4; ++sweep) {
    EigenVector residual = rhs - m * x;
    if (residual.norm() <= tol) break;
    x += lu.solve(residual);
  }
  const double final_residual = (rhs - m * x).norm();
  if (!std::isfinite(final_residual) || final_residual > tol) {
    std::ostringstream os;
    os << "solve_linear: residual " << final_residual << " above tolerance " << tol;
    throw SingularityError(os.str(), cond);
  }
  return std::vector<Complex>(x.data(), x.data() + x.size());
}

// ---------------------------------------------------------------------------

CMatrix annihilation(std::size_t cutoff) {
  if (cutoff < 2) throw InvalidArgument("annihilation: cutoff must be >= 2");
  CMatrix a(cutoff, cutoff);
  for (std::size_t n = 0; n + 1 < cutoff; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return a;
}

CMatrix creation(std::size_t cutoff) { return dagger(annihilation(cutoff)); }

CMatrix number_operator(std::size_t cutoff) {
  if (cutoff < 2) throw InvalidArgument("number_operator: cutoff must be >= 2");
  CMatrix n(cutoff, cutoff);
  for (std::size_t k = 0; k < cutoff; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

HilbertSpec::HilbertSpec(std::vector<Mode> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw InvalidArgument("HilbertSpec: at least one mode required");
  std::unordered_set<std::string> seen;
  dimension_ = 1;
  for (const Mode& m : modes_) {
    if (m.cutoff < 2) throw InvalidArgument("HilbertSpec: cutoff of mode '" + m.label + "' < 2");
    if (!seen.insert(m.label).second)
      throw InvalidArgument("HilbertSpec: duplicate mode label '" + m.label + "'");
    dimension_ *= m.cutoff;
  }
}

HilbertSpec HilbertSpec::reduced(std::size_t a1, std::size_t a2) {
  return HilbertSpec({{"a1", a1}, {"a2", a2}});
}

HilbertSpec HilbertSpec::full(std::size_t a1, std::size_t a2, std::size_t b) {
  return HilbertSpec({{"a1", a1}, {"a2", a2}, {"b", b}});
}

bool HilbertSpec::has(const std::string& label) const {
  return std::any_of(modes_.begin(), modes_.end(),
                     [&](const Mode& m) { return m.label == label; });
}

std::size_t HilbertSpec::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].label == label) return i;
  throw InvalidArgument("HilbertSpec: unknown mode label '" + label + "'");
}

std::size_t HilbertSpec::cutoff(const std::string& label) const {
  return modes_[index_of(label)].cutoff;
}

HilbertSpec HilbertSpec::with_cutoff(const std::string& label, std::size_t cutoff) const {
  std::vector<Mode> modes = modes_;
  modes[index_of(label)].cutoff = cutoff;
  return HilbertSpec(std::move(modes));
}

std::vector<std::size_t> HilbertSpec::occupations(std::size_t index) const {
  std::vector<std::size_t> occ(modes_.size());
  for (std::size_t k = modes_.size(); k-- > 0;) {
    occ[k] = index % modes_[k].cutoff;
    index /= modes_[k].cutoff;
  }
  return occ;
}

std::size_t HilbertSpec::index(std::span<const std::size_t> occupations) const {
  if (occupations.size() != modes_.size())
    throw InvalidArgument("HilbertSpec::index: wrong number of occupations");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (occupations[k] >= modes_[k].cutoff)
      throw InvalidArgument("HilbertSpec::index: occupation exceeds cutoff");
    idx = idx * modes_[k].cutoff + occupations[k];
  }
  return idx;
}

std::string HilbertSpec::describe() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i) os << ", ";
    os << modes_[i].label << ":" << modes_[i].cutoff;
  }
  os << ")";
  return os.str();
}

CMatrix embed(const CMatrix& op, const std::string& label, const HilbertSpec& spec) {
  const std::size_t slot = spec.index_of(label);
  const std::size_t c = spec.modes()[slot].cutoff;
  if (op.rows() != c || op.cols() != c) {
    std::ostringstream os;
    os << "embed: operator is " << op.rows() << "x" << op.cols() << " but mode '" << label
       << "' has cutoff " << c;
    throw InvalidArgument(os.str());
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t k = 0; k < slot; ++k) left *= spec.modes()[k].cutoff;
  for (std::size_t k = slot + 1; k < spec.mode_count(); ++k) right *= spec.modes()[k].cutoff;
  return kron(kron(CMatrix::identity(left), op), CMatrix::identity(right));
}

CMatrix mode_annihilation(const std::string& label, const HilbertSpec& spec) {
  return embed(annihilation(spec.cutoff(label)), label, spec);
}

}  // namespace blockade
