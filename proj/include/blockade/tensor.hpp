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

#ifndef BLOCKADE_TENSOR_HPP
#define BLOCKADE_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace blockade {

using Complex = std::complex<double>;

/// Default cap on composite Hilbert (and superoperator) dimensions handled
/// by dense kernels. Overridden by the BLOCKADE_LAB_CAP environment variable.
inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Returns the active dimension cap (environment override or default).
std::size_t dimension_cap();

/// Dense complex matrix, row-major, value semantics.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, const CMatrix& a);
inline CMatrix operator*(const CMatrix& a, Complex s) { return s * a; }

inline CMatrix add(const CMatrix& a, const CMatrix& b) { return a + b; }
inline CMatrix sub(const CMatrix& a, const CMatrix& b) { return a - b; }
inline CMatrix scale(Complex s, const CMatrix& a) { return s * a; }
inline CMatrix matmul(const CMatrix& a, const CMatrix& b) { return a * b; }

CMatrix dagger(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
Complex trace(const CMatrix& a);

/// trace(op * rho) without forming the product.
Complex expectation(const CMatrix& op, const CMatrix& rho);

std::vector<Complex> matvec(const CMatrix& a, std::span<const Complex> x);

/// Kronecker product; throws CapacityError if either composite dimension
/// exceeds `cap`.
CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t cap = dimension_cap());

double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
/// max |a(i,j) - conj(a(j,i))|
double hermiticity_deviation(const CMatrix& a);
bool is_hermitian(const CMatrix& a, double tol);
bool all_finite(const CMatrix& a);

/// Eigenvalues of a general complex matrix, in solver order.
std::vector<Complex> eig(const CMatrix& a, std::size_t cap = dimension_cap());

/// Eigenvalues of a Hermitian matrix (real, ascending).
std::vector<double> eigvalsh(const CMatrix& a, std::size_t cap = dimension_cap());

/// Solves a x = b by LU with partial pivoting plus iterative refinement.
/// Guarantees ||a x - b|| <= 1e-10 ||b|| or throws.
std::vector<Complex> solve_linear(const CMatrix& a, std::span<const Complex> b);

// ---------------------------------------------------------------------------
// Fock space

/// Truncated bosonic annihilation operator on |0> ... |cutoff-1>.
CMatrix annihilation(std::size_t cutoff);
CMatrix creation(std::size_t cutoff);
CMatrix number_operator(std::size_t cutoff);

struct Mode {
  std::string label;
  std::size_t cutoff = 0;
  bool operator==(const Mode&) const = default;
};

/// Ordered list of modes defining a truncated composite Fock space. The
/// first mode is the most significant index of the composite basis.
class HilbertSpec {
 public:
  HilbertSpec() = default;
  explicit HilbertSpec(std::vector<Mode> modes);

  /// (a1, a2) with the given cutoffs.
  static HilbertSpec reduced(std::size_t a1 = 4, std::size_t a2 = 4);
  /// (a1, a2, b) with the given cutoffs.
  static HilbertSpec full(std::size_t a1 = 4, std::size_t a2 = 4, std::size_t b = 8);

  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t mode_count() const { return modes_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t index_of(const std::string& label) const;
  bool has(const std::string& label) const;
  std::size_t cutoff(const std::string& label) const;

  /// Copy with one mode's cutoff replaced.
  HilbertSpec with_cutoff(const std::string& label, std::size_t cutoff) const;

  /// Occupation numbers of composite basis state `index`.
  std::vector<std::size_t> occupations(std::size_t index) const;
  std::size_t index(std::span<const std::size_t> occupations) const;

  std::string describe() const;

  bool operator==(const HilbertSpec&) const = default;

 private:
  std::vector<Mode> modes_;
  std::size_t dimension_ = 0;
};

/// Lifts a single-mode operator into the composite space of `spec`.
CMatrix embed(const CMatrix& op, const std::string& label, const HilbertSpec& spec);

/// Annihilation operator of mode `label` in the composite space.
CMatrix mode_annihilation(const std::string& label, const HilbertSpec& spec);

}  // namespace blockade

#endif  // BLOCKADE_TENSOR_HPP
