// Copyright 2026 The hmaser Authors
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

#pragma once

// Truncated Fock-space linear algebra shared by every other module.
//
// Tensor-product ordering is fixed: atom (2 levels, index 0 = |e>, 1 = |g>)
// then cavity then mechanics. All objects are immutable values.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hmaser/errors.hpp"

namespace hmaser {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;

inline constexpr Complex kI{0.0, 1.0};

/// Truncation of the tripartite atom-cavity-mechanics space.
struct SpaceDims {
  int atom_levels = 2;
  int cavity_dim = 1;
  int mech_dim = 1;

  void validate() const;
  int total() const { return atom_levels * cavity_dim * mech_dim; }
  Dims list() const { return {atom_levels, cavity_dim, mech_dim}; }
};

/// Square complex matrix on a product of truncated Fock spaces.
class FockOperator {
 public:
  FockOperator() = default;
  FockOperator(Matrix m, Dims dims);
  /// Single-mode operator; the dimension is taken from the matrix.
  explicit FockOperator(Matrix m);

  const Matrix& matrix() const { return m_; }
  const Dims& dims() const { return dims_; }
  Eigen::Index dim() const { return m_.rows(); }

  FockOperator adjoint() const { return {m_.adjoint(), dims_}; }
  Complex trace() const { return m_.trace(); }

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(Complex s, const FockOperator& a);

 private:
  Matrix m_;
  Dims dims_;
};

/// Hermitian, unit-trace, positive-semidefinite operator. The invariants are
/// checked on construction.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-10;

  explicit DensityMatrix(FockOperator op);
  DensityMatrix(Matrix m, Dims dims) : DensityMatrix(FockOperator(std::move(m), std::move(dims))) {}
  explicit DensityMatrix(Matrix m) : DensityMatrix(FockOperator(std::move(m))) {}

  /// Hermitizes and renormalizes before checking positivity, for states that
  /// come out of truncated propagation. Larger trace drift is an error.
  static DensityMatrix normalized(Matrix m, Dims dims, double max_trace_drift = 1e-6);

  const FockOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const Dims& dims() const { return op_.dims(); }
  Eigen::Index dim() const { return op_.dim(); }

  double purity() const;
  Complex expect(const Matrix& observable) const;

 private:
  FockOperator op_;
};

FockOperator identity(int dim);
FockOperator destroy(int dim);
FockOperator create(int dim);
FockOperator number(int dim);
FockOperator pauli_z();
FockOperator sigma_plus();
FockOperator sigma_minus();

/// Kronecker product; operands are ordered atom, cavity, mechanics.
FockOperator kron(std::span<const FockOperator> ops);
FockOperator kron(std::initializer_list<FockOperator> ops);
Matrix kron(const Matrix& a, const Matrix& b);

enum class Subsystem { Atom, Cavity, Mechanics, AtomCavity, AtomMechanics, CavityMechanics };

Subsystem subsystem_from_string(std::string_view tag);

/// Reduced state on the listed subsystem indices (positions in rho.dims()).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
/// Tag form; rho must live on the tripartite atom-cavity-mechanics space.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

FockOperator expm(const FockOperator& op);
Matrix expm(const Matrix& m);

/// Scalar map for spectral calculus. A removable singularity can be declared
/// by giving its location and limiting value; non-finite values elsewhere are
/// rejected.
struct SpectralFunction {
  std::function<Complex(double)> f;
  std::optional<double> singular_point{};
  Complex limit{};

  Complex operator()(double x) const;
};

/// sin(t*sqrt(x))/sqrt(x), continued to t at x = 0.
SpectralFunction sinc_sqrt(double t);
/// cos(t*sqrt(x)).
SpectralFunction cos_sqrt(double t);

/// f(op) for Hermitian op. Diagonal inputs are mapped entrywise.
FockOperator matrix_function(const FockOperator& op, const SpectralFunction& f);

FockOperator commutator(const FockOperator& a, const FockOperator& b);

/// (1/2) * sum |eig(rho - sigma)|.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Exact Fock matrix elements <m|D(gamma)|n> for m < rows, n < cols, where
/// D(gamma) = exp(gamma b^dag - gamma^* b) acts on the untruncated space.
Matrix displacement_elements(Complex gamma, int rows, int cols);

DensityMatrix fock_state(int n, int dim);
/// Truncated and renormalized coherent state |alpha><alpha|.
DensityMatrix coherent_state(Complex alpha, int dim);
DensityMatrix thermal_state(double nbar, int dim);

double max_abs(const Matrix& m);

}  // namespace hmaser
