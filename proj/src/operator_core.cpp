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

#include "hmaser/operator_core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace hmaser {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::NonFinite: return "non-finite";
    case ErrorCode::SingularFunction: return "singular-function";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::UndefinedStatistics: return "undefined-statistics";
    case ErrorCode::DegenerateSteadyState: return "degenerate-steady-state";
    case ErrorCode::Convergence: return "convergence";
    case ErrorCode::Truncation: return "truncation";
    case ErrorCode::Stiffness: return "stiffness";
    case ErrorCode::UnknownTag: return "unknown-tag";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace {

int product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

bool all_finite(const Matrix& m) {
  return m.array().isFinite().all();
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void SpaceDims::validate() const {
  if (atom_levels != 2) fail(ErrorCode::InvalidDimension, "atom must have exactly 2 levels");
  if (cavity_dim < 1 || mech_dim < 1) {
    fail(ErrorCode::InvalidDimension, "mode dimensions must be >= 1");
  }
}

FockOperator::FockOperator(Matrix m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {
  if (m_.rows() != m_.cols()) fail(ErrorCode::InvalidDimension, "operator matrix must be square");
  for (int d : dims_) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "subsystem dimension must be >= 1");
  }
  if (dims_.empty() || product(dims_) != m_.rows()) {
    fail(ErrorCode::InvalidDimension, "matrix size does not match the product of subsystem dims");
  }
}

FockOperator::FockOperator(Matrix m) {
  const int n = static_cast<int>(m.rows());
  *this = FockOperator(std::move(m), Dims{n});
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  if (a.dims_ != b.dims_) fail(ErrorCode::InvalidDimension, "operator product with mismatched dims");
  return {a.m_ * b.m_, a.dims_};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  if (a.dims_ != b.dims_) fail(ErrorCode::InvalidDimension, "operator sum with mismatched dims");
  return {a.m_ + b.m_, a.dims_};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  if (a.dims_ != b.dims_) fail(ErrorCode::InvalidDimension, "operator difference with mismatched dims");
  return {a.m_ - b.m_, a.dims_};
}

FockOperator operator*(Complex s, const FockOperator& a) { return {s * a.m_, a.dims_}; }

DensityMatrix::DensityMatrix(FockOperator op) : op_(std::move(op)) {
  const Matrix& m = op_.matrix();
  if (!all_finite(m)) fail(ErrorCode::NonFinite, "density matrix has non-finite entries");
  if (max_abs(m - m.adjoint()) > kHermitianTol) {
    fail(ErrorCode::InvalidState, "density matrix is not Hermitian");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " differs from 1";
    fail(ErrorCode::InvalidState, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().size() > 0 && es.eigenvalues().minCoeff() < -kEigenTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << es.eigenvalues().minCoeff();
    fail(ErrorCode::InvalidState, os.str());
  }
}

DensityMatrix DensityMatrix::normalized(Matrix m, Dims dims, double max_trace_drift) {
  Matrix h = 0.5 * (m + m.adjoint());
  const Complex tr = h.trace();
  if (!(std::abs(tr - 1.0) <= max_trace_drift)) {
    std::ostringstream os;
    os << "trace drifted to " << tr.real() << " before renormalization";
    fail(ErrorCode::InvalidState, os.str());
  }
  h /= tr.real();
  return DensityMatrix(std::move(h), std::move(dims));
}

double DensityMatrix::purity() const {
  return (matrix() * matrix()).trace().real();
}

Complex DensityMatrix::expect(const Matrix& observable) const {
  return (matrix() * observable).trace();
}

FockOperator identity(int dim) {
  if (dim < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
  return FockOperator(Matrix::Identity(dim, dim));
}

FockOperator destroy(int dim) {
  if (dim < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return FockOperator(std::move(m));
}

FockOperator create(int dim) { return destroy(dim).adjoint(); }

FockOperator number(int dim) {
  if (dim < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return FockOperator(std::move(m));
}

FockOperator pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return FockOperator(std::move(m));
}

// |e><g| with |e> at index 0.
FockOperator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return FockOperator(std::move(m));
}

FockOperator sigma_minus() { return sigma_plus().adjoint(); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

FockOperator kron(std::span<const FockOperator> ops) {
  if (ops.empty()) fail(ErrorCode::InvalidArgument, "kron needs at least one operand");
  Matrix m = ops.front().matrix();
  Dims dims = ops.front().dims();
  for (std::size_t k = 1; k < ops.size(); ++k) {
    m = kron(m, ops[k].matrix());
    dims.insert(dims.end(), ops[k].dims().begin(), ops[k].dims().end());
  }
  return {std::move(m), std::move(dims)};
}

FockOperator kron(std::initializer_list<FockOperator> ops) {
  return kron(std::span<const FockOperator>(ops.begin(), ops.size()));
}

Subsystem subsystem_from_string(std::string_view tag) {
  if (tag == "atom") return Subsystem::Atom;
  if (tag == "cavity") return Subsystem::Cavity;
  if (tag == "mechanics") return Subsystem::Mechanics;
  if (tag == "atom+cavity") return Subsystem::AtomCavity;
  if (tag == "atom+mechanics") return Subsystem::AtomMechanics;
  if (tag == "cavity+mechanics") return Subsystem::CavityMechanics;
  fail(ErrorCode::UnknownTag, "unknown subsystem tag '" + std::string(tag) + "'");
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const Dims& dims = rho.dims();
  const int nsub = static_cast<int>(dims.size());
  std::vector<bool> kept(nsub, false);
  for (int k : keep) {
    if (k < 0 || k >= nsub || kept[k]) fail(ErrorCode::InvalidArgument, "bad subsystem index in partial trace");
    kept[k] = true;
  }
  if (keep.empty()) fail(ErrorCode::InvalidArgument, "partial trace must keep at least one subsystem");

  Dims out_dims;
  for (int k = 0; k < nsub; ++k) {
    if (kept[k]) out_dims.push_back(dims[k]);
  }
  const int total = static_cast<int>(rho.dim());
  std::vector<int> kept_index(total), traced_index(total);
  std::vector<int> digits(nsub);
  for (int i = 0; i < total; ++i) {
    int rem = i;
    for (int k = nsub - 1; k >= 0; --k) {
      digits[k] = rem % dims[k];
      rem /= dims[k];
    }
    int ki = 0, ti = 0;
    for (int k = 0; k < nsub; ++k) {
      if (kept[k]) ki = ki * dims[k] + digits[k];
      else ti = ti * dims[k] + digits[k];
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }
  const int out_dim = product(out_dims);
  Matrix out = Matrix::Zero(out_dim, out_dim);
  const Matrix& m = rho.matrix();
  for (int j = 0; j < total; ++j) {
    for (int i = 0; i < total; ++i) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return DensityMatrix(std::move(out), std::move(out_dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  if (rho.dims().size() != 3) {
    fail(ErrorCode::InvalidDimension, "subsystem tags need a tripartite atom-cavity-mechanics state");
  }
  switch (keep) {
    case Subsystem::Atom: return partial_trace(rho, std::vector<int>{0});
    case Subsystem::Cavity: return partial_trace(rho, std::vector<int>{1});
    case Subsystem::Mechanics: return partial_trace(rho, std::vector<int>{2});
    case Subsystem::AtomCavity: return partial_trace(rho, std::vector<int>{0, 1});
    case Subsystem::AtomMechanics: return partial_trace(rho, std::vector<int>{0, 2});
    case Subsystem::CavityMechanics: return partial_trace(rho, std::vector<int>{1, 2});
  }
  fail(ErrorCode::UnknownTag, "unknown subsystem tag");
}

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidDimension, "expm needs a square matrix");
  if (!all_finite(m)) fail(ErrorCode::NonFinite, "expm input has non-finite entries");
  return m.exp();
}

FockOperator expm(const FockOperator& op) { return {expm(op.matrix()), op.dims()}; }

Complex SpectralFunction::operator()(double x) const {
  const Complex v = f(x);
  if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
  if (singular_point && std::abs(x - *singular_point) <= 1e-12 * (1.0 + std::abs(*singular_point))) {
    return limit;
  }
  std::ostringstream os;
  os << "spectral function is singular at eigenvalue " << x;
  fail(ErrorCode::SingularFunction, os.str());
}

SpectralFunction sinc_sqrt(double t) {
  SpectralFunction s;
  s.f = [t](double x) -> Complex {
    if (x == 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    const double r = std::sqrt(x);
    return std::sin(t * r) / r;
  };
  s.singular_point = 0.0;
  s.limit = t;
  return s;
}

SpectralFunction cos_sqrt(double t) {
  SpectralFunction s;
  s.f = [t](double x) -> Complex { return std::cos(t * std::sqrt(x)); };
  // cos(t*sqrt(x)) is entire in x; roundoff-negative eigenvalues map to 1.
  s.singular_point = 0.0;
  s.limit = 1.0;
  return s;
}

FockOperator matrix_function(const FockOperator& op, const SpectralFunction& f) {
  const Matrix& m = op.matrix();
  const double scale = 1.0 + max_abs(m);
  if (max_abs(m - m.adjoint()) > 1e-12 * scale) {
    fail(ErrorCode::InvalidArgument, "matrix_function needs a Hermitian operator");
  }
  const Eigen::Index n = m.rows();
  Matrix off = m;
  off.diagonal().setZero();
  if (max_abs(off) == 0.0) {
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out(i, i) = f(m(i, i).real());
    return {std::move(out), op.dims()};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Vector fx(n);
  for (Eigen::Index i = 0; i < n; ++i) fx(i) = f(es.eigenvalues()(i));
  Matrix out = es.eigenvectors() * fx.asDiagonal() * es.eigenvectors().adjoint();
  return {std::move(out), op.dims()};
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) { return a * b - b * a; }

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows()) fail(ErrorCode::InvalidDimension, "trace distance of mismatched states");
  Matrix d = rho - sigma;
  d = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

// Columns follow D|n+1> = (b^dag - gamma^*) D|n> / sqrt(n+1), seeded by the
// coherent amplitudes D|0>.
Matrix displacement_elements(Complex gamma, int rows, int cols) {
  if (rows < 1 || cols < 1) fail(ErrorCode::InvalidDimension, "displacement block needs positive size");
  Matrix d = Matrix::Zero(rows, cols);
  d(0, 0) = std::exp(-0.5 * std::norm(gamma));
  for (int m = 1; m < rows; ++m) d(m, 0) = d(m - 1, 0) * gamma / std::sqrt(static_cast<double>(m));
  const Complex gc = std::conj(gamma);
  for (int n = 0; n + 1 < cols; ++n) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(n + 1));
    for (int m = 0; m < rows; ++m) {
      Complex v = -gc * d(m, n);
      if (m > 0) v += std::sqrt(static_cast<double>(m)) * d(m - 1, n);
      d(m, n + 1) = v * inv;
    }
  }
  return d;
}

DensityMatrix fock_state(int n, int dim) {
  if (n < 0 || n >= dim) fail(ErrorCode::InvalidDimension, "Fock level outside the truncation");
  Matrix m = Matrix::Zero(dim, dim);
  m(n, n) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix coherent_state(Complex alpha, int dim) {
  if (dim < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
  Vector v = displacement_elements(alpha, dim, 1).col(0);
  v /= v.norm();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix thermal_state(double nbar, int dim) {
  if (dim < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
  if (!(nbar >= 0.0)) fail(ErrorCode::InvalidArgument, "thermal occupancy must be >= 0");
  Matrix m = Matrix::Zero(dim, dim);
  if (nbar == 0.0) {
    m(0, 0) = 1.0;
    return DensityMatrix(std::move(m));
  }
  const double q = nbar / (1.0 + nbar);
  double p = 1.0, total = 0.0;
  for (int n = 0; n < dim; ++n) {
    m(n, n) = p;
    total += p;
    p *= q;
  }
  m /= total;
  return DensityMatrix(std::move(m));
}

}  // namespace hmaser
