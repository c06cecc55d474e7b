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

#include "hmaser/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace hmaser {

void SystemParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(omega_m > 0.0) || !finite(omega_m)) fail(ErrorCode::InvalidArgument, "omega_m must be positive");
  for (double v : {omega_c, delta, g_ac, g_cm, r, kappa_a, kappa_b, n_th, xi, phi}) {
    if (!finite(v)) fail(ErrorCode::NonFinite, "system parameter is not finite");
  }
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    fail(ErrorCode::NonFinite, "alpha is not finite");
  }
  if (r < 0.0 || kappa_a < 0.0 || kappa_b < 0.0) fail(ErrorCode::InvalidArgument, "rates must be >= 0");
  if (n_th < 0.0) fail(ErrorCode::InvalidArgument, "n_th must be >= 0");
  if (xi < 0.0) fail(ErrorCode::InvalidArgument, "squeezing amplitude xi must be >= 0");
}

double PumpParameter::tau(const SystemParams& p) const {
  if (!(theta >= 0.0)) fail(ErrorCode::InvalidArgument, "pump parameter must be >= 0");
  if (!(p.r > 0.0)) fail(ErrorCode::InvalidArgument, "pump parameter needs a positive atom rate");
  return theta / std::sqrt(p.omega_m * p.r);
}

PumpParameter PumpParameter::from_tau(const SystemParams& p, double tau) {
  if (!(tau >= 0.0)) fail(ErrorCode::InvalidArgument, "interaction time must be >= 0");
  return {tau * std::sqrt(p.omega_m * p.r)};
}

namespace {

struct TripartiteOps {
  Matrix a, b, sz, sp, sm;
};

TripartiteOps tripartite_ops(const SpaceDims& d) {
  d.validate();
  const FockOperator ia = identity(2), ic = identity(d.cavity_dim), im = identity(d.mech_dim);
  return {kron({ia, destroy(d.cavity_dim), im}).matrix(), kron({ia, ic, destroy(d.mech_dim)}).matrix(),
          kron({pauli_z(), ic, im}).matrix(), kron({sigma_plus(), ic, im}).matrix(),
          kron({sigma_minus(), ic, im}).matrix()};
}

}  // namespace

FockOperator build_hamiltonian(const SystemParams& p, const SpaceDims& d) {
  const TripartiteOps o = tripartite_ops(d);
  const Matrix ad = o.a.adjoint(), bd = o.b.adjoint();
  Matrix h = 0.5 * p.omega_a() * o.sz + p.omega_c * ad * o.a + p.omega_m * bd * o.b +
             p.g_ac * (o.a * o.sp + ad * o.sm) - p.g_cm * ad * o.a * (bd + o.b);
  return {std::move(h), d.list()};
}

FockOperator polariton_number(const SpaceDims& d) {
  const TripartiteOps o = tripartite_ops(d);
  return {o.a.adjoint() * o.a + 0.5 * o.sz, d.list()};
}

FockOperator rotating_frame_generator(const SystemParams& p, const SpaceDims& d) {
  const TripartiteOps o = tripartite_ops(d);
  return {p.omega_c * (o.a.adjoint() * o.a + 0.5 * o.sz) + p.omega_m * o.b.adjoint() * o.b, d.list()};
}

FockOperator displacement_exp_iF(const SystemParams& p, int mech_dim) {
  const FockOperator b = destroy(mech_dim);
  return expm(Complex(p.lambda()) * (b.adjoint() - b));
}

FockOperator phi_operator(const SystemParams& p, int cavity_dim) {
  Matrix m = (p.g_ac * p.g_ac) * number(cavity_dim).matrix();
  m.diagonal().array() += 0.25 * p.delta * p.delta;
  return FockOperator(std::move(m));
}

EvolutionBlocks evolution_blocks(const SystemParams& p, int cavity_dim, double t) {
  if (!(t >= 0.0)) fail(ErrorCode::InvalidArgument, "evolution time must be >= 0");
  const FockOperator phi = phi_operator(p, cavity_dim);
  Matrix shifted_m = phi.matrix();
  shifted_m.diagonal().array() += p.g_ac * p.g_ac;
  const FockOperator shifted(std::move(shifted_m));

  const Complex half_delta = 0.5 * p.delta * kI;
  FockOperator s = matrix_function(shifted, sinc_sqrt(t));
  FockOperator c = matrix_function(shifted, cos_sqrt(t)) - half_delta * s;
  FockOperator d = matrix_function(phi, cos_sqrt(t)) + half_delta * matrix_function(phi, sinc_sqrt(t));
  return {std::move(c), std::move(s), std::move(d)};
}

FockOperator evolution_operator(const SystemParams& p, const SpaceDims& d, double t) {
  d.validate();
  const EvolutionBlocks blk = evolution_blocks(p, d.cavity_dim, t);
  const Matrix a = destroy(d.cavity_dim).matrix();
  const Matrix eF = displacement_exp_iF(p, d.mech_dim).matrix();
  const Matrix im = Matrix::Identity(d.mech_dim, d.mech_dim);
  const int n = d.cavity_dim * d.mech_dim;
  const Complex mig = -kI * p.g_ac;

  Matrix u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = kron(blk.c.matrix(), im);
  u.topRightCorner(n, n) = mig * kron(blk.s.matrix() * a, eF);
  u.bottomLeftCorner(n, n) = mig * kron(a.adjoint() * blk.s.matrix(), eF.adjoint());
  u.bottomRightCorner(n, n) = kron(blk.d.matrix(), im);
  return {std::move(u), d.list()};
}

SpaceDims space_dims_of(const DensityMatrix& rho) {
  const Dims& dims = rho.dims();
  if (dims.size() != 3 || dims[0] != 2) {
    fail(ErrorCode::InvalidDimension, "state must live on the atom (x) cavity (x) mechanics space");
  }
  return {2, dims[1], dims[2]};
}

namespace {

double top_level_population(const Matrix& rho, const SpaceDims& d) {
  double cav = 0.0, mech = 0.0;
  for (int i = 0; i < d.total(); ++i) {
    const int m = i % d.mech_dim;
    const int c = (i / d.mech_dim) % d.cavity_dim;
    const double pop = rho(i, i).real();
    if (c == d.cavity_dim - 1) cav += pop;
    if (m == d.mech_dim - 1) mech += pop;
  }
  return std::max(cav, mech);
}

}  // namespace

ClosedFormEvolution evolve_closed_form(const DensityMatrix& rho0, const SystemParams& p, double tau) {
  const SpaceDims d = space_dims_of(rho0);
  const Matrix u = evolution_operator(p, d, tau).matrix();
  Matrix out = u * rho0.matrix() * u.adjoint();
  const double top = top_level_population(out, d);
  return {DensityMatrix::normalized(std::move(out), d.list()), top};
}

BruteForceEvolution evolve_brute_force(const DensityMatrix& rho0, const SystemParams& p, double t,
                                       const BruteForceOptions& opts) {
  if (!(t >= 0.0)) fail(ErrorCode::InvalidArgument, "evolution time must be >= 0");
  if (opts.steps < 1) fail(ErrorCode::InvalidArgument, "brute-force propagation needs >= 1 step");
  const SpaceDims d = space_dims_of(rho0);
  const Matrix h = build_hamiltonian(p, d).matrix();

  auto propagate = [&](int steps) {
    const Matrix step = expm(Matrix(-kI * (t / steps) * h));
    Matrix u = Matrix::Identity(h.rows(), h.cols());
    for (int k = 0; k < steps; ++k) u = step * u;
    return Matrix(u * rho0.matrix() * u.adjoint());
  };

  int steps = opts.steps;
  Matrix coarse = propagate(steps);
  double change = 0.0;
  bool converged = false;
  for (int level = 0; level < opts.max_refinements; ++level) {
    Matrix fine = propagate(2 * steps);
    change = max_abs(fine - coarse);
    steps *= 2;
    coarse = std::move(fine);
    if (change < opts.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "brute-force propagation did not converge: last step-halving change " << change;
    fail(ErrorCode::Convergence, os.str());
  }
  if (opts.frame == Frame::Rotating) {
    const Matrix rot = expm(Matrix(kI * t * rotating_frame_generator(p, d).matrix()));
    coarse = rot * coarse * rot.adjoint();
  }
  return {DensityMatrix::normalized(std::move(coarse), d.list()), steps, change};
}

}  // namespace hmaser
