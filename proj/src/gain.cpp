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

#include "hmaser/gain.hpp"

#include <cmath>

namespace hmaser {

namespace {

// sin^2(tau sqrt(phi)) / phi, continued to tau^2 at phi = 0.
double sinc_sq(double tau, double phi) {
  if (phi <= 0.0) return tau * tau;
  const double s = std::sin(tau * std::sqrt(phi));
  return s * s / phi;
}

}  // namespace

GainCoefficients gain_coefficients(const SystemParams& p, double tau) {
  p.validate();
  if (!(tau >= 0.0)) fail(ErrorCode::InvalidArgument, "interaction time must be >= 0");
  const double x = std::norm(p.alpha);
  const double g2 = p.g_ac * p.g_ac;
  const double quarter_d2 = 0.25 * p.delta * p.delta;
  const double log_x = x > 0.0 ? std::log(x) : 0.0;
  const int n_cap = static_cast<int>(x + 40.0 * std::sqrt(x) + 100.0);

  double a = 0.0, b = 0.0;
  for (int n = 0; n <= n_cap; ++n) {
    double w;
    if (x == 0.0) w = n == 0 ? 1.0 : 0.0;
    else w = std::exp(-x + n * log_x - std::lgamma(n + 1.0));
    if (n > x && w < kSeriesFloor) break;
    const double phi = g2 * n + quarter_d2;
    const double c = std::cos(tau * std::sqrt(phi));
    const double sc = sinc_sq(tau, phi);
    a += w * (c * c + quarter_d2 * sc);
    b += w * n * g2 * sc;
  }
  return {a, b, p.lambda()};
}

std::vector<Matrix> phonon_gain_kraus(const SystemParams& p, double tau, int mech_dim) {
  const GainCoefficients gc = gain_coefficients(p, tau);
  const Matrix eF = displacement_exp_iF(p, mech_dim).matrix();
  return {std::sqrt(std::max(gc.a_coeff, 0.0)) * Matrix::Identity(mech_dim, mech_dim),
          std::sqrt(std::max(gc.b_coeff, 0.0)) * eF};
}

std::vector<Matrix> cavity_gain_kraus(const SystemParams& p, double tau, int cavity_dim) {
  const EvolutionBlocks blk = evolution_blocks(p, cavity_dim, tau);
  const Matrix a = destroy(cavity_dim).matrix();
  return {blk.c.matrix(), -kI * p.g_ac * a.adjoint() * blk.s.matrix()};
}

DensityMatrix phonon_gain_map(const DensityMatrix& rho_m, const SystemParams& p, double tau) {
  if (rho_m.dims().size() != 1) fail(ErrorCode::InvalidDimension, "phonon gain map acts on a single mode");
  const GainCoefficients gc = gain_coefficients(p, tau);
  const Matrix eF = displacement_exp_iF(p, static_cast<int>(rho_m.dim())).matrix();
  Matrix out = gc.a_coeff * rho_m.matrix() + gc.b_coeff * eF * rho_m.matrix() * eF.adjoint();
  return DensityMatrix(std::move(out), rho_m.dims());
}

DensityMatrix cavity_gain_map(const DensityMatrix& rho_c, const SystemParams& p, PumpParameter theta) {
  if (rho_c.dims().size() != 1) fail(ErrorCode::InvalidDimension, "cavity gain map acts on a single mode");
  const auto kraus = cavity_gain_kraus(p, theta.tau(p), static_cast<int>(rho_c.dim()));
  Matrix out = Matrix::Zero(rho_c.dim(), rho_c.dim());
  for (const Matrix& k : kraus) out += k * rho_c.matrix() * k.adjoint();
  return DensityMatrix::normalized(std::move(out), rho_c.dims());
}

DensityMatrix joint_gain_state(const DensityMatrix& rho_c0, const DensityMatrix& rho_m0,
                               const SystemParams& p, double tau, AtomState atom) {
  if (rho_c0.dims().size() != 1 || rho_m0.dims().size() != 1) {
    fail(ErrorCode::InvalidDimension, "joint gain state takes single-mode cavity and mirror states");
  }
  const int nc = static_cast<int>(rho_c0.dim());
  const int nm = static_cast<int>(rho_m0.dim());
  const EvolutionBlocks blk = evolution_blocks(p, nc, tau);
  const Matrix a = destroy(nc).matrix();
  const Matrix eF = displacement_exp_iF(p, nm).matrix();
  const Matrix& rc = rho_c0.matrix();
  const Matrix& rm = rho_m0.matrix();
  const double g2 = p.g_ac * p.g_ac;

  Matrix out;
  if (atom == AtomState::Ground) {
    const Matrix& d = blk.d.matrix();
    const Matrix sa = blk.s.matrix() * a;
    out = kron(Matrix(d * rc * d.adjoint()), rm) +
          g2 * kron(Matrix(sa * rc * sa.adjoint()), Matrix(eF * rm * eF.adjoint()));
  } else {
    const Matrix& c = blk.c.matrix();
    const Matrix as = a.adjoint() * blk.s.matrix();
    out = kron(Matrix(c * rc * c.adjoint()), rm) +
          g2 * kron(Matrix(as * rc * as.adjoint()), Matrix(eF.adjoint() * rm * eF));
  }
  return DensityMatrix::normalized(std::move(out), Dims{nc, nm});
}

}  // namespace hmaser
