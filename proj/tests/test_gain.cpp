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

#include <doctest.h>

#include "hmaser/gain.hpp"
#include "test_util.hpp"

using namespace hmaser;
using namespace hmaser::testing;

namespace {

// Excitation probability of a ground-state atom after a resonant
// Jaynes-Cummings transit, from the exponential of the interaction
// Hamiltonian on a generously truncated cavity.
double jc_excitation_probability(const SystemParams& p, double tau) {
  const int nc = 40;
  const Matrix a = lowering(nc);
  Matrix sp = Matrix::Zero(2, 2);
  sp(0, 1) = 1.0;
  const Matrix h = p.g_ac * (kron(sp, a) + kron(Matrix(sp.adjoint()), Matrix(a.adjoint())));
  const Matrix u = taylor_expm(Matrix(-kI * tau * h));
  Vector coh = Vector::Zero(nc);
  const double x = std::norm(p.alpha);
  for (int n = 0; n < nc; ++n) {
    coh(n) = std::exp(-0.5 * x) * std::pow(p.alpha, n) / std::sqrt(std::tgamma(n + 1.0));
  }
  Vector psi = Vector::Zero(2 * nc);
  psi.tail(nc) = coh;
  const Vector out = u * psi;
  return out.head(nc).squaredNorm();
}

}  // namespace

TEST_CASE("gain coefficients sum to one") {
  SystemParams p;
  p.delta = 0.6;
  for (double tau : {0.0, 0.3, 1.1, 2.9}) {
    const GainCoefficients g = gain_coefficients(p, tau);
    CHECK(g.a_coeff + g.b_coeff == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(g.lambda == doctest::Approx(p.lambda()));
  }
}

TEST_CASE("gain coefficients in the trivial limits") {
  SystemParams p;
  const GainCoefficients at_zero = gain_coefficients(p, 0.0);
  CHECK(at_zero.a_coeff == doctest::Approx(1.0));
  CHECK(at_zero.b_coeff == doctest::Approx(0.0));
  p.alpha = 0.0;
  CHECK(gain_coefficients(p, 1.3).b_coeff == doctest::Approx(0.0));
  CHECK_THROWS_AS(gain_coefficients(p, -0.1), Error);
}

TEST_CASE("B equals the atomic excitation probability") {
  SystemParams p;
  for (double theta : {2.0, 9.3174, 14.0, 25.0}) {
    const double tau = PumpParameter{theta}.tau(p);
    CHECK(gain_coefficients(p, tau).b_coeff == doctest::Approx(jc_excitation_probability(p, tau)).epsilon(1e-10));
  }
  p.alpha = Complex(0.8, 0.6);
  CHECK(gain_coefficients(p, 0.4).b_coeff == doctest::Approx(jc_excitation_probability(p, 0.4)).epsilon(1e-10));
}

TEST_CASE("phonon map agrees with the joint transit state") {
  SystemParams p;
  const int nc = 24, nm = 10;
  const double tau = PumpParameter{6.0}.tau(p);
  const DensityMatrix rm = DensityMatrix(random_low_state(nm, 4));
  const DensityMatrix rc = coherent_state(p.alpha, nc);
  const DensityMatrix joint = joint_gain_state(rc, rm, p, tau, AtomState::Ground);
  const Matrix reduced = trace_out_first(joint.matrix(), nc, nm);
  CHECK(max_diff(phonon_gain_map(rm, p, tau).matrix(), reduced) < 1e-9);
}

TEST_CASE("cavity map agrees with the joint transit state") {
  SystemParams p;
  const int nc = 12, nm = 6;
  const PumpParameter theta{7.0};
  const DensityMatrix rc = DensityMatrix(random_low_state(nc, 8));
  const DensityMatrix rm = fock_state(0, nm);
  const DensityMatrix joint = joint_gain_state(rc, rm, p, theta.tau(p), AtomState::Excited);
  CHECK(max_diff(cavity_gain_map(rc, p, theta).matrix(), trace_out_second(joint.matrix(), nc, nm)) < 1e-9);
}

TEST_CASE("cavity map leaves the vacuum fixed when the first Rabi cycle closes") {
  SystemParams p;
  // g tau sqrt(1) = pi.
  const double tau = std::numbers::pi / p.g_ac;
  const PumpParameter theta = PumpParameter::from_tau(p, tau);
  const DensityMatrix vac = fock_state(0, 6);
  CHECK(max_diff(cavity_gain_map(vac, p, theta).matrix(), vac.matrix()) < 1e-12);
}

TEST_CASE("Kraus sets are complete") {
  SystemParams p;
  p.delta = 0.25;
  for (double tau : {0.2, 1.0}) {
    Matrix sum = Matrix::Zero(9, 9);
    for (const Matrix& k : phonon_gain_kraus(p, tau, 9)) sum += k.adjoint() * k;
    CHECK(max_diff(sum, Matrix::Identity(9, 9)) < 1e-12);
    // The cavity set is complete below the top Fock level, where a^dag
    // leaves the truncation.
    const int nc = 10;
    Matrix csum = Matrix::Zero(nc, nc);
    for (const Matrix& k : cavity_gain_kraus(p, tau, nc)) csum += k.adjoint() * k;
    CHECK(max_diff(csum.topLeftCorner(nc - 1, nc - 1), Matrix::Identity(nc - 1, nc - 1)) < 1e-12);
  }
}

TEST_CASE("phonon map is completely positive") {
  SystemParams p;
  const int nm = 5;
  const auto kraus = phonon_gain_kraus(p, 0.9, nm);
  // Choi matrix sum_ij |i><j| (x) M(|i><j|).
  Matrix choi = Matrix::Zero(nm * nm, nm * nm);
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < nm; ++j) {
      Matrix e = Matrix::Zero(nm, nm);
      e(i, j) = 1.0;
      Matrix img = Matrix::Zero(nm, nm);
      for (const Matrix& k : kraus) img += k * e * k.adjoint();
      choi.block(i * nm, j * nm, nm, nm) = img;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("gain maps reject multi-mode states") {
  SystemParams p;
  const DensityMatrix two(Matrix(Matrix::Identity(4, 4) / 4.0), Dims{2, 2});
  CHECK_THROWS_AS(phonon_gain_map(two, p, 0.1), Error);
  CHECK_THROWS_AS(cavity_gain_map(two, p, PumpParameter{1.0}), Error);
}

TEST_CASE("joint transit state equals the traced tripartite evolution") {
  SystemParams p;
  const int nc = 10, nm = 8;
  const double tau = PumpParameter{14.0}.tau(p);
  const DensityMatrix rc = coherent_state(p.alpha, nc);
  const DensityMatrix rm(random_low_state(nm, 17));
  for (AtomState atom : {AtomState::Ground, AtomState::Excited}) {
    const DensityMatrix ra = fock_state(atom == AtomState::Excited ? 0 : 1, 2);
    const DensityMatrix full(kron(kron(ra.matrix(), rc.matrix()), rm.matrix()), Dims{2, nc, nm});
    const DensityMatrix traced = partial_trace(evolve_closed_form(full, p, tau).state, Subsystem::CavityMechanics);
    CHECK(max_diff(joint_gain_state(rc, rm, p, tau, atom).matrix(), traced.matrix()) < 1e-6);
  }
}
