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

#include "hmaser/hamiltonian.hpp"
#include "test_util.hpp"

using namespace hmaser;
using namespace hmaser::testing;

namespace {

DensityMatrix initial_state(int nc, int nm, Complex alpha) {
  const Matrix atom = fock_state(1, 2).matrix();  // |g>
  return DensityMatrix(kron(kron(atom, coherent_state(alpha, nc).matrix()), fock_state(0, nm).matrix()),
                       Dims{2, nc, nm});
}

}  // namespace

TEST_CASE("Hamiltonian is Hermitian and conserves the polariton number") {
  SystemParams p;
  p.delta = 0.4;
  const SpaceDims d{2, 5, 4};
  const FockOperator h = build_hamiltonian(p, d);
  CHECK(max_diff(h.matrix(), h.matrix().adjoint()) < 1e-14);
  CHECK(max_abs(commutator(h, polariton_number(d)).matrix()) < 1e-12);
  CHECK(max_abs(commutator(rotating_frame_generator(p, d), polariton_number(d)).matrix()) < 1e-12);
}

TEST_CASE("invalid parameters are rejected") {
  SystemParams p;
  p.omega_m = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  SystemParams q;
  q.kappa_b = -1.0;
  CHECK_THROWS_AS(q.validate(), Error);
  SystemParams ok;
  CHECK_THROWS_AS(PumpParameter{-1.0}.tau(ok), Error);
}

TEST_CASE("pump parameter round trip") {
  SystemParams p;
  const double tau = PumpParameter{9.3}.tau(p);
  CHECK(tau == doctest::Approx(9.3 / std::sqrt(80.0)));
  CHECK(PumpParameter::from_tau(p, tau).theta == doctest::Approx(9.3));
}

TEST_CASE("mechanical displacement is unitary and shifts by lambda") {
  SystemParams p;
  p.g_cm = 0.3;
  const int nm = 30;
  const Matrix ef = displacement_exp_iF(p, nm).matrix();
  CHECK(max_diff(ef * ef.adjoint(), Matrix::Identity(nm, nm)) < 1e-12);
  const Matrix b = lowering(nm);
  const Matrix vac = fock_state(0, nm).matrix();
  const Matrix out = ef * vac * ef.adjoint();
  CHECK((out * b).trace().real() == doctest::Approx(p.lambda()).epsilon(1e-9));
}

TEST_CASE("evolution blocks reduce to the identity at t = 0") {
  SystemParams p;
  p.delta = 0.7;
  const EvolutionBlocks b = evolution_blocks(p, 6, 0.0);
  CHECK(max_diff(b.c.matrix(), Matrix::Identity(6, 6)) < 1e-15);
  CHECK(max_abs(b.s.matrix()) < 1e-15);
  CHECK(max_diff(b.d.matrix(), Matrix::Identity(6, 6)) < 1e-15);
}

TEST_CASE("transit propagator is unitary") {
  SystemParams p;
  p.delta = 0.3;
  const SpaceDims d{2, 6, 5};
  const Matrix u = evolution_operator(p, d, 0.8).matrix();
  // |e, top> would emit into a level outside the truncation; project it out.
  Matrix proj = Matrix::Identity(d.total(), d.total());
  for (int m = 0; m < d.mech_dim; ++m) {
    const int idx = (d.cavity_dim - 1) * d.mech_dim + m;
    proj(idx, idx) = 0.0;
  }
  CHECK(max_abs(proj * (u.adjoint() * u - Matrix::Identity(d.total(), d.total())) * proj) < 1e-11);
}

TEST_CASE("resonant Jaynes-Cummings blocks match a two-level oracle") {
  // In the n-excitation subspace {|e,n>, |g,n+1>} the exact propagator is a
  // rotation at g sqrt(n+1).
  SystemParams p;
  p.g_ac = 1.3;
  const double t = 0.9;
  const EvolutionBlocks b = evolution_blocks(p, 8, t);
  for (int n = 0; n < 7; ++n) {
    const double w = p.g_ac * std::sqrt(n + 1.0);
    CHECK(b.c.matrix()(n, n).real() == doctest::Approx(std::cos(w * t)));
    CHECK(p.g_ac * std::sqrt(n + 1.0) * b.s.matrix()(n, n).real() == doctest::Approx(std::sin(w * t)));
  }
}

TEST_CASE("closed form equals brute force without optomechanical coupling") {
  SystemParams p;
  p.g_cm = 0.0;
  const DensityMatrix rho0 = initial_state(8, 3, 0.6);
  for (double tau : {0.2, 0.7}) {
    const auto cf = evolve_closed_form(rho0, p, tau);
    const auto bf = evolve_brute_force(rho0, p, tau);
    CHECK(trace_distance(cf.state, bf.state) < 1e-8);
  }
}

TEST_CASE("closed form stays close to brute force at weak coupling") {
  SystemParams p;
  const DensityMatrix rho0 = initial_state(8, 8, p.alpha);
  const double tau = PumpParameter{9.3}.tau(p);
  const auto cf = evolve_closed_form(rho0, p, tau);
  const auto bf = evolve_brute_force(rho0, p, tau);
  CHECK(trace_distance(cf.state, bf.state) < 1e-2);
  CHECK_FALSE(cf.truncation_warning());
}

TEST_CASE("truncation warning fires for a saturated cavity") {
  SystemParams p;
  const DensityMatrix rho0 = initial_state(3, 3, 1.5);
  const auto cf = evolve_closed_form(rho0, p, 0.5);
  CHECK(cf.truncation_warning());
}

TEST_CASE("space dims must describe a tripartite state") {
  CHECK_THROWS_AS(space_dims_of(fock_state(0, 3)), Error);
  const SpaceDims d = space_dims_of(initial_state(4, 3, 0.1));
  CHECK(d.cavity_dim == 4);
  CHECK(d.mech_dim == 3);
}
