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

#include <numbers>

#include "hmaser/analytics.hpp"
#include "hmaser/lindblad.hpp"
#include "test_util.hpp"

using namespace hmaser;
using namespace hmaser::testing;

namespace {

Matrix vec_to_matrix(const Vector& v, int n) {
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = v.segment(j * n, n);
  return m;
}

Vector matrix_to_vec(const Matrix& m) {
  const auto n = m.rows();
  Vector v(n * n);
  for (int j = 0; j < n; ++j) v.segment(j * n, n) = m.col(j);
  return v;
}

double expect(const Matrix& rho, const Matrix& op) { return (rho * op).trace().real(); }

// Weakly displaced mirror so a modest undisplaced truncation is enough.
SystemParams weak_params() {
  SystemParams p;
  p.g_cm = 0.002;
  return p;
}

}  // namespace

TEST_CASE("right-hand sides vanish without rates") {
  SystemParams p;
  p.r = 0.0;
  p.kappa_b = 0.0;
  p.kappa_a = 0.0;
  const DensityMatrix rho(random_density(5, 2));
  CHECK(max_abs(rhs_phonon_thermal(rho, p, 0.5)) == 0.0);
  CHECK(max_abs(rhs_phonon_squeezed(rho, p, 0.5)) == 0.0);
  p.r = 80.0;
  p.alpha = 0.0;
  CHECK(max_abs(rhs_phonon_thermal(rho, p, 0.5)) < 1e-14);
}

TEST_CASE("master equations preserve trace and Hermiticity") {
  SystemParams p;
  p.n_th = 0.2;
  p.xi = 0.1;
  const double tau = PumpParameter{7.0}.tau(p);
  const DensityMatrix rho(random_low_state(20, 3));
  for (const Matrix& d : {rhs_phonon_thermal(rho, p, tau), rhs_phonon_squeezed(rho, p, tau),
                          rhs_photon_thermal(rho, p, PumpParameter{7.0})}) {
    CHECK(std::abs(d.trace()) < 1e-6);  // only the top level leaks
    CHECK(max_diff(d, d.adjoint()) < 1e-12);
  }
  // Without truncation effects (vacuum-dominated state) the trace is exact.
  const DensityMatrix vac = fock_state(0, 20);
  CHECK(std::abs(rhs_phonon_thermal(vac, p, tau).trace()) < 1e-12);
}

TEST_CASE("cavity vacuum is stationary when the first Rabi cycle closes") {
  SystemParams p;
  const PumpParameter theta = PumpParameter::from_tau(p, std::numbers::pi / p.g_ac);
  CHECK(max_abs(rhs_photon_thermal(fock_state(0, 8), p, theta)) < 1e-12);
  const SteadyState ss = steady_state(photon_thermal_me(p, theta, 8));
  CHECK(ss.rho.matrix()(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("squeezed bath parameters") {
  const SqueezedBath s = SqueezedBath::from_squeezing(0.015, std::numbers::pi);
  CHECK(s.n_sq == doctest::Approx(2.250e-4).epsilon(1e-3));
  CHECK(s.m_sq.real() > 0.0);
  CHECK(std::abs(s.m_sq.imag()) < 1e-15);
  for (double xi : {0.0, 0.3, 1.1}) {
    const SqueezedBath b = SqueezedBath::from_squeezing(xi, 0.4);
    CHECK(std::norm(b.m_sq) == doctest::Approx(b.n_sq * (b.n_sq + 1.0)));
  }
  CHECK_THROWS_AS(SqueezedBath::from_squeezing(-0.1, 0.0), Error);
}

TEST_CASE("squeezed bath with zero squeezing equals the zero-temperature bath") {
  SystemParams p;
  const double tau = PumpParameter{5.0}.tau(p);
  const DensityMatrix rho(random_low_state(8, 9));
  CHECK(max_diff(rhs_phonon_squeezed(rho, p, tau), rhs_phonon_thermal(rho, p, tau)) < 1e-12);
}

TEST_CASE("dense generator agrees with direct application") {
  SystemParams p;
  p.n_th = 0.3;
  p.xi = 0.2;
  p.phi = 0.7;
  const double tau = PumpParameter{11.0}.tau(p);
  const int n = 7;
  const Matrix rho = random_density(n, 5);
  for (const MasterEquation& me : {phonon_thermal_me(p, tau, n, 0.4), phonon_squeezed_me(p, tau, n, 0.4),
                                   photon_thermal_me(p, PumpParameter{11.0}, n)}) {
    const Matrix via_gen = vec_to_matrix(generator_matrix(me) * matrix_to_vec(rho), n);
    CHECK(max_diff(via_gen, hmaser::apply(me, rho)) < 1e-11);
  }
}

TEST_CASE("pure damping relaxes to the vacuum") {
  SystemParams p;
  p.r = 0.0;
  const SteadyState ss = steady_state(phonon_thermal_me(p, 0.1, 8));
  CHECK(ss.rho.matrix()(0, 0).real() == doctest::Approx(1.0));
  CHECK(ss.residual < 1e-9);
}

TEST_CASE("thermal damping relaxes to the thermal state") {
  SystemParams p;
  p.r = 0.0;
  p.n_th = 0.3;
  const int n = 30;
  const SteadyState ss = steady_state(phonon_thermal_me(p, 0.1, n));
  CHECK(mean_number(ss.rho) == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("a generator without rates has no unique steady state") {
  SystemParams p;
  p.r = 0.0;
  p.kappa_b = 0.0;
  try {
    steady_state(phonon_thermal_me(p, 0.1, 4));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSteadyState);
  }
}

TEST_CASE("stationary mean and number obey the exact moment equations") {
  // d<b>/dt = r B lambda - kappa_b <b> / 2 and
  // d<n>/dt = r B (2 lambda Re<b> + lambda^2) - kappa_b (<n> - n_th).
  SystemParams p = weak_params();
  p.n_th = 0.05;
  for (double theta : {6.0, 14.0}) {
    const double tau = PumpParameter{theta}.tau(p);
    const double b = gain_coefficients(p, tau).b_coeff;
    const double lam = p.lambda();
    const double mean_b = 2.0 * p.r * b * lam / p.kappa_b;
    const double mean_n = p.n_th + mean_b * mean_b + p.r * b * lam * lam / p.kappa_b;
    CHECK(phonon_stationary_mean(p, tau) == doctest::Approx(mean_b).epsilon(1e-12));
    const SteadyState ss = steady_state(phonon_thermal_me(p, tau, 20));
    CHECK(expect(ss.rho.matrix(), lowering(20)) == doctest::Approx(mean_b).epsilon(1e-8));
    CHECK(mean_number(ss.rho) == doctest::Approx(mean_n).epsilon(1e-8));
  }
}

TEST_CASE("displaced frame reproduces the undisplaced solve") {
  SystemParams p = weak_params();
  const double tau = PumpParameter{14.0}.tau(p);
  const SteadyState plain = steady_state(phonon_thermal_me(p, tau, 20));
  const SteadyState shifted = phonon_steady_state(p, tau, 12, PhononBath::Thermal);
  CHECK(shifted.frame_shift.real() == doctest::Approx(phonon_stationary_mean(p, tau)));
  CHECK(mean_number(shifted.rho, shifted.frame_shift) == doctest::Approx(mean_number(plain.rho)).epsilon(1e-8));
  CHECK(g2_numeric(shifted.rho, shifted.frame_shift) == doctest::Approx(g2_numeric(plain.rho)).epsilon(1e-6));
  const DensityMatrix lab = to_lab_frame(shifted.rho, shifted.frame_shift, 20);
  CHECK(trace_distance(lab, plain.rho) < 1e-8);
}

TEST_CASE("direct solve and time march agree") {
  SystemParams p;
  p.n_th = 0.1;
  const double tau = PumpParameter{12.0}.tau(p);
  const MasterEquation me = phonon_thermal_me(p, tau, 10, phonon_stationary_mean(p, tau));
  const SteadyState direct = steady_state(me);
  SteadyStateOptions opts;
  opts.method = SteadyStateMethod::TimeMarch;
  const SteadyState march = steady_state(me, opts);
  CHECK(direct.method == SteadyStateMethod::DirectSolve);
  CHECK(march.method == SteadyStateMethod::TimeMarch);
  CHECK(trace_distance(direct.rho, march.rho) < 1e-8);
}

TEST_CASE("photon master equation steady state at the first vacuum trap") {
  SystemParams p;
  const PumpParameter theta = PumpParameter::from_tau(p, std::numbers::pi / p.g_ac);
  p.n_th = 1e-6;
  const SteadyState ss = steady_state(photon_thermal_me(p, theta, 24));
  CHECK(mean_number(ss.rho) < 1e-3);
  // Phase covariance: no coherences.
  Matrix off = ss.rho.matrix();
  off.diagonal().setZero();
  CHECK(max_abs(off) == 0.0);
}

TEST_CASE("time evolution samples and transient mean") {
  SystemParams p = weak_params();
  const double tau = PumpParameter{14.0}.tau(p);
  const int n = 16;
  const MasterEquation me = phonon_thermal_me(p, tau, n);
  const Matrix b = lowering(n);
  const double beta1 = phonon_stationary_mean(p, tau);
  const std::vector<ObservableHook> hooks{
      [&](const Matrix& rho) { return expect(rho, b); },
      [](const Matrix& rho) { return rho.trace().real(); },
  };
  const DensityMatrix vac = fock_state(0, n);
  const TimeSeries ts = evolve_me(me, vac, {40.0, 0.0, 20.0, 80.0}, hooks);
  REQUIRE(ts.times.size() == 4);
  CHECK(ts.times.front() == 0.0);
  CHECK(ts.values[0][0] == doctest::Approx(0.0));
  for (std::size_t k = 0; k < ts.times.size(); ++k) {
    const double exact = beta1 * -std::expm1(-0.5 * p.kappa_b * ts.times[k]);
    CHECK(ts.values[k][0] == doctest::Approx(exact).epsilon(1e-6));
    CHECK(ts.values[k][1] == doctest::Approx(1.0).epsilon(1e-9));
    if (ts.times[k] >= 20.0) {
      CHECK(std::sqrt(phonon_number_analytic(p, tau, ts.times[k]) - p.n_th) == doctest::Approx(exact));
    }
  }
  CHECK_THROWS_AS(evolve_me(me, vac, {-1.0}, hooks), Error);
}

TEST_CASE("displaced vacuum maps to a coherent lab-frame state") {
  const Complex s(1.3, 0.0);
  const DensityMatrix lab = to_lab_frame(fock_state(0, 6), s, 40);
  CHECK(trace_distance(lab, coherent_state(s, 40)) < 1e-10);
  CHECK(to_lab_frame(fock_state(0, 6), s).dim() >= 40);
}
