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

// Acceptance battery: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion; the exit status is nonzero when any selected one fails.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hmaser/analytics.hpp"
#include "hmaser/gain.hpp"
#include "hmaser/validate.hpp"

using namespace hmaser;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Trapping roots on [1, 30] at the default parameters.
Outcome criterion_1() {
  const SystemParams p;
  const auto t0 = Clock::now();
  const TrappingRoots roots = trapping_roots(p, 1.0, 30.0);
  const double dt = seconds_since(t0);
  const double expected[] = {9.32, 18.81, 28.01};
  bool ok = roots.thetas.size() == 3 && dt < 1.0;
  std::ostringstream os;
  os << "roots";
  for (std::size_t i = 0; i < roots.thetas.size(); ++i) {
    os << ' ' << fmt("%.6f", roots.thetas[i]);
    if (i < 3) ok = ok && std::abs(roots.thetas[i] - expected[i]) <= 0.02;
  }
  os << fmt(" (expected 9.32 18.81 28.01 +-0.02), %.3f s", dt);
  return {ok, os.str()};
}

Outcome criterion_2() {
  const SystemParams p;
  const auto t0 = Clock::now();
  const auto thetas = photon_trapping_thetas(p, 0, 3);
  const double dt = seconds_since(t0);
  const double expected[] = {9.36, 18.73, 28.09};
  bool ok = thetas.size() == 3 && dt < 1e-3;
  std::ostringstream os;
  os << "k=0 values";
  for (std::size_t i = 0; i < thetas.size() && i < 3; ++i) {
    const double closed = (i + 1) * std::numbers::pi * std::sqrt(p.omega_m * p.r) / p.g_ac;
    ok = ok && std::abs(thetas[i].theta - expected[i]) <= 0.01 && std::abs(thetas[i].theta - closed) < 1e-12;
    os << ' ' << fmt("%.6f", thetas[i].theta);
  }
  os << fmt(" (expected 9.36 18.73 28.09 +-0.01), %.2e s", dt);
  return {ok, os.str()};
}

// Analytic occupation against the master-equation steady state on 61 points.
Outcome criterion_3() {
  const SystemParams p;
  const auto t0 = Clock::now();
  double worst = 0.0, worst_theta = 0.0;
  int failing = 0;
  for (int i = 0; i <= 60; ++i) {
    const double theta = 0.5 * i;
    const double tau = PumpParameter{theta}.tau(p);
    const double analytic = phonon_number_analytic(p, tau);
    const SteadyState ss = phonon_steady_state(p, tau, 16, PhononBath::Thermal);
    const double numeric = mean_number(ss.rho, ss.frame_shift);
    const double rel = std::abs(analytic - numeric) / std::max(numeric, 1e-4);
    if (rel >= 0.05) ++failing;
    if (rel > worst) {
      worst = rel;
      worst_theta = theta;
    }
  }
  const double dt = seconds_since(t0);
  return {worst < 0.05 && dt < 120.0,
          fmt("max relative deviation %.4f at Theta=%.1f, %d of 61 points >= 5%%, %.1f s", worst, worst_theta,
              failing, dt)};
}

Outcome criterion_4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> alpha(0.0, 2.0), tau(0.0, 10.0), delta(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    SystemParams p;
    p.alpha = alpha(rng);
    p.delta = delta(rng);
    const GainCoefficients g = gain_coefficients(p, tau(rng));
    worst = std::max(worst, std::abs(g.a_coeff + g.b_coeff - 1.0));
  }
  return {worst < 1e-12, fmt("max |A+B-1| = %.2e over 200 random points", worst)};
}

Outcome criterion_5() {
  SystemParams p;
  p.g_cm = 0.0;
  p.n_th = 0.01;
  double worst = 0.0;
  std::ostringstream os;
  for (double theta : {5.0, 10.0, 20.0}) {
    const double tau = PumpParameter{theta}.tau(p);
    const double analytic = g2_phonon_analytic(p, tau);
    const SteadyState ss = phonon_steady_state(p, tau, 16, PhononBath::Thermal);
    const double numeric = g2_numeric(ss.rho, ss.frame_shift);
    worst = std::max({worst, std::abs(analytic - 2.0), std::abs(numeric - 2.0)});
    os << fmt("Theta=%g analytic %.6f numeric %.6f; ", theta, analytic, numeric);
  }
  os << fmt("max |g2-2| = %.2e", worst);
  return {worst <= 1e-3, os.str()};
}

// Squeezed-bath blockade pattern around the trapping roots.
Outcome criterion_6() {
  SystemParams p;
  p.xi = 0.015;
  p.phi = std::numbers::pi;
  p.g_cm = 0.014;
  p.alpha = 0.384;
  p.n_th = 0.0;
  const auto t0 = Clock::now();
  auto g2_at = [&](double theta) {
    const SteadyState ss = phonon_steady_state(p, PumpParameter{theta}.tau(p), 16, PhononBath::Squeezed);
    return g2_numeric(ss.rho, ss.frame_shift);
  };
  const auto roots = trapping_roots(p, 1.0, 30.0).thetas;
  bool ok = roots.size() == 3;
  std::ostringstream os;
  for (double root : roots) {
    double best = 1e300, at = root;
    for (int k = -6; k <= 6; ++k) {
      const double theta = root + 0.05 * k;
      const double g = g2_at(theta);
      if (g < best) {
        best = g;
        at = theta;
      }
    }
    ok = ok && best < 1.0;
    os << fmt("dip near %.4f: min g2 %.4f at %.2f; ", root, best, at);
  }
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const double mid = 0.5 * (roots[i] + roots[i + 1]);
    const double g = g2_at(mid);
    ok = ok && g >= 0.9 && g <= 1.1;
    os << fmt("mid-gap %.2f: g2 %.4f; ", mid, g);
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 300.0;
  os << fmt("%.1f s", dt);
  return {ok, os.str()};
}

Outcome criterion_7() {
  SystemParams weak;
  const double tau = PumpParameter{trapping_roots(weak, 1.0, 30.0).thetas.at(0)}.tau(weak);
  double mech = 0.0;
  const double d_weak = closed_form_discrepancy(weak, {2, 12, 16}, tau, 4, &mech);
  SystemParams strong = weak;
  strong.g_cm = 0.5;
  const double d_strong = closed_form_discrepancy(strong, {2, 12, 16}, tau, 4);
  return {d_weak < 1e-3 && d_strong > 1e-2,
          fmt("g_cm=0.02 full-state trace distance %.3e (bound 1e-3; mechanics alone %.3e), "
              "g_cm=0.5 %.3e (must exceed 1e-2)",
              d_weak, mech, d_strong)};
}

Matrix low_state(int n) {
  Matrix rho = Matrix::Zero(n, n);
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rho(i, j) = std::pow(0.5, i + j) * std::polar(1.0, 0.3 * (i - j));
    norm += std::pow(0.25, i);
  }
  return rho / norm;
}

Outcome criterion_8() {
  const SystemParams p;
  const int nc = 12, nm = 10;
  const PumpParameter theta{12.0};
  const double tau = theta.tau(p);
  const DensityMatrix rc = coherent_state(p.alpha, nc);
  const DensityMatrix rm(low_state(nm));
  const DensityMatrix cav_in(low_state(nc));

  const DensityMatrix ground = joint_gain_state(rc, rm, p, tau, AtomState::Ground);
  const double map_m = max_abs(partial_trace(ground, std::vector<int>{1}).matrix() - phonon_gain_map(rm, p, tau).matrix());
  const DensityMatrix excited = joint_gain_state(cav_in, rm, p, tau, AtomState::Excited);
  const double map_c =
      max_abs(partial_trace(excited, std::vector<int>{0}).matrix() - cavity_gain_map(cav_in, p, theta).matrix());

  double joint = 0.0;
  for (AtomState atom : {AtomState::Ground, AtomState::Excited}) {
    Matrix a = Matrix::Zero(2, 2);
    a(atom == AtomState::Excited ? 0 : 1, atom == AtomState::Excited ? 0 : 1) = 1.0;
    const DensityMatrix& c0 = atom == AtomState::Ground ? rc : cav_in;
    const DensityMatrix full(kron(kron(a, c0.matrix()), rm.matrix()), Dims{2, nc, nm});
    const DensityMatrix traced = partial_trace(evolve_closed_form(full, p, tau).state, Subsystem::CavityMechanics);
    joint = std::max(joint, max_abs(traced.matrix() - joint_gain_state(c0, rm, p, tau, atom).matrix()));
  }
  return {map_m < 1e-9 && map_c < 1e-9 && joint < 1e-6,
          fmt("phonon map %.2e, cavity map %.2e (bound 1e-9); joint vs traced tripartite %.2e (bound 1e-6)", map_m,
              map_c, joint)};
}

Outcome criterion_9() {
  const SystemParams p;
  const int dim = 120;
  double worst = 0.0, worst_theta = 0.0;
  const double trap = photon_trapping_thetas(p, 0, 1).front().theta;
  for (double theta : {2.0, 5.0, trap, 12.0, 14.0, 20.0, 25.0}) {
    const auto db = photon_distribution_db(p, PumpParameter{theta}, dim - 1);
    const SteadyState ss = steady_state(photon_thermal_me(p, PumpParameter{theta}, dim));
    for (int n = 0; n <= 10; ++n) {
      const double d = std::abs(db[n] - ss.rho.matrix()(n, n).real());
      if (d > worst) {
        worst = d;
        worst_theta = theta;
      }
    }
  }
  const double p0 = photon_distribution_db(p, PumpParameter{trap}, 40).front();
  return {worst < 1e-3 && p0 > 0.999,
          fmt("max |P_n(db) - P_n(me)| = %.2e at Theta=%.2f (n <= 10); P_0 at %.4f = %.12f", worst, worst_theta,
              trap, p0)};
}

Outcome criterion_10() {
  const double vac = wigner_at(fock_state(0, 10), 0.0);
  const WignerPeak vac_peak = wigner_peak(fock_state(0, 10));
  const SystemParams p;
  const double tau = PumpParameter{14.0}.tau(p);
  const SteadyState ss = phonon_steady_state(p, tau, 16, PhononBath::Thermal);
  const WignerPeak peak = wigner_peak(ss.rho, ss.frame_shift);
  const double beta1 = phonon_stationary_mean(p, tau);
  const double rel = std::abs(peak.location - Complex(beta1)) / beta1;
  const bool ok = std::abs(vac - 2.0 / std::numbers::pi) <= 1e-6 && std::abs(vac_peak.location) < 1e-6 && rel < 0.02;
  return {ok, fmt("vacuum W(0) = %.9f (2/pi = %.9f); mirror peak at %.4f%+.4fi vs beta1 %.4f (%.3f%%) at Theta=14", vac,
                  2.0 / std::numbers::pi, peak.location.real(), peak.location.imag(), beta1, 100.0 * rel)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hmaser acceptance battery"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                       criterion_5, criterion_6, criterion_7, criterion_8,
                                                       criterion_9, criterion_10};
  int failures = 0;
  for (int i = 1; i <= 10; ++i) {
    if (only != 0 && only != i) continue;
    Outcome o;
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("CRITERION %d: %s %s\n", i, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
