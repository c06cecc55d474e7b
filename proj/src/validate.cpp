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

#include "hmaser/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "hmaser/analytics.hpp"

namespace hmaser {

namespace {

std::string format_measured(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::text() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured=" << format_measured(c.measured)
       << " threshold=" << format_measured(c.threshold);
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
  os << checks.size() << " checks, "
     << std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }) << " failed\n";
  return os.str();
}

double closed_form_discrepancy(const SystemParams& p, const SpaceDims& dims, double tau_max, int samples,
                               double* mech_reduced) {
  dims.validate();
  Matrix ground = Matrix::Zero(2, 2);
  ground(1, 1) = 1.0;
  const Matrix rho0 = kron(kron(ground, coherent_state(p.alpha, dims.cavity_dim).matrix()),
                           fock_state(0, dims.mech_dim).matrix());
  const DensityMatrix start(rho0, dims.list());
  double worst = 0.0, worst_mech = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double tau = tau_max * k / samples;
    const DensityMatrix cf = evolve_closed_form(start, p, tau).state;
    const DensityMatrix bf = evolve_brute_force(start, p, tau).state;
    worst = std::max(worst, trace_distance(cf, bf));
    worst_mech = std::max(worst_mech, trace_distance(partial_trace(cf, Subsystem::Mechanics),
                                                     partial_trace(bf, Subsystem::Mechanics)));
  }
  if (mech_reduced) *mech_reduced = worst_mech;
  return worst;
}

namespace {

using Check = std::function<CheckResult(const SystemParams&)>;

CheckResult make(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured < threshold, measured, threshold, std::move(detail)};
}

double first_root_tau(const SystemParams& p) {
  const TrappingRoots roots = trapping_roots(p, 1.0, 30.0);
  const double theta = roots.thetas.empty() ? 9.32 : roots.thetas.front();
  return PumpParameter{theta}.tau(p);
}

CheckResult check_closed_form(const SystemParams& p) {
  double mech = 0.0;
  const double d = closed_form_discrepancy(p, {2, 8, 8}, first_root_tau(p), 4, &mech);
  std::ostringstream os;
  os << "full state over one trapping period, dims (2,8,8); mechanics alone " << mech;
  return make("closed-form", d, kClosedFormRegimeTol, os.str());
}

CheckResult check_gain_consistency(const SystemParams& p) {
  const int nc = 10, nm = 10;
  const double tau = PumpParameter{12.0}.tau(p);
  const DensityMatrix rc = coherent_state(p.alpha, nc);
  const DensityMatrix rm = thermal_state(0.2, nm);
  const DensityMatrix ground = joint_gain_state(rc, rm, p, tau, AtomState::Ground);
  const DensityMatrix excited = joint_gain_state(fock_state(1, nc), rm, p, tau, AtomState::Excited);
  double err = max_abs(partial_trace(ground, std::vector<int>{1}).matrix() - phonon_gain_map(rm, p, tau).matrix());
  const DensityMatrix cav = cavity_gain_map(fock_state(1, nc), p, PumpParameter{12.0});
  err = std::max(err, max_abs(partial_trace(excited, std::vector<int>{0}).matrix() - cav.matrix()));

  // Closed-form transit on the full space, atom traced out.
  Matrix atom = Matrix::Zero(2, 2);
  atom(1, 1) = 1.0;
  const SpaceDims dims{2, nc, nm};
  const DensityMatrix full(kron(kron(atom, rc.matrix()), rm.matrix()), dims.list());
  const Matrix u = evolution_operator(p, dims, tau).matrix();
  const DensityMatrix after(u * full.matrix() * u.adjoint(), dims.list());
  const std::vector<int> keep{1, 2};
  err = std::max(err, max_abs(partial_trace(after, keep).matrix() - ground.matrix()));
  return make("gain-consistency", err, 1e-9, "reduced maps vs joint state vs traced propagator");
}

CheckResult check_normalization(const SystemParams& p) {
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> alpha(0.0, 2.0), tau(0.0, 10.0), delta(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    SystemParams q = p;
    q.alpha = alpha(rng);
    q.delta = delta(rng);
    const GainCoefficients gc = gain_coefficients(q, tau(rng));
    worst = std::max(worst, std::abs(gc.a_coeff + gc.b_coeff - 1.0));
  }
  return make("gain-normalization", worst, 1e-12, "200 random (alpha, tau, delta)");
}

CheckResult check_moment_identity(const SystemParams& p) {
  double worst = 0.0;
  for (double theta : {5.0, 9.32, 14.0}) {
    const double tau = PumpParameter{theta}.tau(p);
    const SteadyState ss = phonon_steady_state(p, tau, 16, PhononBath::Thermal);
    const double b = gain_coefficients(p, tau).b_coeff;
    const double beta1 = phonon_stationary_mean(p, tau);
    const double exact = p.n_th + beta1 * beta1 + p.r * b * p.lambda() * p.lambda() / p.kappa_b;
    const double got = mean_number(ss.rho, ss.frame_shift);
    worst = std::max(worst, std::abs(got - exact) / std::max(exact, 1e-12));
  }
  return make("moment-identity", worst, 1e-6, "thermal ME <n> against its exact first and second moments");
}

CheckResult check_analytic_vs_me(const SystemParams& p) {
  double worst = 0.0;
  for (double theta : {5.0, 12.0, 14.0, 24.0}) {
    const double tau = PumpParameter{theta}.tau(p);
    const SteadyState ss = phonon_steady_state(p, tau, 16, PhononBath::Thermal);
    const double me = mean_number(ss.rho, ss.frame_shift);
    const double an = phonon_number_analytic(p, tau);
    worst = std::max(worst, std::abs(an - me) / std::max(me, 1e-4));
  }
  return make("analytic-vs-me", worst, 0.05, "Fokker-Planck occupation away from trapping dips");
}

CheckResult check_squeezed_limit(const SystemParams& p) {
  SystemParams q = p;
  q.xi = 0.0;
  q.n_th = 0.0;
  const double tau = PumpParameter{14.0}.tau(q);
  const int n = 12;
  const MasterEquation th = phonon_thermal_me(q, tau, n);
  const MasterEquation sq = phonon_squeezed_me(q, tau, n);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  Matrix x(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) x(i, j) = Complex(gauss(rng), gauss(rng));
  }
  const Matrix rho = x * x.adjoint() / (x * x.adjoint()).trace();
  const double d = max_abs(apply(th, rho) - apply(sq, rho));
  return make("squeezed-limit", d, 1e-13, "squeezed generator at xi = 0 against the thermal generator");
}

CheckResult check_detailed_balance(const SystemParams& p) {
  double worst = 0.0;
  for (double theta : {5.0, 9.3664, 14.0}) {
    const int n = 64;
    const SteadyState ss = steady_state(photon_thermal_me(p, PumpParameter{theta}, n));
    const std::vector<double> db = photon_distribution_db(p, PumpParameter{theta}, n - 1);
    for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(db[k] - ss.rho.matrix()(k, k).real()));
  }
  return make("detailed-balance", worst, 1e-8, "photon distribution against the photon ME steady state");
}

CheckResult check_steady_routes(const SystemParams& p) {
  const double tau = PumpParameter{14.0}.tau(p);
  const Complex shift = phonon_stationary_mean(p, tau);
  const MasterEquation me = phonon_thermal_me(p, tau, 10, shift);
  SteadyStateOptions march;
  march.method = SteadyStateMethod::TimeMarch;
  const double d = trace_distance(steady_state(me).rho, steady_state(me, march).rho);
  return make("steady-state-routes", d, 1e-7, "null-space solve against time marching");
}

CheckResult check_wigner_vacuum(const SystemParams&) {
  const double w = wigner_at(fock_state(0, 8), 0.0);
  return make("wigner-vacuum", std::abs(w - 2.0 / std::numbers::pi), 1e-12, "vacuum at the origin");
}

const std::vector<std::pair<std::string, Check>>& battery() {
  static const std::vector<std::pair<std::string, Check>> checks{
      {"closed-form", check_closed_form},
      {"gain-consistency", check_gain_consistency},
      {"gain-normalization", check_normalization},
      {"moment-identity", check_moment_identity},
      {"analytic-vs-me", check_analytic_vs_me},
      {"squeezed-limit", check_squeezed_limit},
      {"detailed-balance", check_detailed_balance},
      {"steady-state-routes", check_steady_routes},
      {"wigner-vacuum", check_wigner_vacuum},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& validation_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : battery()) n.push_back(name);
    return n;
  }();
  return names;
}

ValidationReport run_validation(const SystemParams& p, const std::optional<std::vector<std::string>>& subset) {
  p.validate();
  if (subset) {
    for (const auto& name : *subset) {
      const auto& all = validation_checks();
      if (std::find(all.begin(), all.end(), name) == all.end()) {
        fail(ErrorCode::UnknownTag, "unknown validation check '" + name + "'");
      }
    }
  }
  ValidationReport report;
  for (const auto& [name, fn] : battery()) {
    if (subset && std::find(subset->begin(), subset->end(), name) == subset->end()) continue;
    try {
      report.checks.push_back(fn(p));
    } catch (const Error& e) {
      report.checks.push_back({name, false, std::nan(""), 0.0, std::string("error: ") + e.what()});
    }
  }
  return report;
}

}  // namespace hmaser
