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

#include "hmaser/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hmaser {

FPSolution fokker_planck_solution(const SystemParams& p, double tau, double t) {
  if (!(p.kappa_b > 0.0)) {
    fail(ErrorCode::InvalidArgument, "kappa_b = 0: the phonon occupation diverges and has no steady state");
  }
  if (!(t >= 0.0)) fail(ErrorCode::InvalidArgument, "time must be >= 0");
  const double growth = std::isinf(t) ? 1.0 : -std::expm1(-0.5 * p.kappa_b * t);
  return {phonon_stationary_mean(p, tau) * growth, p.n_th};
}

double phonon_number_analytic(const SystemParams& p, double tau, double t) {
  return fokker_planck_solution(p, tau, t).mean_number();
}

namespace {

// sum_n w_n f(sqrt(phi_{n+1})), w_n = e^{-|a|^2} |a|^{2(n+1)} / n!.
template <typename F>
double poisson_series(const SystemParams& p, F&& f) {
  const double x = std::norm(p.alpha);
  if (x == 0.0) return 0.0;
  const double log_x = std::log(x);
  const double g2 = p.g_ac * p.g_ac;
  const double quarter_d2 = 0.25 * p.delta * p.delta;
  const int n_cap = static_cast<int>(x + 40.0 * std::sqrt(x) + 100.0);
  double sum = 0.0;
  for (int n = 0; n <= n_cap; ++n) {
    const double w = std::exp(-x + (n + 1) * log_x - std::lgamma(n + 1.0));
    if (n > x && w < kSeriesFloor) break;
    sum += w * f(std::sqrt(g2 * (n + 1) + quarter_d2));
  }
  return sum;
}

}  // namespace

double trapping_condition(const SystemParams& p, double theta) {
  const double tau = PumpParameter{theta}.tau(p);
  return poisson_series(p, [tau](double root) { return std::sin(2.0 * tau * root) / root; });
}

double trapping_curvature(const SystemParams& p, double theta) {
  const double tau = PumpParameter{theta}.tau(p);
  return poisson_series(p, [tau](double root) { return std::cos(2.0 * tau * root); });
}

TrappingRoots trapping_roots(const SystemParams& p, double theta_min, double theta_max) {
  p.validate();
  if (!std::isfinite(theta_min) || !std::isfinite(theta_max) || theta_min >= theta_max) {
    fail(ErrorCode::InvalidArgument, "trapping search interval must be finite with min < max");
  }
  if (theta_min < 0.0) fail(ErrorCode::InvalidArgument, "pump parameter must be >= 0");
  TrappingRoots out;
  auto f = [&p](double th) { return trapping_condition(p, th); };
  auto keep = [&](double th) {
    if (trapping_curvature(p, th) > 0.0) out.thetas.push_back(th);
  };
  const int steps = static_cast<int>(std::ceil((theta_max - theta_min) / kRootScanStep));
  double a = theta_min;
  double fa = f(a);
  if (fa == 0.0) keep(a);
  for (int i = 1; i <= steps; ++i) {
    const double b = i == steps ? theta_max : theta_min + i * kRootScanStep;
    const double fb = f(b);
    if (fb == 0.0) {
      keep(b);
    } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      keep(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return out;
}

std::vector<PhotonTrappingTheta> photon_trapping_thetas(const SystemParams& p, int k_max, int m_max) {
  p.validate();
  if (k_max < 0) fail(ErrorCode::InvalidArgument, "k_max must be >= 0");
  if (m_max < 1) fail(ErrorCode::InvalidArgument, "m_max must be >= 1");
  if (!(p.g_ac > 0.0) && p.delta == 0.0) fail(ErrorCode::InvalidArgument, "no Rabi oscillation at g_ac = 0");
  std::vector<PhotonTrappingTheta> out;
  const double scale = std::sqrt(p.omega_m * p.r);
  for (int k = 0; k <= k_max; ++k) {
    const double rabi = std::sqrt(p.g_ac * p.g_ac * (k + 1) + 0.25 * p.delta * p.delta);
    for (int m = 1; m <= m_max; ++m) out.push_back({k, m, m * std::numbers::pi * scale / rabi});
  }
  return out;
}

std::vector<double> photon_distribution_db(const SystemParams& p, PumpParameter theta, int n_max) {
  p.validate();
  if (!(p.kappa_a > 0.0)) fail(ErrorCode::InvalidArgument, "kappa_a must be positive");
  if (n_max < 0) fail(ErrorCode::InvalidArgument, "n_max must be >= 0");
  const double tau = theta.tau(p);
  const double g2 = p.g_ac * p.g_ac;
  const double quarter_d2 = 0.25 * p.delta * p.delta;
  // Up-rate over down-rate for the k-1 -> k step.
  auto ratio = [&](int k) {
    const double phi = g2 * k + quarter_d2;
    const double s = std::sin(tau * std::sqrt(phi));
    const double up = p.r * g2 * k * s * s / phi + p.kappa_a * p.n_th * k;
    return up / (p.kappa_a * (p.n_th + 1.0) * k);
  };

  std::vector<double> logp{0.0};
  double log_max = 0.0;
  for (int k = 1; k <= n_max; ++k) {
    const double rk = ratio(k);
    logp.push_back(rk > 0.0 ? logp.back() + std::log(rk) : -std::numeric_limits<double>::infinity());
    log_max = std::max(log_max, logp.back());
  }
  std::vector<double> prob(logp.size());
  double head = 0.0;
  for (std::size_t i = 0; i < logp.size(); ++i) {
    prob[i] = std::exp(logp[i] - log_max);
    head += prob[i];
  }

  // Tail above n_max, continued until the terms stop mattering.
  double tail = 0.0;
  double lp = logp.back();
  const int k_limit = n_max + 100000;
  for (int k = n_max + 1; k <= k_limit && std::isfinite(lp); ++k) {
    const double rk = ratio(k);
    if (rk <= 0.0) break;
    lp += std::log(rk);
    const double term = std::exp(lp - log_max);
    tail += term;
    if (rk < 1.0 && term < 1e-18 * (head + tail) && k > p.r / p.kappa_a) break;
  }
  const double tail_mass = tail / (head + tail);
  if (tail_mass > 1e-10) {
    std::ostringstream os;
    os << "photon distribution carries mass " << tail_mass << " above n = " << n_max;
    fail(ErrorCode::Truncation, os.str());
  }
  for (double& x : prob) x /= head;
  return prob;
}

double g2_phonon_analytic(const SystemParams& p, double tau, double t) {
  const FPSolution fp = fokker_planck_solution(p, tau, t);
  const double n = fp.n_th;
  const double b2 = fp.beta1 * fp.beta1;
  const double mean = n + b2;
  if (mean < kVacuumThreshold) {
    fail(ErrorCode::UndefinedStatistics, "g2 is undefined for the vacuum (n_th = 0 and beta1 = 0)");
  }
  return (2.0 * n * n + 4.0 * b2 * n + b2 * b2) / (mean * mean);
}

namespace {

Matrix shifted_mode(const DensityMatrix& rho, Complex shift) {
  if (rho.dims().size() != 1) fail(ErrorCode::InvalidDimension, "expected a single-mode state");
  Matrix c = destroy(static_cast<int>(rho.dim())).matrix();
  c.diagonal().array() += shift;
  return c;
}

}  // namespace

double mean_number(const DensityMatrix& rho, Complex shift) {
  const Matrix c = shifted_mode(rho, shift);
  return rho.expect(c.adjoint() * c).real();
}

double g2_numeric(const DensityMatrix& rho, Complex shift) {
  const Matrix c = shifted_mode(rho, shift);
  const Matrix cd = c.adjoint();
  const Matrix cc = c * c;
  const double n = rho.expect(cd * c).real();
  if (n < kVacuumThreshold) fail(ErrorCode::UndefinedStatistics, "g2 is undefined: <n> below 1e-12");
  return rho.expect(cc.adjoint() * cc).real() / (n * n);
}

double wigner_at(const DensityMatrix& rho, Complex beta, Complex shift) {
  if (rho.dims().size() != 1) fail(ErrorCode::InvalidDimension, "expected a single-mode state");
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    fail(ErrorCode::NonFinite, "Wigner point must be finite");
  }
  const int n = static_cast<int>(rho.dim());
  const Matrix d = displacement_elements(2.0 * (beta - shift), n, n);
  // Tr[rho D(2 beta) P]
  const Matrix& r = rho.matrix();
  double sum = 0.0;
  for (int col = 0; col < n; ++col) {
    const double parity = col % 2 == 0 ? 1.0 : -1.0;
    sum += parity * (r.row(col) * d.col(col)).value().real();
  }
  return 2.0 / std::numbers::pi * sum;
}

void WignerGridSpec::validate() const {
  if (nx < 1 || ny < 1) fail(ErrorCode::InvalidArgument, "Wigner grid needs at least one point per axis");
  for (double v : {x_min, x_max, y_min, y_max}) {
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "Wigner grid bounds must be finite");
  }
  if (x_min > x_max || y_min > y_max) fail(ErrorCode::InvalidArgument, "Wigner grid bounds are reversed");
}

double WignerGridSpec::x(int i) const { return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1); }
double WignerGridSpec::y(int j) const { return ny == 1 ? y_min : y_min + (y_max - y_min) * j / (ny - 1); }

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec, Complex shift) {
  spec.validate();
  WignerGrid out{spec, Eigen::MatrixXd(spec.ny, spec.nx)};
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) out.values(j, i) = wigner_at(rho, {spec.x(i), spec.y(j)}, shift);
  }
  return out;
}

WignerPeak wigner_peak(const DensityMatrix& rho, Complex shift) {
  const Matrix b = destroy(static_cast<int>(rho.dim())).matrix();
  const Complex centre = rho.expect(b) + shift;
  WignerPeak best{centre, wigner_at(rho, centre, shift)};
  double h = 0.1;
  const int half = 30;
  for (int j = -half; j <= half; ++j) {
    for (int i = -half; i <= half; ++i) {
      const Complex z = centre + Complex(i * h, j * h);
      const double w = wigner_at(rho, z, shift);
      if (w > best.value) best = {z, w};
    }
  }
  while (h > 1e-7) {
    bool moved = false;
    for (const Complex step : {Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)}) {
      const Complex z = best.location + step;
      const double w = wigner_at(rho, z, shift);
      if (w > best.value) {
        best = {z, w};
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  return best;
}

}  // namespace hmaser
