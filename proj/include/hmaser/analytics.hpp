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

// Closed-form observables and state diagnostics: the Fokker-Planck phonon
// occupation, trapping conditions, the detailed-balance photon distribution,
// second-order coherence and Wigner functions.

#include <limits>
#include <vector>

#include "hmaser/lindblad.hpp"

namespace hmaser {

/// Displaced thermal P-function centred on beta1.
struct FPSolution {
  double beta1 = 0.0;
  double n_th = 0.0;

  double mean_number() const { return n_th + beta1 * beta1; }
};

inline constexpr double kSteadyTime = std::numeric_limits<double>::infinity();

FPSolution fokker_planck_solution(const SystemParams& p, double tau, double t = kSteadyTime);

/// n_th + beta1(t)^2; kappa_b = 0 is rejected.
double phonon_number_analytic(const SystemParams& p, double tau, double t = kSteadyTime);

/// Left side of the phonon trapping condition (dB/dtau up to a positive
/// factor) and the matching second-derivative factor.
double trapping_condition(const SystemParams& p, double theta);
double trapping_curvature(const SystemParams& p, double theta);

struct TrappingRoots {
  std::vector<double> thetas;
};

inline constexpr double kRootScanStep = 0.05;

/// Minima of B over Theta in [theta_min, theta_max].
TrappingRoots trapping_roots(const SystemParams& p, double theta_min, double theta_max);

struct PhotonTrappingTheta {
  int k = 0;
  int m = 1;
  double theta = 0.0;
};

/// Theta values closing the k -> k+1 transition, for k = 0..k_max and
/// m = 1..m_max. m = 0 (Theta = 0) is not listed.
std::vector<PhotonTrappingTheta> photon_trapping_thetas(const SystemParams& p, int k_max, int m_max = 3);

/// Detailed-balance steady photon distribution P_0..P_n_max for excited-atom
/// injection. Throws Truncation when the mass above n_max exceeds 1e-10.
std::vector<double> photon_distribution_db(const SystemParams& p, PumpParameter theta, int n_max);

inline constexpr double kVacuumThreshold = 1e-12;

double g2_phonon_analytic(const SystemParams& p, double tau, double t = kSteadyTime);

/// <n> and <n(n-1)>/<n>^2 of a single mode; states solved in a displaced
/// frame pass their shift.
double mean_number(const DensityMatrix& rho, Complex shift = {});
double g2_numeric(const DensityMatrix& rho, Complex shift = {});

/// W(beta) = (2/pi) Tr[rho D(beta) P D(beta)^dag], P the parity.
double wigner_at(const DensityMatrix& rho, Complex beta, Complex shift = {});

struct WignerGridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  int nx = 101;
  double y_min = -4.0;
  double y_max = 4.0;
  int ny = 101;

  void validate() const;
  double x(int i) const;
  double y(int j) const;
};

struct WignerGrid {
  WignerGridSpec spec;
  /// values(j, i) at beta = x(i) + i y(j).
  Eigen::MatrixXd values;
};

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec = {}, Complex shift = {});

struct WignerPeak {
  Complex location;
  double value = 0.0;
};

/// Global maximum: coarse scan around <b> then pattern refinement to 1e-7.
WignerPeak wigner_peak(const DensityMatrix& rho, Complex shift = {});

}  // namespace hmaser
