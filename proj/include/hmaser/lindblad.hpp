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

// Maser master equations for a single bosonic mode:
//
//   d rho / dt = r (M - 1) rho + sum_k coef_k (2 X_k rho Y_k - Y_k X_k rho - rho Y_k X_k)
//
// where M is a transit gain map given by Kraus operators. Thermal and
// squeezed baths are both expressed through the (X, Y, coef) terms.
//
// A master equation may be written in a displaced Fock basis: states then
// represent D(-s) rho D(s) for frame shift s, and every bath operator b is
// replaced by b + s. Gain maps built from real displacements commute with a
// real shift, so only the bath terms change. Solving around the stationary
// mean keeps strongly displaced mirror states inside a small truncation.

#include <functional>
#include <vector>

#include "hmaser/gain.hpp"

namespace hmaser {

struct DissipatorTerm {
  Matrix x;
  Matrix y;
  Complex coef;
};

struct MasterEquation {
  int dim = 0;
  double gain_rate = 0.0;
  std::vector<Matrix> gain_kraus;
  std::vector<DissipatorTerm> terms;
  Complex frame_shift{};
  /// Set when every term preserves m - n of |m><n|; the steady state is then
  /// diagonal and is solved on the population sector.
  bool phase_covariant = false;

  void validate() const;
};

/// N_sq = sinh^2 xi, M_sq = -e^{i phi} sinh xi cosh xi.
struct SqueezedBath {
  double n_sq = 0.0;
  Complex m_sq{};

  static SqueezedBath from_squeezing(double xi, double phi);
};

/// Stationary <b> of the phonon master equations, 2 lambda r B / kappa_b.
/// Neither the thermal nor the squeezed bath terms shift it.
double phonon_stationary_mean(const SystemParams& p, double tau);

MasterEquation phonon_thermal_me(const SystemParams& p, double tau, int mech_dim, Complex frame_shift = {});
MasterEquation phonon_squeezed_me(const SystemParams& p, double tau, int mech_dim, Complex frame_shift = {});
MasterEquation photon_thermal_me(const SystemParams& p, PumpParameter theta, int cavity_dim);

Matrix apply(const MasterEquation& me, const Matrix& rho);

Matrix rhs_phonon_thermal(const DensityMatrix& rho, const SystemParams& p, double tau);
Matrix rhs_photon_thermal(const DensityMatrix& rho, const SystemParams& p, PumpParameter theta);
Matrix rhs_phonon_squeezed(const DensityMatrix& rho, const SystemParams& p, double tau);

/// Dense dim^2 x dim^2 generator acting on column-stacked vec(rho).
Matrix generator_matrix(const MasterEquation& me);

enum class SteadyStateMethod { DirectSolve, TimeMarch };

const char* to_string(SteadyStateMethod m);

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;
  SteadyStateMethod method = SteadyStateMethod::DirectSolve;
  Complex frame_shift{};
};

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::DirectSolve;
  bool allow_fallback = true;
  /// Singular values below this fraction of the largest count as null directions.
  double degeneracy_tol = 1e-11;
  double residual_tol = 1e-9;
  double march_time_limit = 5e4;
};

SteadyState steady_state(const MasterEquation& me, const SteadyStateOptions& opts = {});

using ObservableHook = std::function<double(const Matrix& rho)>;

struct EvolveOptions {
  double tolerance = 1e-10;
  double initial_step = 1e-3;
  double min_step = 1e-12;
};

struct TimeSeries {
  std::vector<double> times;
  /// values[k][j]: hook j at times[k].
  std::vector<std::vector<double>> values;
  Matrix final_state;
  long steps = 0;
};

/// Adaptive Dormand-Prince 5(4) integration from rho0 (given in the frame of
/// me) up to the last sample time; observables are sampled exactly on the
/// requested grid.
TimeSeries evolve_me(const MasterEquation& me, const DensityMatrix& rho0, std::vector<double> sample_times,
                     const std::vector<ObservableHook>& hooks, const EvolveOptions& opts = {});

enum class PhononBath { Thermal, Squeezed };

/// Phonon steady state solved in the frame displaced by the stationary mean.
SteadyState phonon_steady_state(const SystemParams& p, double tau, int mech_dim, PhononBath bath,
                                const SteadyStateOptions& opts = {});

/// D(s) rho D(s)^dag written on an undisplaced truncation of lab_dim levels
/// (chosen from |s| and the input size when 0).
DensityMatrix to_lab_frame(const DensityMatrix& rho, Complex shift, int lab_dim = 0);

}  // namespace hmaser
