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

// Single-transit gain maps: what one atom crossing the cavity does to the
// mirror (phonon) and field (photon) states.

#include <vector>

#include "hmaser/hamiltonian.hpp"

namespace hmaser {

/// rho_m -> A rho_m + B e^{iF} rho_m e^{-iF}; A + B = 1.
struct GainCoefficients {
  double a_coeff = 1.0;
  double b_coeff = 0.0;
  double lambda = 0.0;
};

/// Poisson sums over the coherent cavity state, truncated once the weight
/// drops below kSeriesFloor.
GainCoefficients gain_coefficients(const SystemParams& p, double tau);

inline constexpr double kSeriesFloor = 1e-16;

enum class AtomState { Excited, Ground };

DensityMatrix phonon_gain_map(const DensityMatrix& rho_m, const SystemParams& p, double tau);

/// Field map for an atom injected in the excited state:
/// rho -> C rho C^dag + g^2 a^dag S rho S a.
DensityMatrix cavity_gain_map(const DensityMatrix& rho_c, const SystemParams& p, PumpParameter theta);

/// Cavity (x) mechanics state after one transit, atom traced out.
DensityMatrix joint_gain_state(const DensityMatrix& rho_c0, const DensityMatrix& rho_m0,
                               const SystemParams& p, double tau, AtomState atom = AtomState::Ground);

/// Kraus operators K with M(rho) = sum K rho K^dag, used to vectorize the
/// maps inside master-equation generators.
std::vector<Matrix> phonon_gain_kraus(const SystemParams& p, double tau, int mech_dim);
std::vector<Matrix> cavity_gain_kraus(const SystemParams& p, double tau, int cavity_dim);

}  // namespace hmaser
