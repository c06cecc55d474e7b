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

// Lab-frame Hamiltonian of the atom-cavity-mirror system, the closed-form
// transit propagator in the doubly rotating frame, and a brute-force
// propagator used as its oracle.

#include <numbers>

#include "hmaser/operator_core.hpp"

namespace hmaser {

/// Physical constants in units of the mechanical frequency.
struct SystemParams {
  double omega_m = 1.0;
  double omega_c = 5.0;
  double delta = 0.0;  // omega_a - omega_c
  double g_ac = 3.0;
  double g_cm = 0.02;
  double r = 80.0;
  double kappa_a = 3.0;
  double kappa_b = 0.05;
  double n_th = 0.0;
  Complex alpha = 0.3;
  double xi = 0.0;
  double phi = std::numbers::pi;

  double omega_a() const { return omega_c + delta; }
  double lambda() const { return g_cm / omega_m; }

  void validate() const;
};

/// Dimensionless interaction time Theta = tau * sqrt(omega_m * r).
struct PumpParameter {
  double theta = 0.0;

  double tau(const SystemParams& p) const;
  static PumpParameter from_tau(const SystemParams& p, double tau);
};

FockOperator build_hamiltonian(const SystemParams& p, const SpaceDims& d);

/// a^dag a + sigma_z / 2 on the tripartite space.
FockOperator polariton_number(const SpaceDims& d);

/// omega_c * N + omega_m * b^dag b; conjugating the lab-frame state by
/// exp(+i H0 t) yields the frame in which the closed-form propagator lives.
FockOperator rotating_frame_generator(const SystemParams& p, const SpaceDims& d);

/// exp(iF) with eta = -1: the unitary mechanical displacement by +lambda,
/// exponentiated from the truncated generator so it stays exactly unitary.
FockOperator displacement_exp_iF(const SystemParams& p, int mech_dim);

/// Cavity-mode blocks of the transit propagator; all diagonal in Fock space.
struct EvolutionBlocks {
  FockOperator c;  // cos(t sqrt(phi + g^2)) - (i delta / 2) S
  FockOperator s;  // sin(t sqrt(phi + g^2)) / sqrt(phi + g^2)
  FockOperator d;  // cos(t sqrt(phi)) + (i delta / 2) sin(t sqrt(phi)) / sqrt(phi)
};

/// phi = g_ac^2 a^dag a + (delta/2)^2.
FockOperator phi_operator(const SystemParams& p, int cavity_dim);

EvolutionBlocks evolution_blocks(const SystemParams& p, int cavity_dim, double t);

/// Full 2x2 block propagator on atom (x) cavity (x) mechanics.
FockOperator evolution_operator(const SystemParams& p, const SpaceDims& d, double t);

struct ClosedFormEvolution {
  DensityMatrix state;
  /// Largest population on the top cavity or mechanical Fock level.
  double top_population = 0.0;

  static constexpr double kTruncationWarning = 1e-8;
  bool truncation_warning() const { return top_population > kTruncationWarning; }
};

ClosedFormEvolution evolve_closed_form(const DensityMatrix& rho0, const SystemParams& p, double tau);

enum class Frame { Lab, Rotating };

struct BruteForceOptions {
  int steps = 32;
  int max_refinements = 6;
  double tolerance = 1e-8;
  Frame frame = Frame::Rotating;
};

struct BruteForceEvolution {
  DensityMatrix state;
  int steps = 0;
  double refinement_change = 0.0;
};

/// Propagates exp(-iHt) of the full Hamiltonian by fixed unitary steps,
/// halving the step until the result moves by less than the tolerance.
BruteForceEvolution evolve_brute_force(const DensityMatrix& rho0, const SystemParams& p, double t,
                                       const BruteForceOptions& opts = {});

SpaceDims space_dims_of(const DensityMatrix& rho);

}  // namespace hmaser
