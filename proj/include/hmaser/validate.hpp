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

// Oracle-equivalence battery: every closed form checked against an
// independent route through the same model.

#include <optional>
#include <string>
#include <vector>

#include "hmaser/hamiltonian.hpp"

namespace hmaser {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string text() const;
};

const std::vector<std::string>& validation_checks();

/// Runs the named checks (all when `subset` is unset). Unknown names
/// throw UnknownTag.
ValidationReport run_validation(const SystemParams& p, const std::optional<std::vector<std::string>>& subset = {});

/// Regime threshold on the full-state trace distance between the closed-form
/// transit and brute-force propagation.
inline constexpr double kClosedFormRegimeTol = 1e-2;

/// Largest full-state trace distance over `samples` interaction times in
/// (0, tau_max], starting from |g>|alpha>|0>.
double closed_form_discrepancy(const SystemParams& p, const SpaceDims& dims, double tau_max, int samples,
                               double* mech_reduced = nullptr);

}  // namespace hmaser
