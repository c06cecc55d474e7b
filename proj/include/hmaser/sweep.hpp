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

// Parameter sweeps over one axis with analytic and/or master-equation
// observables, written as CSV with a config echo that reproduces the run.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hmaser/analytics.hpp"
#include "hmaser/config.hpp"

namespace hmaser {

enum class Method { Analytic, Numeric, Both };
enum class SweepAxis { Theta, GCm, Xi, Alpha, NTh };
enum class Observable { Nb, Na, G2b, G2a, Wigner, Roots };

Method method_from_string(std::string_view s);
const char* to_string(Method m);
SweepAxis axis_from_string(std::string_view s);
const char* to_string(SweepAxis a);
Observable observable_from_string(std::string_view s);
const char* to_string(Observable o);
PhononBath bath_from_string(std::string_view s);
const char* to_string(PhononBath b);

/// Whether `o` can be produced by method `m` (either form for Both).
bool has_form(Observable o, Method m, PhononBath bath);

/// Named SystemParams field access ("g_cm", "alpha", ...).
void set_param(SystemParams& p, std::string_view key, double value);
double get_param(const SystemParams& p, std::string_view key);
const std::vector<std::string>& param_names();

struct SweepConfig {
  SystemParams params;
  SweepAxis axis = SweepAxis::Theta;
  double min = 0.0;
  double max = 30.0;
  int points = 61;
  /// Pump parameter when the axis is not theta.
  double theta = 9.32;
  std::vector<Observable> observables{Observable::Nb};
  Method method = Method::Both;
  PhononBath bath = PhononBath::Thermal;
  int cav_dim = 64;
  int mech_dim = 16;
  double root_min = 1.0;
  double root_max = 30.0;
  std::string out_dir = ".";
  std::string name = "sweep";
  /// Worker threads; 0 means one per logical core.
  int jobs = 0;

  void validate() const;
  double grid_value(int i) const;
  /// Params and pump parameter at one grid value.
  SystemParams params_at(double value, double* theta_out) const;

  static SweepConfig from_config(const Config& c);
  Config to_config() const;
};

inline constexpr double kTailPopulationTol = 1e-8;

enum class RowFlag { Ok, Undefined, Unconverged };
const char* to_string(RowFlag f);

struct SweepRow {
  double value = 0.0;
  std::string observable;
  Method method = Method::Analytic;
  double result = 0.0;
  double residual = 0.0;
  int cav_dim = 0;
  int mech_dim = 0;
  RowFlag flag = RowFlag::Ok;
  std::string message;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;
  double wall_seconds = 0.0;

  std::size_t unconverged() const;
  std::string csv() const;
  void write_csv(const std::filesystem::path& path) const;
  /// One line plot per observable.
  void write_plots(const std::filesystem::path& dir) const;
};

/// Rows for one grid value, in observable then method order.
std::vector<SweepRow> evaluate_point(const SweepConfig& cfg, double value);

SweepResult run_sweep(const SweepConfig& cfg);

/// Runs fn(i) for i in [0, n) on `jobs` threads; the first exception is rethrown.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace hmaser
