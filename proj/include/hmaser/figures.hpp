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

// Figure reproductions: each tag binds a fixed parameter set and writes its
// data (CSV) and rendering (SVG).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hmaser/sweep.hpp"

namespace hmaser {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int jobs = 0;
  std::optional<int> cav_dim;
  std::optional<int> mech_dim;
  std::optional<Method> method;
};

struct FigureOutput {
  std::vector<std::filesystem::path> files;
  std::size_t unconverged = 0;
  double wall_seconds = 0.0;
};

const std::vector<std::string>& figure_tags();

/// Throws UnknownTag, before writing anything, for tags not in figure_tags().
FigureOutput reproduce_figure(const std::string& tag, const RunOptions& opts);

/// Drops observables that have no form under `method`; false when none remain.
bool restrict_to_method(SweepConfig& cfg, Method method);

}  // namespace hmaser
