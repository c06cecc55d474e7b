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

// Minimal SVG rendering for line plots and heatmaps.

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hmaser {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
  bool markers = false;
};

struct LinePlot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<LineSeries> series;
  std::vector<double> vlines;
  std::vector<double> hlines;
  bool log_y = false;
};

struct HeatmapPlot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::string zlabel;
  std::vector<double> x;
  std::vector<double> y;
  /// z(j, i) at (x[i], y[j]); NaN cells are left blank.
  Eigen::MatrixXd z;
};

std::string render_svg(const LinePlot& plot);
std::string render_svg(const HeatmapPlot& plot);
void write_svg(const LinePlot& plot, const std::filesystem::path& path);
void write_svg(const HeatmapPlot& plot, const std::filesystem::path& path);

}  // namespace hmaser
