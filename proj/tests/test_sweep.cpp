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

#include <doctest.h>

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>

#include "hmaser/figures.hpp"
#include "hmaser/plot.hpp"
#include "hmaser/sweep.hpp"
#include "hmaser/validate.hpp"

using namespace hmaser;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hmaser_test_" + name + "_" + std::to_string(std::random_device{}()));
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rows_only(const std::string& csv) { return csv.substr(csv.find("axis,value")); }

SweepConfig small_config() {
  SweepConfig c;
  c.min = 4.0;
  c.max = 14.0;
  c.points = 3;
  c.observables = {Observable::Nb, Observable::G2b};
  c.cav_dim = 32;
  c.mech_dim = 12;
  c.jobs = 1;
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  const Config c = Config::parse("[params]\ng_cm = 0.014\nalpha=0.384\n[sweep]\nobservables = nb, g2b\nname = \"x\"\n");
  CHECK(c.get_double("params.g_cm", 0.0) == 0.014);
  CHECK(c.get_list("sweep.observables", {}) == std::vector<std::string>({"nb", "g2b"}));
  CHECK(c.get_string("sweep.name", "") == "x");
  CHECK(c.get_double("params.r", 80.0) == 80.0);
  CHECK_THROWS_AS(Config::parse("[params]\ng_cm = abc\n").get_double("params.g_cm", 0.0), Error);
  CHECK_THROWS_AS(SweepConfig::from_config(Config::parse("[params]\ngcm = 0.1\n")), Error);
  CHECK_THROWS_AS(SweepConfig::from_config(Config::parse("[sweep]\naxis = time\n")), Error);
}

TEST_CASE("doubles survive formatting") {
  for (double v : {0.1, 1.0 / 3.0, 9.317425, 1e-300, -2.5}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("sweep config round trip") {
  SweepConfig c = small_config();
  c.params.g_cm = 0.014;
  c.params.xi = 0.015;
  c.bath = PhononBath::Squeezed;
  c.method = Method::Numeric;
  const SweepConfig back = SweepConfig::from_config(Config::parse(c.to_config().dump()));
  CHECK(back.params.g_cm == 0.014);
  CHECK(back.params.xi == 0.015);
  CHECK(back.bath == PhononBath::Squeezed);
  CHECK(back.method == Method::Numeric);
  CHECK(back.points == 3);
  CHECK(back.to_config().dump() == c.to_config().dump());
}

TEST_CASE("sweep config validation") {
  SweepConfig c = small_config();
  c.points = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.points = 3;
  c.min = 5.0;
  c.max = 5.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.points = 1;
  CHECK_NOTHROW(c.validate());
  CHECK(c.grid_value(0) == 5.0);
  SweepConfig sq = small_config();
  sq.bath = PhononBath::Squeezed;
  sq.method = Method::Analytic;
  CHECK_THROWS_AS(sq.validate(), Error);
}

TEST_CASE("observable forms") {
  CHECK(has_form(Observable::Nb, Method::Analytic, PhononBath::Thermal));
  CHECK_FALSE(has_form(Observable::Nb, Method::Analytic, PhononBath::Squeezed));
  CHECK(has_form(Observable::Nb, Method::Both, PhononBath::Squeezed));
  CHECK_FALSE(has_form(Observable::Roots, Method::Numeric, PhononBath::Thermal));
  CHECK_THROWS_AS(observable_from_string("photons"), Error);
}

TEST_CASE("parameter names") {
  SystemParams p;
  for (const auto& n : param_names()) set_param(p, n, 0.25);
  for (const auto& n : param_names()) CHECK(get_param(p, n) == 0.25);
  CHECK_THROWS_AS(set_param(p, "hbar", 1.0), Error);
}

TEST_CASE("sweep output is reproducible from its own CSV") {
  const fs::path dir = scratch_dir("rerun");
  SweepConfig c = small_config();
  c.out_dir = dir.string();
  const SweepResult first = run_sweep(c);
  CHECK(first.rows.size() == 3 * 2 * 2);
  CHECK(first.unconverged() == 0);
  first.write_csv(dir / "run.csv");
  const std::string text = read_file(dir / "run.csv");
  CHECK(text.rfind("# hmaser ", 0) == 0);
  const SweepResult second = run_sweep(SweepConfig::from_config(Config::load(dir / "run.csv")));
  CHECK(second.csv() == text);
  fs::remove_all(dir);
}

TEST_CASE("thread count does not change results") {
  SweepConfig c = small_config();
  c.points = 4;
  const std::string serial = rows_only(run_sweep(c).csv());
  c.jobs = 3;
  CHECK(rows_only(run_sweep(c).csv()) == serial);
}

TEST_CASE("single-point sweep") {
  SweepConfig c = small_config();
  c.points = 1;
  c.min = c.max = 9.32;
  const SweepResult r = run_sweep(c);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].value == 9.32);
}

TEST_CASE("undersized truncation is flagged") {
  SweepConfig c = small_config();
  c.points = 1;
  c.min = c.max = 14.0;
  c.mech_dim = 3;
  c.method = Method::Numeric;
  const SweepResult r = run_sweep(c);
  CHECK(r.unconverged() > 0);
  CHECK(r.csv().find(",unconverged") != std::string::npos);
}

TEST_CASE("vacuum g2 is reported as undefined") {
  SweepConfig c = small_config();
  c.params.g_cm = 0.0;
  c.points = 1;
  c.min = c.max = 10.0;
  c.observables = {Observable::G2b};
  const SweepResult r = run_sweep(c);
  for (const SweepRow& row : r.rows) CHECK(row.flag == RowFlag::Undefined);
  CHECK(r.csv().find("nan") != std::string::npos);
}

TEST_CASE("phonon minima of a fine scan sit next to the trapping roots") {
  SweepConfig c;
  c.min = 8.0;
  c.max = 10.5;
  c.points = 26;
  c.method = Method::Analytic;
  c.jobs = 1;
  const SweepResult r = run_sweep(c);
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.rows[i].result < r.rows[best].result) best = i;
  }
  CHECK(std::abs(r.rows[best].value - trapping_roots(c.params, 1.0, 12.0).thetas.at(0)) <= 0.05);
}

TEST_CASE("roots observable") {
  SweepConfig c = small_config();
  c.points = 1;
  c.min = c.max = 1.0;
  c.observables = {Observable::Roots};
  c.method = Method::Analytic;
  const SweepResult r = run_sweep(c);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].observable == "root_1");
  CHECK(r.rows[0].result == doctest::Approx(9.32).epsilon(0.002));
}

TEST_CASE("parallel_for covers every index and propagates errors") {
  std::vector<std::atomic<int>> hits(50);
  parallel_for(50, 4, [&](int i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) {
                    if (i == 7) fail(ErrorCode::Convergence, "boom");
                  }),
                  Error);
}

TEST_CASE("unknown figure tags write nothing") {
  const fs::path dir = scratch_dir("unknown");
  RunOptions o;
  o.out_dir = dir;
  try {
    reproduce_figure("fig9z", o);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTag);
  }
  CHECK_FALSE(fs::exists(dir));
  CHECK(figure_tags().size() >= 10);
}

TEST_CASE("analytic figure writes data and plots") {
  const fs::path dir = scratch_dir("fig3b");
  RunOptions o;
  o.out_dir = dir;
  o.jobs = 1;
  const FigureOutput out = reproduce_figure("fig3b", o);
  CHECK(out.unconverged == 0);
  bool has_csv = false, has_svg = false;
  for (const auto& f : out.files) {
    CHECK(fs::exists(f));
    has_csv |= f.extension() == ".csv";
    has_svg |= f.extension() == ".svg";
  }
  CHECK(has_csv);
  CHECK(has_svg);
  fs::remove_all(dir);
}

TEST_CASE("method restriction") {
  SweepConfig c;
  c.observables = {Observable::Nb, Observable::Roots};
  CHECK(restrict_to_method(c, Method::Numeric));
  CHECK(c.observables == std::vector<Observable>{Observable::Nb});
  SweepConfig r;
  r.observables = {Observable::Roots};
  CHECK_FALSE(restrict_to_method(r, Method::Numeric));
}

TEST_CASE("validation battery") {
  SystemParams p;
  const ValidationReport all = run_validation(p);
  CHECK(all.checks.size() == validation_checks().size());
  CHECK(all.passed());
  const ValidationReport none = run_validation(p, std::vector<std::string>{});
  CHECK(none.checks.empty());
  CHECK(none.passed());
  p.g_cm = 0.5;
  const ValidationReport strong = run_validation(p, std::vector<std::string>{"closed-form"});
  REQUIRE(strong.checks.size() == 1);
  CHECK_FALSE(strong.passed());
  CHECK_THROWS_AS(run_validation(p, std::vector<std::string>{"nope"}), Error);
}

TEST_CASE("SVG rendering") {
  LinePlot lp;
  lp.title = "a < b & c";
  lp.series.push_back({"s", {0.0, 1.0, 2.0}, {1.0, std::nan(""), 3.0}});
  lp.vlines = {1.5};
  const std::string svg = render_svg(lp);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  lp.log_y = true;
  CHECK_NOTHROW(render_svg(lp));

  HeatmapPlot hp;
  hp.x = {0.0, 1.0};
  hp.y = {0.0, 1.0, 2.0};
  hp.z = Eigen::MatrixXd::Ones(3, 2);
  CHECK(render_svg(hp).find("<rect") != std::string::npos);
  hp.z = Eigen::MatrixXd::Ones(2, 2);
  CHECK_THROWS_AS(render_svg(hp), Error);
}
