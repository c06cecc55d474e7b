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

#include "hmaser/figures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hmaser/plot.hpp"

namespace hmaser {

namespace {

struct Context {
  RunOptions opts;
  FigureOutput out;
};

SweepConfig base_config(const Context& ctx, const std::string& name, const SystemParams& p) {
  SweepConfig c;
  c.params = p;
  c.name = name;
  c.out_dir = ctx.opts.out_dir.string();
  c.jobs = ctx.opts.jobs;
  if (ctx.opts.cav_dim) c.cav_dim = *ctx.opts.cav_dim;
  if (ctx.opts.mech_dim) c.mech_dim = *ctx.opts.mech_dim;
  return c;
}

std::optional<SweepResult> run(Context& ctx, SweepConfig cfg) {
  if (ctx.opts.method && !restrict_to_method(cfg, *ctx.opts.method)) return std::nullopt;
  SweepResult res = run_sweep(cfg);
  const auto path = ctx.opts.out_dir / (cfg.name + ".csv");
  res.write_csv(path);
  ctx.out.files.push_back(path);
  ctx.out.unconverged += res.unconverged();
  return res;
}

LineSeries series(const SweepResult& res, const std::string& obs, Method m, const std::string& label) {
  LineSeries s{label, {}, {}, m == Method::Numeric, false};
  for (const SweepRow& r : res.rows) {
    if (r.observable == obs && r.method == m) {
      s.x.push_back(r.value);
      s.y.push_back(r.result);
    }
  }
  return s;
}

// Solid analytic and dashed numeric curves for each result that has them.
void add_curves(LinePlot& plot, const SweepResult& res, const std::string& obs, const std::string& label) {
  for (Method m : {Method::Analytic, Method::Numeric}) {
    LineSeries s = series(res, obs, m, label + " (" + to_string(m) + ")");
    if (!s.x.empty()) plot.series.push_back(std::move(s));
  }
}

void save_plot(Context& ctx, const LinePlot& plot, const std::string& name) {
  const auto path = ctx.opts.out_dir / (name + ".svg");
  write_svg(plot, path);
  ctx.out.files.push_back(path);
}

void save_heatmap(Context& ctx, const HeatmapPlot& plot, const std::string& name) {
  const auto path = ctx.opts.out_dir / (name + ".svg");
  write_svg(plot, path);
  ctx.out.files.push_back(path);
}

std::string tagged(double v) {
  std::string s = format_double(v);
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

std::vector<double> phonon_roots(const SystemParams& p) { return trapping_roots(p, 1.0, 30.0).thetas; }

std::vector<double> photon_thetas(const SystemParams& p, int k) {
  std::vector<double> out;
  for (const auto& t : photon_trapping_thetas(p, k)) {
    if (t.k == k && t.theta <= 30.0) out.push_back(t.theta);
  }
  return out;
}

SystemParams fig2_params() { return SystemParams{}; }

SystemParams fig6_params() {
  SystemParams p;
  p.g_cm = 0.014;
  p.alpha = 0.384;
  p.xi = 0.015;
  p.phi = std::numbers::pi;
  return p;
}

constexpr int kThetaPoints = 121;

SweepConfig theta_sweep(const Context& ctx, const std::string& name, const SystemParams& p,
                        std::vector<Observable> obs) {
  SweepConfig c = base_config(ctx, name, p);
  c.axis = SweepAxis::Theta;
  c.min = 0.0;
  c.max = 30.0;
  c.points = kThetaPoints;
  c.observables = std::move(obs);
  return c;
}

void fig2ab(Context& ctx, const std::string& tag, const std::string& key, const std::vector<double>& values) {
  LinePlot plot{tag + ": steady phonon number", "Theta", "<b^dag b>", {}, {}, {}, false};
  for (double v : values) {
    SystemParams p = fig2_params();
    set_param(p, key, v);
    auto res = run(ctx, theta_sweep(ctx, tag + "_" + key + tagged(v), p, {Observable::Nb}));
    if (res) add_curves(plot, *res, "nb", key + "=" + format_double(v));
  }
  if (tag == "fig2b") plot.vlines = phonon_roots(fig2_params());
  save_plot(ctx, plot, tag);
}

void fig2cd(Context& ctx, const std::string& tag, SweepAxis axis, double lo, double hi, int points) {
  const SystemParams p = fig2_params();
  LinePlot plot{tag + ": phonon number at the trapping points", to_string(axis), "<b^dag b>", {}, {}, {}, false};
  const auto roots = phonon_roots(p);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    SweepConfig c = base_config(ctx, tag + "_theta" + std::to_string(k + 1), p);
    c.axis = axis;
    c.min = lo;
    c.max = hi;
    c.points = points;
    c.theta = roots[k];
    c.observables = {Observable::Nb};
    if (axis == SweepAxis::NTh && !ctx.opts.mech_dim) c.mech_dim = 24;
    auto res = run(ctx, c);
    if (res) add_curves(plot, *res, "nb", "Theta" + std::to_string(k + 1));
  }
  save_plot(ctx, plot, tag);
}

void fig3a(Context& ctx) {
  auto res = run(ctx, theta_sweep(ctx, "fig3a", fig2_params(), {Observable::Na, Observable::Nb}));
  LinePlot plot{"fig3a: steady photon and phonon numbers", "Theta", "mean occupation", {}, {}, {}, false};
  if (res) {
    add_curves(plot, *res, "na", "photons");
    add_curves(plot, *res, "nb", "phonons");
  }
  plot.vlines = photon_thetas(fig2_params(), 0);
  save_plot(ctx, plot, "fig3a");
}

void fig3b(Context& ctx) {
  SweepConfig c = base_config(ctx, "fig3b", fig2_params());
  c.axis = SweepAxis::Alpha;
  c.min = 0.02;
  c.max = 1.0;
  c.points = 50;
  c.observables = {Observable::Roots};
  c.method = Method::Analytic;
  auto res = run(ctx, c);
  LinePlot plot{"fig3b: phonon trapping points against |alpha|", "|alpha|", "Theta", {}, {}, {}, false};
  if (res) {
    for (int k = 1; k <= 3; ++k) {
      plot.series.push_back(series(*res, "root_" + std::to_string(k), Method::Analytic, "Theta" + std::to_string(k)));
    }
  }
  plot.hlines = photon_thetas(fig2_params(), 0);
  save_plot(ctx, plot, "fig3b");
}

void write_wigner_csv(Context& ctx, const std::string& name, const WignerGrid& w, const std::string& comment) {
  const auto path = ctx.opts.out_dir / (name + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out << "# hmaser " << HMASER_VERSION << "\n# " << comment << "\nre_beta,im_beta,wigner\n";
  for (int j = 0; j < w.spec.ny; ++j) {
    for (int i = 0; i < w.spec.nx; ++i) {
      out << format_double(w.spec.x(i)) << ',' << format_double(w.spec.y(j)) << ',' << format_double(w.values(j, i))
          << '\n';
    }
  }
  ctx.out.files.push_back(path);
}

void fig3c(Context& ctx) {
  if (ctx.opts.method == Method::Analytic) return;
  const SystemParams p = fig2_params();
  const int nc = ctx.opts.cav_dim.value_or(64);
  const int nm = ctx.opts.mech_dim.value_or(16);
  auto roots = phonon_roots(p);
  std::vector<double> thetas{roots.at(0), roots.at(1), 5.0, 14.0};
  struct Panel {
    std::string name;
    WignerGrid grid;
    std::string comment;
  };
  std::vector<Panel> panels(2 * thetas.size());
  parallel_for(static_cast<int>(panels.size()), ctx.opts.jobs, [&](int idx) {
    const double theta = thetas[idx / 2];
    const bool cavity = idx % 2 == 0;
    std::ostringstream comment;
    comment << (cavity ? "cavity" : "mechanics") << " steady state at theta = " << format_double(theta);
    WignerGridSpec spec;
    DensityMatrix rho = fock_state(0, 2);
    Complex shift{};
    if (cavity) {
      spec = {-7.0, 7.0, 81, -7.0, 7.0, 81};
      rho = steady_state(photon_thermal_me(p, PumpParameter{theta}, nc)).rho;
    } else {
      spec = {-3.0, 8.0, 89, -4.0, 4.0, 65};
      const SteadyState ss = phonon_steady_state(p, PumpParameter{theta}.tau(p), nm, PhononBath::Thermal);
      rho = ss.rho;
      shift = ss.frame_shift;
    }
    const std::string name = std::string("fig3c_") + (cavity ? "cavity" : "mechanics") + "_" + std::to_string(idx / 2 + 1);
    panels[idx] = {name, wigner(rho, spec, shift), comment.str()};
  });
  for (const Panel& panel : panels) {
    write_wigner_csv(ctx, panel.name, panel.grid, panel.comment);
    HeatmapPlot h{panel.comment, "Re beta", "Im beta", "W", {}, {}, panel.grid.values};
    for (int i = 0; i < panel.grid.spec.nx; ++i) h.x.push_back(panel.grid.spec.x(i));
    for (int j = 0; j < panel.grid.spec.ny; ++j) h.y.push_back(panel.grid.spec.y(j));
    save_heatmap(ctx, h, panel.name);
  }
}

void fig4a(Context& ctx) {
  auto res = run(ctx, theta_sweep(ctx, "fig4a", fig2_params(), {Observable::G2a, Observable::G2b}));
  LinePlot plot{"fig4a: second-order coherence", "Theta", "g2(0)", {}, {}, {}, true};
  if (res) {
    add_curves(plot, *res, "g2a", "photons");
    add_curves(plot, *res, "g2b", "phonons");
  }
  plot.vlines = photon_thetas(fig2_params(), 0);
  for (double t : photon_thetas(fig2_params(), 1)) plot.vlines.push_back(t);
  save_plot(ctx, plot, "fig4a");
}

void fig4b(Context& ctx) {
  LinePlot plot{"fig4b: phonon g2 at n_th = 0.01", "Theta", "g2_b(0)", {}, {}, {}, false};
  for (double g : {0.0, 0.01, 0.02, 0.03}) {
    SystemParams p = fig2_params();
    p.g_cm = g;
    p.n_th = 0.01;
    auto res = run(ctx, theta_sweep(ctx, "fig4b_g_cm" + tagged(g), p, {Observable::G2b}));
    if (res) add_curves(plot, *res, "g2b", "g_cm=" + format_double(g));
  }
  save_plot(ctx, plot, "fig4b");
}

const std::vector<double>& squeezing_levels() {
  static const std::vector<double> xi{0.0,  0.005, 0.01, 0.015, 0.02, 0.03, 0.04,
                                      0.05, 0.075, 0.1,  0.125, 0.15, 0.2};
  return xi;
}

// Heatmap of numeric phonon g2: one sweep (and CSV) per squeezing level.
void squeezing_heatmap(Context& ctx, const std::string& tag, const SystemParams& p, SweepAxis axis, double lo,
                       double hi, int points, double theta) {
  if (ctx.opts.method == Method::Analytic) return;
  const auto& xis = squeezing_levels();
  HeatmapPlot h{tag + ": phonon g2 with a squeezed bath", to_string(axis), "xi", "g2_b(0)", {}, xis, {}};
  h.z = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(xis.size()), points, std::nan(""));
  for (std::size_t j = 0; j < xis.size(); ++j) {
    SystemParams q = p;
    q.xi = xis[j];
    SweepConfig c = base_config(ctx, tag + "_xi" + tagged(xis[j]), q);
    c.axis = axis;
    c.min = lo;
    c.max = hi;
    c.points = points;
    c.theta = theta;
    c.bath = PhononBath::Squeezed;
    c.method = Method::Numeric;
    c.observables = {Observable::G2b};
    auto res = run(ctx, c);
    if (!res) continue;
    const LineSeries s = series(*res, "g2b", Method::Numeric, "");
    if (j == 0) h.x = s.x;
    for (std::size_t i = 0; i < s.y.size(); ++i) h.z(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = s.y[i];
  }
  save_heatmap(ctx, h, tag);
}

void fig5(Context& ctx, const std::string& tag) {
  SystemParams p = fig2_params();
  p.g_cm = 0.014;
  if (tag == "fig5a") {
    squeezing_heatmap(ctx, tag, p, SweepAxis::Theta, 0.0, 30.0, 61, 0.0);
    return;
  }
  const std::size_t k = static_cast<std::size_t>(tag.back() - 'b');
  const double theta = phonon_roots(p).at(k);
  squeezing_heatmap(ctx, tag, p, SweepAxis::GCm, 0.002, 0.03, 15, theta);
}

void fig6(Context& ctx) {
  const SystemParams p = fig6_params();
  SweepConfig phonon = theta_sweep(ctx, "fig6_phonon", p, {Observable::G2b, Observable::Nb});
  phonon.bath = PhononBath::Squeezed;
  phonon.method = Method::Numeric;
  SweepConfig photon = theta_sweep(ctx, "fig6_photon", p, {Observable::Na});
  auto ph = run(ctx, phonon);
  auto pa = run(ctx, photon);
  LinePlot plot{"fig6: phonon g2 and occupations, squeezed bath", "Theta", "g2_b(0), <n>", {}, {}, {}, true};
  if (ph) {
    add_curves(plot, *ph, "g2b", "phonon g2");
    add_curves(plot, *ph, "nb", "phonons");
  }
  if (pa) add_curves(plot, *pa, "na", "photons");
  plot.vlines = phonon_roots(p);
  plot.hlines = {1.0};
  save_plot(ctx, plot, "fig6");
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
  static const std::map<std::string, std::function<void(Context&)>> r{
      {"fig2a", [](Context& c) { fig2ab(c, "fig2a", "alpha", {0.1, 0.3, 0.5}); }},
      {"fig2b", [](Context& c) { fig2ab(c, "fig2b", "g_cm", {0.01, 0.02, 0.03}); }},
      {"fig2c", [](Context& c) { fig2cd(c, "fig2c", SweepAxis::GCm, 0.0, 0.05, 26); }},
      {"fig2d", [](Context& c) { fig2cd(c, "fig2d", SweepAxis::NTh, 0.0, 0.5, 21); }},
      {"fig3a", fig3a},
      {"fig3b", fig3b},
      {"fig3c", fig3c},
      {"fig4a", fig4a},
      {"fig4b", fig4b},
      {"fig5a", [](Context& c) { fig5(c, "fig5a"); }},
      {"fig5b", [](Context& c) { fig5(c, "fig5b"); }},
      {"fig5c", [](Context& c) { fig5(c, "fig5c"); }},
      {"fig5d", [](Context& c) { fig5(c, "fig5d"); }},
      {"fig6", fig6},
  };
  return r;
}

}  // namespace

bool restrict_to_method(SweepConfig& cfg, Method method) {
  std::vector<Observable> kept;
  for (Observable o : cfg.observables) {
    if (has_form(o, method, cfg.bath)) kept.push_back(o);
  }
  cfg.observables = std::move(kept);
  cfg.method = method;
  return !cfg.observables.empty();
}

const std::vector<std::string>& figure_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> t;
    for (const auto& [name, fn] : registry()) t.push_back(name);
    return t;
  }();
  return tags;
}

FigureOutput reproduce_figure(const std::string& tag, const RunOptions& opts) {
  const auto it = registry().find(tag);
  if (it == registry().end()) fail(ErrorCode::UnknownTag, "unknown figure tag '" + tag + "'");
  const auto start = std::chrono::steady_clock::now();
  Context ctx{opts, {}};
  std::filesystem::create_directories(opts.out_dir);
  it->second(ctx);
  ctx.out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ctx.out;
}

}  // namespace hmaser
