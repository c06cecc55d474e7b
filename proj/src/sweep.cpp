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

#include "hmaser/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "hmaser/plot.hpp"

namespace hmaser {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const std::pair<const char*, E> (&table)[N], const char* what) {
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  std::string msg = std::string("unknown ") + what + " '" + std::string(s) + "' (expected";
  for (const auto& [name, value] : table) msg += std::string(" ") + name;
  fail(ErrorCode::InvalidArgument, msg + ")");
}

template <typename E, std::size_t N>
const char* enum_name(E e, const std::pair<const char*, E> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (value == e) return name;
  }
  return "?";
}

constexpr std::pair<const char*, Method> kMethods[] = {
    {"analytic", Method::Analytic}, {"numeric", Method::Numeric}, {"both", Method::Both}};
constexpr std::pair<const char*, SweepAxis> kAxes[] = {{"theta", SweepAxis::Theta},
                                                       {"g_cm", SweepAxis::GCm},
                                                       {"xi", SweepAxis::Xi},
                                                       {"alpha", SweepAxis::Alpha},
                                                       {"n_th", SweepAxis::NTh}};
constexpr std::pair<const char*, Observable> kObservables[] = {
    {"nb", Observable::Nb},         {"na", Observable::Na},         {"g2b", Observable::G2b},
    {"g2a", Observable::G2a},       {"wigner", Observable::Wigner}, {"roots", Observable::Roots}};
constexpr std::pair<const char*, PhononBath> kBaths[] = {{"thermal", PhononBath::Thermal},
                                                         {"squeezed", PhononBath::Squeezed}};
constexpr std::pair<const char*, RowFlag> kFlags[] = {
    {"ok", RowFlag::Ok}, {"undefined", RowFlag::Undefined}, {"unconverged", RowFlag::Unconverged}};

}  // namespace

Method method_from_string(std::string_view s) { return parse_enum(s, kMethods, "method"); }
const char* to_string(Method m) { return enum_name(m, kMethods); }
SweepAxis axis_from_string(std::string_view s) { return parse_enum(s, kAxes, "axis"); }
const char* to_string(SweepAxis a) { return enum_name(a, kAxes); }
Observable observable_from_string(std::string_view s) { return parse_enum(s, kObservables, "observable"); }
const char* to_string(Observable o) { return enum_name(o, kObservables); }
PhononBath bath_from_string(std::string_view s) { return parse_enum(s, kBaths, "bath"); }
const char* to_string(PhononBath b) { return enum_name(b, kBaths); }
const char* to_string(RowFlag f) { return enum_name(f, kFlags); }

bool has_form(Observable o, Method m, PhononBath bath) {
  const bool analytic_ok = !(bath == PhononBath::Squeezed && (o == Observable::Nb || o == Observable::G2b));
  const bool numeric_ok = o != Observable::Roots;
  if (m == Method::Both) return analytic_ok || numeric_ok;
  return m == Method::Analytic ? analytic_ok : numeric_ok;
}

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names{"omega_m", "omega_c", "delta", "g_ac",  "g_cm", "r",
                                              "kappa_a", "kappa_b", "n_th",  "alpha", "xi",   "phi"};
  return names;
}

namespace {

double* param_slot(SystemParams& p, std::string_view key) {
  if (key == "omega_m") return &p.omega_m;
  if (key == "omega_c") return &p.omega_c;
  if (key == "delta") return &p.delta;
  if (key == "g_ac") return &p.g_ac;
  if (key == "g_cm") return &p.g_cm;
  if (key == "r") return &p.r;
  if (key == "kappa_a") return &p.kappa_a;
  if (key == "kappa_b") return &p.kappa_b;
  if (key == "n_th") return &p.n_th;
  if (key == "xi") return &p.xi;
  if (key == "phi") return &p.phi;
  return nullptr;
}

}  // namespace

void set_param(SystemParams& p, std::string_view key, double value) {
  if (key == "alpha") {
    p.alpha = value;
    return;
  }
  double* slot = param_slot(p, key);
  if (!slot) fail(ErrorCode::InvalidArgument, "unknown parameter '" + std::string(key) + "'");
  *slot = value;
}

double get_param(const SystemParams& p, std::string_view key) {
  if (key == "alpha") return std::abs(p.alpha);
  double* slot = param_slot(const_cast<SystemParams&>(p), key);
  if (!slot) fail(ErrorCode::InvalidArgument, "unknown parameter '" + std::string(key) + "'");
  return *slot;
}

void SweepConfig::validate() const {
  params.validate();
  if (points < 1) fail(ErrorCode::InvalidArgument, "sweep needs at least one grid point");
  if (!std::isfinite(min) || !std::isfinite(max)) fail(ErrorCode::NonFinite, "sweep bounds must be finite");
  if (points >= 2 && !(min < max)) fail(ErrorCode::InvalidArgument, "sweep needs min < max");
  if (axis == SweepAxis::Theta && min < 0.0) fail(ErrorCode::InvalidArgument, "theta must be >= 0");
  if (axis != SweepAxis::Theta && !(theta >= 0.0)) fail(ErrorCode::InvalidArgument, "theta must be >= 0");
  if (cav_dim < 2 || mech_dim < 2) fail(ErrorCode::InvalidDimension, "truncation dims must be >= 2");
  if (jobs < 0) fail(ErrorCode::InvalidArgument, "jobs must be >= 0");
  if (observables.empty()) fail(ErrorCode::InvalidArgument, "no observables requested");
  if (!(root_min < root_max)) fail(ErrorCode::InvalidArgument, "root search needs root_min < root_max");
  for (Observable o : observables) {
    if (!has_form(o, method, bath)) {
      fail(ErrorCode::InvalidArgument, std::string("observable ") + to_string(o) + " has no " + to_string(method) +
                                           " form" + (bath == PhononBath::Squeezed ? " for a squeezed bath" : ""));
    }
  }
  if (name.empty() || name.find('/') != std::string::npos) fail(ErrorCode::InvalidArgument, "invalid output name");
}

double SweepConfig::grid_value(int i) const {
  if (points == 1) return min;
  if (i == points - 1) return max;
  return min + (max - min) * i / (points - 1);
}

SystemParams SweepConfig::params_at(double value, double* theta_out) const {
  SystemParams p = params;
  double th = theta;
  switch (axis) {
    case SweepAxis::Theta: th = value; break;
    case SweepAxis::GCm: p.g_cm = value; break;
    case SweepAxis::Xi: p.xi = value; break;
    case SweepAxis::Alpha: p.alpha = value; break;
    case SweepAxis::NTh: p.n_th = value; break;
  }
  if (theta_out) *theta_out = th;
  return p;
}

namespace {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& n : param_names()) k.push_back("params." + n);
    for (const char* s : {"axis", "min", "max", "points", "theta", "observables", "method", "bath", "root_min",
                          "root_max"}) {
      k.push_back(std::string("sweep.") + s);
    }
    k.insert(k.end(), {"dims.cavity", "dims.mech", "output.dir", "output.name", "output.jobs"});
    return k;
  }();
  return keys;
}

}  // namespace

SweepConfig SweepConfig::from_config(const Config& c) {
  c.require_known(known_keys());
  SweepConfig s;
  for (const auto& n : param_names()) {
    if (c.has("params." + n)) set_param(s.params, n, c.get_double("params." + n, 0.0));
  }
  s.axis = axis_from_string(c.get_string("sweep.axis", to_string(s.axis)));
  s.min = c.get_double("sweep.min", s.min);
  s.max = c.get_double("sweep.max", s.max);
  s.points = c.get_int("sweep.points", s.points);
  s.theta = c.get_double("sweep.theta", s.theta);
  if (c.has("sweep.observables")) {
    s.observables.clear();
    for (const auto& o : c.get_list("sweep.observables", {})) s.observables.push_back(observable_from_string(o));
  }
  s.method = method_from_string(c.get_string("sweep.method", to_string(s.method)));
  s.bath = bath_from_string(c.get_string("sweep.bath", to_string(s.bath)));
  s.root_min = c.get_double("sweep.root_min", s.root_min);
  s.root_max = c.get_double("sweep.root_max", s.root_max);
  s.cav_dim = c.get_int("dims.cavity", s.cav_dim);
  s.mech_dim = c.get_int("dims.mech", s.mech_dim);
  s.out_dir = c.get_string("output.dir", s.out_dir);
  s.name = c.get_string("output.name", s.name);
  s.jobs = c.get_int("output.jobs", s.jobs);
  s.validate();
  return s;
}

Config SweepConfig::to_config() const {
  Config c;
  for (const auto& n : param_names()) c.set("params." + n, get_param(params, n));
  c.set("sweep.axis", std::string(to_string(axis)));
  c.set("sweep.min", min);
  c.set("sweep.max", max);
  c.set("sweep.points", static_cast<double>(points));
  c.set("sweep.theta", theta);
  std::string obs;
  for (Observable o : observables) obs += (obs.empty() ? "" : ", ") + std::string(to_string(o));
  c.set("sweep.observables", obs);
  c.set("sweep.method", std::string(to_string(method)));
  c.set("sweep.bath", std::string(to_string(bath)));
  c.set("sweep.root_min", root_min);
  c.set("sweep.root_max", root_max);
  c.set("dims.cavity", static_cast<double>(cav_dim));
  c.set("dims.mech", static_cast<double>(mech_dim));
  c.set("output.dir", out_dir);
  c.set("output.name", name);
  c.set("output.jobs", static_cast<double>(jobs));
  return c;
}

namespace {

double top_population(const DensityMatrix& rho) {
  const auto n = rho.dim();
  double tail = 0.0;
  for (Eigen::Index i = std::max<Eigen::Index>(0, n - 2); i < n; ++i) tail += rho.matrix()(i, i).real();
  return tail;
}

struct Solved {
  std::optional<SteadyState> state;
  std::string error;
  bool converged = true;
};

// Lazily solved steady states shared by the observables of one grid point.
class PointSolver {
 public:
  PointSolver(const SweepConfig& cfg, SystemParams p, double theta) : cfg_(cfg), p_(std::move(p)), theta_(theta) {}

  const Solved& phonon() {
    if (!phonon_) phonon_ = solve([&] {
      return phonon_steady_state(p_, PumpParameter{theta_}.tau(p_), cfg_.mech_dim, cfg_.bath);
    });
    return *phonon_;
  }

  const Solved& photon() {
    if (!photon_) photon_ = solve([&] { return steady_state(photon_thermal_me(p_, PumpParameter{theta_}, cfg_.cav_dim)); });
    return *photon_;
  }

  const std::vector<double>& distribution() {
    if (!dist_) dist_ = photon_distribution_db(p_, PumpParameter{theta_}, cfg_.cav_dim - 1);
    return *dist_;
  }

 private:
  template <typename F>
  static Solved solve(F&& f) {
    Solved s;
    try {
      s.state = f();
      s.converged = top_population(s.state->rho) < kTailPopulationTol;
      if (!s.converged) s.error = "population at the truncation edge exceeds 1e-8";
    } catch (const Error& e) {
      s.error = e.what();
      s.converged = false;
    }
    return s;
  }

  const SweepConfig& cfg_;
  SystemParams p_;
  double theta_;
  std::optional<Solved> phonon_, photon_;
  std::optional<std::vector<double>> dist_;
};

}  // namespace

std::vector<SweepRow> evaluate_point(const SweepConfig& cfg, double value) {
  double theta = 0.0;
  const SystemParams p = cfg.params_at(value, &theta);
  const double tau = PumpParameter{theta}.tau(p);
  PointSolver solver(cfg, p, theta);
  std::vector<SweepRow> rows;

  auto base = [&](std::string obs, Method m) {
    SweepRow r;
    r.value = value;
    r.observable = std::move(obs);
    r.method = m;
    r.cav_dim = cfg.cav_dim;
    r.mech_dim = cfg.mech_dim;
    return r;
  };
  // Evaluates f into a row, mapping library errors to row flags.
  auto emit = [&](Observable o, Method m, auto&& f) {
    SweepRow r = base(to_string(o), m);
    try {
      r.result = f(r);
    } catch (const Error& e) {
      r.result = std::nan("");
      r.message = e.what();
      r.flag = e.code() == ErrorCode::UndefinedStatistics ? RowFlag::Undefined : RowFlag::Unconverged;
    }
    rows.push_back(std::move(r));
  };
  auto numeric_state = [](const Solved& s, SweepRow& r) -> const SteadyState& {
    if (!s.state) throw Error(ErrorCode::Convergence, s.error);
    r.residual = s.state->residual;
    if (!s.converged) {
      r.flag = RowFlag::Unconverged;
      r.message = s.error;
    }
    return *s.state;
  };

  const bool want_analytic = cfg.method != Method::Numeric;
  const bool want_numeric = cfg.method != Method::Analytic;
  const bool thermal = cfg.bath == PhononBath::Thermal;

  for (Observable o : cfg.observables) {
    switch (o) {
      case Observable::Nb:
        if (want_analytic && thermal) emit(o, Method::Analytic, [&](SweepRow&) { return phonon_number_analytic(p, tau); });
        if (want_numeric) {
          emit(o, Method::Numeric, [&](SweepRow& r) {
            const SteadyState& s = numeric_state(solver.phonon(), r);
            return mean_number(s.rho, s.frame_shift);
          });
        }
        break;
      case Observable::G2b:
        if (want_analytic && thermal) emit(o, Method::Analytic, [&](SweepRow&) { return g2_phonon_analytic(p, tau); });
        if (want_numeric) {
          emit(o, Method::Numeric, [&](SweepRow& r) {
            const SteadyState& s = numeric_state(solver.phonon(), r);
            return g2_numeric(s.rho, s.frame_shift);
          });
        }
        break;
      case Observable::Wigner:
        if (want_analytic) emit(o, Method::Analytic, [&](SweepRow&) { return phonon_stationary_mean(p, tau); });
        if (want_numeric) {
          emit(o, Method::Numeric, [&](SweepRow& r) {
            const SteadyState& s = numeric_state(solver.phonon(), r);
            return wigner_peak(s.rho, s.frame_shift).location.real();
          });
        }
        break;
      case Observable::Na:
      case Observable::G2a: {
        const bool g2 = o == Observable::G2a;
        auto moments = [g2](const std::vector<double>& probs) {
          double n1 = 0.0, n2 = 0.0;
          for (std::size_t n = 0; n < probs.size(); ++n) {
            n1 += n * probs[n];
            n2 += n * (n - 1.0) * probs[n];
          }
          if (!g2) return n1;
          if (n1 < kVacuumThreshold) fail(ErrorCode::UndefinedStatistics, "g2 is undefined: <n> below 1e-12");
          return n2 / (n1 * n1);
        };
        if (want_analytic) emit(o, Method::Analytic, [&](SweepRow&) { return moments(solver.distribution()); });
        if (want_numeric) {
          emit(o, Method::Numeric, [&](SweepRow& r) {
            const SteadyState& s = numeric_state(solver.photon(), r);
            return g2 ? g2_numeric(s.rho) : mean_number(s.rho);
          });
        }
        break;
      }
      case Observable::Roots:
        if (want_analytic) {
          const TrappingRoots roots = trapping_roots(p, cfg.root_min, cfg.root_max);
          for (std::size_t k = 0; k < roots.thetas.size(); ++k) {
            SweepRow r = base("root_" + std::to_string(k + 1), Method::Analytic);
            r.result = roots.thetas[k];
            rows.push_back(std::move(r));
          }
        }
        break;
    }
  }
  return rows;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, std::max(n, 1));
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next = n;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<SweepRow>> per_point(cfg.points);
  parallel_for(cfg.points, cfg.jobs, [&](int i) { per_point[i] = evaluate_point(cfg, cfg.grid_value(i)); });
  SweepResult out;
  out.config = cfg;
  for (auto& rows : per_point) {
    for (auto& r : rows) out.rows.push_back(std::move(r));
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::size_t SweepResult::unconverged() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.flag == RowFlag::Unconverged; }));
}

std::string SweepResult::csv() const {
  std::ostringstream os;
  os << "# hmaser " << HMASER_VERSION << '\n' << kConfigBegin << '\n';
  std::istringstream cfg_text(config.to_config().dump());
  for (std::string line; std::getline(cfg_text, line);) os << (line.empty() ? "#" : "# " + line) << '\n';
  os << kConfigEnd << '\n';
  os << "axis,value,observable,method,result,residual,cav_dim,mech_dim,flag\n";
  const char* axis = to_string(config.axis);
  for (const SweepRow& r : rows) {
    os << axis << ',' << format_double(r.value) << ',' << r.observable << ',' << to_string(r.method) << ','
       << format_double(r.result) << ',' << format_double(r.residual) << ',' << r.cav_dim << ',' << r.mech_dim << ','
       << to_string(r.flag) << '\n';
  }
  return os.str();
}

void SweepResult::write_csv(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out << csv();
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

void SweepResult::write_plots(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::map<std::string, LinePlot> plots;
  std::vector<std::string> order;
  for (const SweepRow& r : rows) {
    const bool root = r.observable.rfind("root_", 0) == 0;
    const std::string key = root ? "roots" : r.observable;
    auto [it, inserted] = plots.try_emplace(key);
    if (inserted) {
      order.push_back(key);
      it->second.title = config.name + ": " + key;
      it->second.xlabel = to_string(config.axis);
      it->second.ylabel = key;
    }
    const std::string label = root ? r.observable : std::string(to_string(r.method));
    auto& series = it->second.series;
    auto s = std::find_if(series.begin(), series.end(), [&](const LineSeries& l) { return l.label == label; });
    if (s == series.end()) {
      series.push_back({label, {}, {}, r.method == Method::Numeric, r.method == Method::Numeric});
      s = series.end() - 1;
    }
    s->x.push_back(r.value);
    s->y.push_back(r.result);
  }
  for (const auto& key : order) write_svg(plots[key], dir / (config.name + "_" + key + ".svg"));
}

}  // namespace hmaser
