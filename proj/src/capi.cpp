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

#include "hmaser/hmaser.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "hmaser/figures.hpp"
#include "hmaser/validate.hpp"

struct hmaser_params {
  hmaser::SystemParams p;
};

struct hmaser_sweep {
  hmaser::SweepConfig cfg;
  hmaser::Config raw;
};

struct hmaser_result {
  hmaser::SweepResult res;
};

struct hmaser_report {
  hmaser::ValidationReport report;
  std::string text;
};

namespace {

thread_local std::string last_error;

struct BufferTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

hmaser_status map_code(hmaser::ErrorCode c) {
  using hmaser::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidDimension: return HMASER_ERR_INVALID_DIMENSION;
    case ErrorCode::InvalidArgument: return HMASER_ERR_INVALID_ARGUMENT;
    case ErrorCode::NonFinite: return HMASER_ERR_NON_FINITE;
    case ErrorCode::SingularFunction: return HMASER_ERR_SINGULAR_FUNCTION;
    case ErrorCode::InvalidState: return HMASER_ERR_INVALID_STATE;
    case ErrorCode::UndefinedStatistics: return HMASER_ERR_UNDEFINED_STATISTICS;
    case ErrorCode::DegenerateSteadyState: return HMASER_ERR_DEGENERATE_STEADY_STATE;
    case ErrorCode::Convergence: return HMASER_ERR_CONVERGENCE;
    case ErrorCode::Truncation: return HMASER_ERR_TRUNCATION;
    case ErrorCode::Stiffness: return HMASER_ERR_STIFFNESS;
    case ErrorCode::UnknownTag: return HMASER_ERR_UNKNOWN_TAG;
    case ErrorCode::Io: return HMASER_ERR_IO;
  }
  return HMASER_ERR_INTERNAL;
}

template <typename F>
hmaser_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return HMASER_OK;
  } catch (const hmaser::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const BufferTooSmall& e) {
    last_error = e.what();
    return HMASER_ERR_BUFFER_TOO_SMALL;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return HMASER_ERR_IO;
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return HMASER_ERR_INTERNAL;
}

void require(const void* ptr, const char* what) {
  if (!ptr) hmaser::fail(hmaser::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

void copy_out(const std::vector<double>& v, double* out, size_t capacity, size_t* count) {
  require(count, "count");
  *count = v.size();
  if (v.size() > capacity) {
    throw BufferTooSmall("output buffer holds " + std::to_string(capacity) + " values, " +
                         std::to_string(v.size()) + " needed");
  }
  if (!v.empty()) require(out, "out");
  std::copy(v.begin(), v.end(), out);
}

hmaser::RunOptions run_options(const hmaser_run_options* o) {
  hmaser::RunOptions r;
  if (!o) return r;
  if (o->out_dir) r.out_dir = o->out_dir;
  r.jobs = o->jobs;
  if (o->cav_dim) r.cav_dim = o->cav_dim;
  if (o->mech_dim) r.mech_dim = o->mech_dim;
  switch (o->method) {
    case HMASER_METHOD_ANALYTIC: r.method = hmaser::Method::Analytic; break;
    case HMASER_METHOD_NUMERIC: r.method = hmaser::Method::Numeric; break;
    case HMASER_METHOD_BOTH: r.method = hmaser::Method::Both; break;
    case HMASER_METHOD_DEFAULT: break;
  }
  return r;
}

double tail(const hmaser::DensityMatrix& rho) {
  const auto n = rho.dim();
  double t = 0.0;
  for (Eigen::Index i = std::max<Eigen::Index>(0, n - 2); i < n; ++i) t += rho.matrix()(i, i).real();
  return t;
}

void fill(const hmaser::SteadyState& ss, hmaser_steady_observables* out) {
  out->mean_number = hmaser::mean_number(ss.rho, ss.frame_shift);
  try {
    out->g2 = hmaser::g2_numeric(ss.rho, ss.frame_shift);
  } catch (const hmaser::Error&) {
    out->g2 = std::nan("");
  }
  out->residual = ss.residual;
  out->frame_shift = ss.frame_shift.real();
  out->tail_population = tail(ss.rho);
}

}  // namespace

extern "C" {

HMASER_API const char* hmaser_version(void) { return HMASER_VERSION; }

HMASER_API const char* hmaser_last_error(void) { return last_error.c_str(); }

HMASER_API const char* hmaser_status_string(hmaser_status status) {
  switch (status) {
    case HMASER_OK: return "ok";
    case HMASER_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HMASER_ERR_INVALID_DIMENSION: return "invalid dimension";
    case HMASER_ERR_NON_FINITE: return "non-finite value";
    case HMASER_ERR_SINGULAR_FUNCTION: return "singular function";
    case HMASER_ERR_INVALID_STATE: return "invalid state";
    case HMASER_ERR_UNDEFINED_STATISTICS: return "undefined statistics";
    case HMASER_ERR_DEGENERATE_STEADY_STATE: return "degenerate steady state";
    case HMASER_ERR_CONVERGENCE: return "convergence failure";
    case HMASER_ERR_TRUNCATION: return "truncation error";
    case HMASER_ERR_STIFFNESS: return "stiffness";
    case HMASER_ERR_UNKNOWN_TAG: return "unknown tag";
    case HMASER_ERR_IO: return "i/o error";
    case HMASER_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case HMASER_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

HMASER_API hmaser_status hmaser_params_create(hmaser_params** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hmaser_params{};
  });
}

HMASER_API void hmaser_params_destroy(hmaser_params* params) { delete params; }

HMASER_API hmaser_status hmaser_params_set(hmaser_params* params, const char* key, double value) {
  return guarded([&] {
    require(params, "params");
    require(key, "key");
    hmaser::SystemParams p = params->p;
    hmaser::set_param(p, key, value);
    p.validate();
    params->p = p;
  });
}

HMASER_API hmaser_status hmaser_params_get(const hmaser_params* params, const char* key, double* value) {
  return guarded([&] {
    require(params, "params");
    require(key, "key");
    require(value, "value");
    *value = hmaser::get_param(params->p, key);
  });
}

HMASER_API hmaser_status hmaser_gain_coefficients(const hmaser_params* params, double theta, double* a, double* b) {
  return guarded([&] {
    require(params, "params");
    require(a, "a");
    require(b, "b");
    const auto gc = hmaser::gain_coefficients(params->p, hmaser::PumpParameter{theta}.tau(params->p));
    *a = gc.a_coeff;
    *b = gc.b_coeff;
  });
}

HMASER_API hmaser_status hmaser_trapping_roots(const hmaser_params* params, double theta_min, double theta_max,
                                               double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    require(params, "params");
    copy_out(hmaser::trapping_roots(params->p, theta_min, theta_max).thetas, out, capacity, count);
  });
}

HMASER_API hmaser_status hmaser_photon_trapping_thetas(const hmaser_params* params, int k, int m_max, double* out,
                                                       size_t capacity, size_t* count) {
  return guarded([&] {
    require(params, "params");
    if (k < 0) hmaser::fail(hmaser::ErrorCode::InvalidArgument, "k must be >= 0");
    std::vector<double> v;
    for (const auto& t : hmaser::photon_trapping_thetas(params->p, k, m_max)) {
      if (t.k == k) v.push_back(t.theta);
    }
    copy_out(v, out, capacity, count);
  });
}

HMASER_API hmaser_status hmaser_phonon_number_analytic(const hmaser_params* params, double theta, double* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    *out = hmaser::phonon_number_analytic(params->p, hmaser::PumpParameter{theta}.tau(params->p));
  });
}

HMASER_API hmaser_status hmaser_g2_phonon_analytic(const hmaser_params* params, double theta, double* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    *out = hmaser::g2_phonon_analytic(params->p, hmaser::PumpParameter{theta}.tau(params->p));
  });
}

HMASER_API hmaser_status hmaser_photon_distribution(const hmaser_params* params, double theta, int n_max,
                                                    double* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    const auto v = hmaser::photon_distribution_db(params->p, hmaser::PumpParameter{theta}, n_max);
    std::copy(v.begin(), v.end(), out);
  });
}

HMASER_API hmaser_status hmaser_phonon_steady_state(const hmaser_params* params, double theta, int mech_dim,
                                                    hmaser_bath bath, hmaser_steady_observables* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    const double tau = hmaser::PumpParameter{theta}.tau(params->p);
    const auto kind = bath == HMASER_BATH_SQUEEZED ? hmaser::PhononBath::Squeezed : hmaser::PhononBath::Thermal;
    fill(hmaser::phonon_steady_state(params->p, tau, mech_dim, kind), out);
  });
}

HMASER_API hmaser_status hmaser_photon_steady_state(const hmaser_params* params, double theta, int cav_dim,
                                                    hmaser_steady_observables* out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    fill(hmaser::steady_state(hmaser::photon_thermal_me(params->p, hmaser::PumpParameter{theta}, cav_dim)), out);
  });
}

HMASER_API hmaser_status hmaser_sweep_load(const char* path, hmaser_sweep** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    hmaser::Config raw = hmaser::Config::load(path);
    hmaser::SweepConfig cfg = hmaser::SweepConfig::from_config(raw);
    *out = new hmaser_sweep{std::move(cfg), std::move(raw)};
  });
}

HMASER_API hmaser_status hmaser_sweep_set(hmaser_sweep* sweep, const char* key, const char* value) {
  return guarded([&] {
    require(sweep, "sweep");
    require(key, "key");
    require(value, "value");
    hmaser::Config raw = sweep->raw;
    raw.set(key, std::string(value));
    hmaser::SweepConfig cfg = hmaser::SweepConfig::from_config(raw);
    sweep->raw = std::move(raw);
    sweep->cfg = std::move(cfg);
  });
}

HMASER_API hmaser_status hmaser_sweep_apply_options(hmaser_sweep* sweep, const hmaser_run_options* options) {
  return guarded([&] {
    require(sweep, "sweep");
    require(options, "options");
    const hmaser::RunOptions o = run_options(options);
    hmaser::SweepConfig cfg = sweep->cfg;
    if (options->out_dir) cfg.out_dir = o.out_dir.string();
    if (options->jobs) cfg.jobs = o.jobs;
    if (o.cav_dim) cfg.cav_dim = *o.cav_dim;
    if (o.mech_dim) cfg.mech_dim = *o.mech_dim;
    if (o.method) cfg.method = *o.method;
    cfg.validate();
    sweep->cfg = std::move(cfg);
  });
}

HMASER_API hmaser_status hmaser_sweep_run(const hmaser_sweep* sweep, hmaser_result** out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    *out = new hmaser_result{hmaser::run_sweep(sweep->cfg)};
  });
}

HMASER_API hmaser_status hmaser_sweep_roots(const hmaser_sweep* sweep, hmaser_result** out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    hmaser::SweepConfig cfg = sweep->cfg;
    cfg.observables = {hmaser::Observable::Roots};
    cfg.method = hmaser::Method::Analytic;
    cfg.name += "_roots";
    // Roots do not depend on the pump parameter; list them once.
    if (cfg.axis == hmaser::SweepAxis::Theta) {
      cfg.points = 1;
      cfg.max = cfg.min;
    }
    hmaser::SweepResult res = hmaser::run_sweep(cfg);
    // Photon vacuum-trapping values follow the phonon roots of each grid value.
    std::vector<hmaser::SweepRow> rows;
    for (int i = 0; i < cfg.points; ++i) {
      const double v = cfg.grid_value(i);
      for (const auto& r : res.rows) {
        if (r.value == v) rows.push_back(r);
      }
      const hmaser::SystemParams p = cfg.params_at(v, nullptr);
      for (const auto& t : hmaser::photon_trapping_thetas(p, 0)) {
        if (t.theta < cfg.root_min || t.theta > cfg.root_max) continue;
        hmaser::SweepRow r;
        r.value = v;
        r.observable = "photon_" + std::to_string(t.m);
        r.result = t.theta;
        r.cav_dim = cfg.cav_dim;
        r.mech_dim = cfg.mech_dim;
        rows.push_back(std::move(r));
      }
    }
    res.rows = std::move(rows);
    *out = new hmaser_result{std::move(res)};
  });
}

HMASER_API void hmaser_sweep_destroy(hmaser_sweep* sweep) { delete sweep; }

HMASER_API size_t hmaser_result_rows(const hmaser_result* result) { return result ? result->res.rows.size() : 0; }

HMASER_API size_t hmaser_result_unconverged(const hmaser_result* result) {
  return result ? result->res.unconverged() : 0;
}

HMASER_API double hmaser_result_wall_seconds(const hmaser_result* result) {
  return result ? result->res.wall_seconds : 0.0;
}

HMASER_API hmaser_status hmaser_result_write(const hmaser_result* result, char* written, size_t capacity) {
  return guarded([&] {
    require(result, "result");
    const auto& cfg = result->res.config;
    const std::filesystem::path dir = cfg.out_dir;
    const auto path = dir / (cfg.name + ".csv");
    const std::string p = path.string();
    if (written && p.size() + 1 > capacity) {
      throw BufferTooSmall("path buffer too small");
    }
    result->res.write_csv(path);
    result->res.write_plots(dir);
    if (written) std::memcpy(written, p.c_str(), p.size() + 1);
  });
}

HMASER_API void hmaser_result_destroy(hmaser_result* result) { delete result; }

HMASER_API size_t hmaser_figure_tag_count(void) { return hmaser::figure_tags().size(); }

HMASER_API const char* hmaser_figure_tag(size_t index) {
  const auto& tags = hmaser::figure_tags();
  return index < tags.size() ? tags[index].c_str() : nullptr;
}

HMASER_API hmaser_status hmaser_figure(const char* tag, const hmaser_run_options* options, size_t* files_written,
                                       size_t* unconverged) {
  return guarded([&] {
    require(tag, "tag");
    const auto out = hmaser::reproduce_figure(tag, run_options(options));
    if (files_written) *files_written = out.files.size();
    if (unconverged) *unconverged = out.unconverged;
  });
}

HMASER_API hmaser_status hmaser_validate(const hmaser_params* params, const char* checks, hmaser_report** out) {
  return guarded([&] {
    require(out, "out");
    const hmaser::SystemParams p = params ? params->p : hmaser::SystemParams{};
    std::optional<std::vector<std::string>> subset;
    if (checks) subset = hmaser::split_list(checks);
    auto report = hmaser::run_validation(p, subset);
    std::string text = report.text();
    *out = new hmaser_report{std::move(report), std::move(text)};
  });
}

HMASER_API size_t hmaser_report_count(const hmaser_report* report) {
  return report ? report->report.checks.size() : 0;
}

HMASER_API int hmaser_report_passed(const hmaser_report* report) { return report && report->report.passed(); }

HMASER_API const char* hmaser_report_text(const hmaser_report* report) { return report ? report->text.c_str() : ""; }

HMASER_API hmaser_status hmaser_report_check(const hmaser_report* report, size_t index, const char** name,
                                             int* passed, double* measured, double* threshold) {
  return guarded([&] {
    require(report, "report");
    if (index >= report->report.checks.size()) hmaser::fail(hmaser::ErrorCode::InvalidArgument, "index out of range");
    const auto& c = report->report.checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed;
    if (measured) *measured = c.measured;
    if (threshold) *threshold = c.threshold;
  });
}

HMASER_API void hmaser_report_destroy(hmaser_report* report) { delete report; }

}  // extern "C"
