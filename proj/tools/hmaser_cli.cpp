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

// Command-line front end. Talks to the library only through hmaser.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmaser/hmaser.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kConvergence = 2, kValidation = 3 };

struct Options {
  std::string out_dir = ".";
  int jobs = 0;
  std::string dims;
  std::string method;
  std::vector<std::string> params;
};

int status_exit(hmaser_status s) {
  switch (s) {
    case HMASER_OK: return kOk;
    case HMASER_ERR_CONVERGENCE:
    case HMASER_ERR_TRUNCATION:
    case HMASER_ERR_STIFFNESS:
    case HMASER_ERR_DEGENERATE_STEADY_STATE: return kConvergence;
    default: return kUsage;
  }
}

int report(hmaser_status s, const char* context) {
  std::cerr << "hmaser: " << context << ": " << hmaser_status_string(s) << ": " << hmaser_last_error() << '\n';
  return status_exit(s);
}

// Returns false with a message on malformed input.
bool build_run_options(const Options& o, hmaser_run_options& r, std::string& error) {
  r = hmaser_run_options{};
  r.out_dir = o.out_dir.c_str();
  r.jobs = o.jobs;
  if (!o.dims.empty()) {
    const auto comma = o.dims.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used = 0;
      r.cav_dim = std::stoi(o.dims.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing text");
      const std::string rest = o.dims.substr(comma + 1);
      r.mech_dim = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      error = "--dims expects Nc,Nm (two integers)";
      return false;
    }
    if (r.cav_dim < 2 || r.mech_dim < 2) {
      error = "--dims values must be >= 2";
      return false;
    }
  }
  static const std::map<std::string, hmaser_method> methods{
      {"analytic", HMASER_METHOD_ANALYTIC}, {"numeric", HMASER_METHOD_NUMERIC}, {"both", HMASER_METHOD_BOTH}};
  if (!o.method.empty()) r.method = methods.at(o.method);
  return true;
}

bool split_assignment(const std::string& kv, std::string& key, std::string& value) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  key = kv.substr(0, eq);
  value = kv.substr(eq + 1);
  return true;
}

void write_timing(const std::string& csv_path, double seconds) {
  std::string path = csv_path;
  if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0) path.resize(path.size() - 4);
  std::ofstream out(path + ".timing.txt");
  out << "wall_seconds = " << seconds << '\n' << "version = " << hmaser_version() << '\n';
}

struct SweepHandle {
  hmaser_sweep* ptr = nullptr;
  ~SweepHandle() { hmaser_sweep_destroy(ptr); }
};

struct ResultHandle {
  hmaser_result* ptr = nullptr;
  ~ResultHandle() { hmaser_result_destroy(ptr); }
};

// Loads a config and applies --param, --dims, --method, --jobs and --out.
int load_sweep(const std::string& path, const Options& o, bool out_given, SweepHandle& sweep) {
  hmaser_status s = hmaser_sweep_load(path.c_str(), &sweep.ptr);
  if (s != HMASER_OK) return report(s, path.c_str());
  for (const auto& kv : o.params) {
    std::string key, value;
    if (!split_assignment(kv, key, value)) {
      std::cerr << "hmaser: --param expects key=value, got '" << kv << "'\n";
      return kUsage;
    }
    s = hmaser_sweep_set(sweep.ptr, ("params." + key).c_str(), value.c_str());
    if (s != HMASER_OK) return report(s, "--param");
  }
  hmaser_run_options ro;
  std::string err;
  if (!build_run_options(o, ro, err)) {
    std::cerr << "hmaser: " << err << '\n';
    return kUsage;
  }
  if (!out_given) ro.out_dir = nullptr;
  s = hmaser_sweep_apply_options(sweep.ptr, &ro);
  if (s != HMASER_OK) return report(s, "options");
  return kOk;
}

int finish_result(const ResultHandle& result) {
  char path[4096];
  const hmaser_status s = hmaser_result_write(result.ptr, path, sizeof path);
  if (s != HMASER_OK) return report(s, "write");
  const double secs = hmaser_result_wall_seconds(result.ptr);
  write_timing(path, secs);
  const std::size_t bad = hmaser_result_unconverged(result.ptr);
  std::cout << "wrote " << path << " (" << hmaser_result_rows(result.ptr) << " rows, " << secs << " s)\n";
  if (bad > 0) {
    std::cerr << "hmaser: " << bad << " rows did not converge (flag column)\n";
    return kConvergence;
  }
  return kOk;
}

int run_sweep_cmd(const std::string& config, const Options& o, bool out_given) {
  SweepHandle sweep;
  if (int rc = load_sweep(config, o, out_given, sweep)) return rc;
  ResultHandle result;
  const hmaser_status s = hmaser_sweep_run(sweep.ptr, &result.ptr);
  if (s != HMASER_OK) return report(s, "sweep");
  return finish_result(result);
}

int run_roots_cmd(const std::string& config, const Options& o, bool out_given) {
  SweepHandle sweep;
  if (int rc = load_sweep(config, o, out_given, sweep)) return rc;
  ResultHandle result;
  const hmaser_status s = hmaser_sweep_roots(sweep.ptr, &result.ptr);
  if (s != HMASER_OK) return report(s, "roots");
  return finish_result(result);
}

int run_figure_cmd(const std::string& tag, const Options& o) {
  hmaser_run_options ro;
  std::string err;
  if (!build_run_options(o, ro, err)) {
    std::cerr << "hmaser: " << err << '\n';
    return kUsage;
  }
  std::size_t files = 0, bad = 0;
  const hmaser_status s = hmaser_figure(tag.c_str(), &ro, &files, &bad);
  if (s == HMASER_ERR_UNKNOWN_TAG) {
    std::cerr << "hmaser: unknown figure tag '" << tag << "'; known tags:";
    for (std::size_t i = 0; i < hmaser_figure_tag_count(); ++i) std::cerr << ' ' << hmaser_figure_tag(i);
    std::cerr << '\n';
    return kUsage;
  }
  if (s != HMASER_OK) return report(s, tag.c_str());
  std::cout << tag << ": wrote " << files << " files to " << o.out_dir << '\n';
  if (bad > 0) {
    std::cerr << "hmaser: " << bad << " rows did not converge (flag column)\n";
    return kConvergence;
  }
  return kOk;
}

int run_validate_cmd(const Options& o, const std::optional<std::string>& checks) {
  hmaser_params* params = nullptr;
  hmaser_status s = hmaser_params_create(&params);
  if (s != HMASER_OK) return report(s, "params");
  struct Guard {
    hmaser_params* p;
    ~Guard() { hmaser_params_destroy(p); }
  } guard{params};
  for (const auto& kv : o.params) {
    std::string key, value;
    double v = 0.0;
    if (!split_assignment(kv, key, value)) {
      std::cerr << "hmaser: --param expects key=value, got '" << kv << "'\n";
      return kUsage;
    }
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      std::cerr << "hmaser: --param " << key << " needs a number\n";
      return kUsage;
    }
    s = hmaser_params_set(params, key.c_str(), v);
    if (s != HMASER_OK) return report(s, "--param");
  }
  hmaser_report* rep = nullptr;
  s = hmaser_validate(params, checks ? checks->c_str() : nullptr, &rep);
  if (s != HMASER_OK) return report(s, "validate");
  std::cout << hmaser_report_text(rep);
  const bool ok = hmaser_report_passed(rep);
  hmaser_report_destroy(rep);
  return ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid micromaser toolkit: sweeps, figures, trapping roots and oracle validation"};
  app.set_version_flag("--version", std::string(hmaser_version()));
  app.require_subcommand(1);

  Options o;
  auto add_common = [&o](CLI::App* cmd, bool with_dims) {
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--jobs", o.jobs, "Worker threads (0 = logical cores)")->check(CLI::NonNegativeNumber);
    if (with_dims) {
      cmd->add_option("--dims", o.dims, "Truncation Nc,Nm (photon ME cavity levels, phonon ME mirror levels)");
      cmd->add_option("--method", o.method, "analytic | numeric | both")
          ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    }
  };

  std::string config, tag;
  auto* sweep = app.add_subcommand("sweep", "Run the parameter sweep described by a config file");
  sweep->add_option("config", config, "Config file (or a CSV written by a previous sweep)")->required();
  add_common(sweep, true);
  sweep->add_option("--param", o.params, "Override a physical parameter, key=value");

  auto* figure = app.add_subcommand("figure", "Reproduce one figure panel set (fig2a .. fig6)");
  figure->add_option("tag", tag, "Figure tag")->required();
  add_common(figure, true);

  auto* roots = app.add_subcommand("roots", "Phonon and photon trapping values for a config");
  roots->add_option("config", config, "Config file")->required();
  add_common(roots, true);
  roots->add_option("--param", o.params, "Override a physical parameter, key=value");

  std::optional<std::string> checks;
  auto* validate = app.add_subcommand("validate", "Run the oracle-equivalence battery");
  validate->add_option("--checks", checks, "Comma-separated subset of checks (empty for none)");
  validate->add_option("--param", o.params, "Override a physical parameter, key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto given = [](CLI::App* cmd, const char* name) { return cmd->count(name) > 0; };
  if (*sweep) return run_sweep_cmd(config, o, given(sweep, "--out"));
  if (*roots) return run_roots_cmd(config, o, given(roots, "--out"));
  if (*figure) return run_figure_cmd(tag, o);
  if (*validate) return run_validate_cmd(o, checks);
  return kUsage;
}
