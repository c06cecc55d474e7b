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

// Declarative run configuration: INI-style `key = value` lines grouped in
// `[section]` tables. Lists are comma separated.

#include <filesystem>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "hmaser/errors.hpp"

namespace hmaser {

/// Shortest decimal that parses back to the same double; '.' separator.
std::string format_double(double v);

class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  /// Accepts a config file or a CSV produced by a sweep (its metadata block).
  static Config load(const std::filesystem::path& path);

  std::string dump() const;

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback) const;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value) { set(key, format_double(value)); }

  /// Throws InvalidArgument naming the first key outside `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

 private:
  boost::property_tree::ptree tree_;
};

inline constexpr const char* kConfigBegin = "# --- config ---";
inline constexpr const char* kConfigEnd = "# --- end config ---";

std::vector<std::string> split_list(const std::string& s);

}  // namespace hmaser
