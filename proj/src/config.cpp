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

#include "hmaser/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>

namespace hmaser {

namespace pt = boost::property_tree;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  try {
    pt::read_ini(in, c.tree_);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::InvalidArgument, std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::string first;
  std::getline(in, first);
  std::ostringstream body;
  if (first.rfind("# hmaser", 0) == 0) {
    bool inside = false;
    for (std::string line; std::getline(in, line);) {
      if (line == kConfigBegin) inside = true;
      else if (line == kConfigEnd) break;
      else if (inside && line.rfind("# ", 0) == 0) body << line.substr(2) << '\n';
      else if (inside && line == "#") body << '\n';
    }
    if (!inside) fail(ErrorCode::InvalidArgument, path.string() + " has no config block");
  } else {
    body << first << '\n' << in.rdbuf();
  }
  return parse(body.str());
}

std::string Config::dump() const {
  std::ostringstream out;
  pt::write_ini(out, tree_);
  return out.str();
}

bool Config::has(const std::string& key) const { return tree_.get_child_optional(key).has_value(); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto v = tree_.get_optional<std::string>(key);
  if (!v) return fallback;
  std::string s = boost::algorithm::trim_copy(*v);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

double Config::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key, "");
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(ErrorCode::InvalidArgument, "config: " + key + " = '" + s + "' is not a number");
  }
  return v;
}

int Config::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = get_double(key, 0.0);
  if (v != std::floor(v) || std::abs(v) > 1e9) fail(ErrorCode::InvalidArgument, "config: " + key + " must be an integer");
  return static_cast<int>(v);
}

std::vector<std::string> Config::get_list(const std::string& key, const std::vector<std::string>& fallback) const {
  if (!has(key)) return fallback;
  return split_list(get_string(key, ""));
}

void Config::set(const std::string& key, const std::string& value) { tree_.put(key, value); }

void Config::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [section, child] : tree_) {
    if (child.empty() && !child.data().empty()) fail(ErrorCode::InvalidArgument, "config: key '" + section + "' outside a [section]");
    for (const auto& [key, value] : child) {
      const std::string full = section + "." + key;
      if (std::find(allowed.begin(), allowed.end(), full) == allowed.end()) {
        fail(ErrorCode::InvalidArgument, "config: unknown key '" + full + "'");
      }
    }
  }
}

}  // namespace hmaser
