// Copyright 2026 The otplint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Flat `key = value` configuration text shared by generator specs, server
// configs and analysis configs. Lines starting with '#' are comments.

#ifndef OTPLINT_KV_CONFIG_HPP_
#define OTPLINT_KV_CONFIG_HPP_

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "otplint/error.hpp"

namespace otplint {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

/// Parses an unsigned integer written in decimal or with a 0x prefix.
inline std::uint64_t parse_uint(std::string_view text) {
  text = trim(text);
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::config, "not an unsigned integer: '" + std::string(text) + "'");
  return value;
}

inline std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  bool negative = !text.empty() && text.front() == '-';
  if (negative || (!text.empty() && text.front() == '+')) text.remove_prefix(1);
  std::uint64_t magnitude = parse_uint(text);
  if (magnitude > static_cast<std::uint64_t>(INT64_MAX))
    throw Error(Errc::config, "integer out of range: '" + std::string(text) + "'");
  auto v = static_cast<std::int64_t>(magnitude);
  return negative ? -v : v;
}

inline std::vector<std::string> split_list(std::string_view text, char sep = ',') {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// OTPLINT_SEED, when set, replaces every rng seed.
inline std::uint64_t env_seed_or(std::uint64_t fallback) {
  const char* v = std::getenv("OTPLINT_SEED");
  if (!v || !*v) return fallback;
  return parse_uint(v);
}

class KvConfig {
 public:
  static KvConfig parse(std::string_view text) {
    KvConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto body = trim(line);
      if (body.empty() || body.front() == '#') continue;
      auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw Error(Errc::config, "line " + std::to_string(lineno) + ": expected key = value");
      auto key = std::string(trim(body.substr(0, eq)));
      if (key.empty())
        throw Error(Errc::config, "line " + std::to_string(lineno) + ": empty key");
      cfg.set(key, std::string(trim(body.substr(eq + 1))));
    }
    return cfg;
  }

  static KvConfig load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::config, "cannot open config file " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse(buf.str());
  }

  void set(const std::string& key, std::string value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = std::move(value);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string get_or(const std::string& key, std::string fallback) const {
    auto v = get(key);
    return v ? *v : fallback;
  }

  std::optional<std::uint64_t> get_uint(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse_uint(*v);
  }

  std::optional<std::int64_t> get_int(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse_int(*v);
  }

  const std::vector<std::string>& keys() const { return order_; }

  std::string dump() const {
    std::string out;
    for (const auto& k : order_) out += k + " = " + values_.at(k) + "\n";
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
};

}  // namespace otplint

#endif  // OTPLINT_KV_CONFIG_HPP_
