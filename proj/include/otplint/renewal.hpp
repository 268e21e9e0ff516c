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

// When a server replaces its current code, and the probe matrix used to
// find out from the outside.

#ifndef OTPLINT_RENEWAL_HPP_
#define OTPLINT_RENEWAL_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otplint/error.hpp"
#include "otplint/kv_config.hpp"

namespace otplint {

struct RenewalPolicy {
  enum class Kind { per_request, on_consume, after_duration };
  Kind kind = Kind::per_request;
  std::int64_t seconds = 0;  // after_duration only

  static RenewalPolicy per_request() { return {Kind::per_request, 0}; }
  static RenewalPolicy on_consume() { return {Kind::on_consume, 0}; }
  static RenewalPolicy after_duration(std::int64_t s) {
    if (s <= 0) throw Error(Errc::config, "renewal duration must be positive");
    return {Kind::after_duration, s};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::per_request: return "per_request";
      case Kind::on_consume: return "on_consume";
      case Kind::after_duration: return "after_duration(" + std::to_string(seconds) + ")";
    }
    return "?";
  }

  bool operator==(const RenewalPolicy&) const = default;
};

/// Accepts "per_request", "on_consume", "after_duration" (with `seconds`)
/// or "after_duration(N)".
inline RenewalPolicy parse_renewal(std::string_view text, std::optional<std::int64_t> seconds = {}) {
  text = trim(text);
  if (text == "per_request") return RenewalPolicy::per_request();
  if (text == "on_consume") return RenewalPolicy::on_consume();
  if (text.rfind("after_duration", 0) == 0) {
    auto rest = trim(text.substr(14));
    if (!rest.empty()) {
      if (rest.front() != '(' || rest.back() != ')')
        throw Error(Errc::config, "expected after_duration(seconds)");
      return RenewalPolicy::after_duration(parse_int(rest.substr(1, rest.size() - 2)));
    }
    if (!seconds) throw Error(Errc::config, "after_duration needs a duration");
    return RenewalPolicy::after_duration(*seconds);
  }
  throw Error(Errc::config, "unknown renewal policy '" + std::string(text) + "'");
}

inline constexpr std::array<std::int64_t, 3> kProbeGaps{120, 1200, 3600};
inline constexpr std::size_t kProbeRequestsPerCell = 6;

enum class ProbeArm { no_consume = 0, consume = 1 };

struct ProbeCell {
  std::vector<std::string> codes;
  bool complete = false;  // all kProbeRequestsPerCell codes collected
};

/// cells[gap][arm]: gap indexes kProbeGaps, arm indexes ProbeArm.
struct RenewalProbeResult {
  std::array<std::array<ProbeCell, 2>, kProbeGaps.size()> cells;

  ProbeCell& at(std::size_t gap, ProbeArm arm) { return cells[gap][static_cast<std::size_t>(arm)]; }
  const ProbeCell& at(std::size_t gap, ProbeArm arm) const {
    return cells[gap][static_cast<std::size_t>(arm)];
  }

  bool complete() const {
    for (const auto& row : cells)
      for (const auto& cell : row)
        if (!cell.complete) return false;
    return true;
  }

  std::string describe() const {
    std::string out;
    for (std::size_t g = 0; g < kProbeGaps.size(); ++g)
      for (auto arm : {ProbeArm::no_consume, ProbeArm::consume}) {
        out += "gap=" + std::to_string(kProbeGaps[g]) +
               (arm == ProbeArm::consume ? " consume:" : " no-consume:");
        for (const auto& c : at(g, arm).codes) out += " " + c;
        out += at(g, arm).complete ? "\n" : " (incomplete)\n";
      }
    return out;
  }
};

}  // namespace otplint

#endif  // OTPLINT_RENEWAL_HPP_
