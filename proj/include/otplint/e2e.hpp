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

// Staged end-to-end detection against the bundled server: collect a few
// codes, analyze, and collect more only while nothing has been found.

#ifndef OTPLINT_E2E_HPP_
#define OTPLINT_E2E_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "otplint/collector.hpp"
#include "otplint/harness.hpp"
#include "otplint/rules.hpp"

namespace otplint {

/// A named server profile and the single finding it should produce.
struct E2eProfile {
  std::string name;
  ServerConfig server;
  std::optional<Rule> expected;  // nullopt: no finding

  /// True iff `report` holds exactly the expected finding (none for a
  /// secure server) with the profile's parameters.
  bool matches(const AnalysisReport& report) const {
    std::vector<const Violation*> confirmed;
    for (const auto& v : report.violations)
      if (!v.evidence.suspected) confirmed.push_back(&v);
    if (!expected) return report.violations.empty();
    if (confirmed.size() != 1 || report.violations.size() != 1 || confirmed[0]->rule != *expected)
      return false;
    const auto& e = confirmed[0]->evidence;
    const auto& p = server.profile;
    switch (p.kind) {
      case ProfileKind::fixed_table: return e.period == p.table_n;
      case ProfileKind::repeat_n: return e.repeat_count == p.repeat;
      case ProfileKind::rotation: return e.direction == p.direction && e.width == p.width;
      case ProfileKind::insert_bit: return e.insert_position == p.position;
      case ProfileKind::parity: return e.parity == p.parity;
      case ProfileKind::const_seed: return e.seed == p.spec.seed && e.match_offset == 0u;
      case ProfileKind::timestamp_seed: return e.clock_offset == p.skew;
      default: return true;
    }
  }
};

inline const std::vector<std::string>& e2e_profile_names() {
  static const std::vector<std::string> names{
      "static",       "fixed_table_624", "repeat_2",          "repeat_3",
      "repeat_5",     "rotation_17",     "append_bit",        "insert_bit",
      "parity_even",  "parity_odd",      "parity_alternating", "const_seed_c_rand",
      "timestamp_seed", "secure"};
  return names;
}

/// Builds a named profile. `seed` varies the server's randomness; for
/// timestamp_seed it also picks the clock skew in [-5, 5].
inline E2eProfile e2e_profile(const std::string& name, std::uint64_t seed = 1) {
  E2eProfile out;
  out.name = name;
  out.server.base_seed = seed;
  auto& p = out.server.profile;
  if (name == "static") {
    p.kind = ProfileKind::static_per_account;
    out.expected = Rule::R1;
  } else if (name == "fixed_table_624") {
    p.kind = ProfileKind::fixed_table;
    p.table_n = 624;
    out.expected = Rule::R2_1;
  } else if (name.rfind("repeat_", 0) == 0) {
    p.kind = ProfileKind::repeat_n;
    p.repeat = static_cast<std::size_t>(parse_uint(name.substr(7)));
    out.expected = Rule::R2_2;
  } else if (name == "rotation_17") {
    p.kind = ProfileKind::rotation;
    p.width = 17;
    out.expected = Rule::R2_3_shift;
  } else if (name == "append_bit") {
    p.kind = ProfileKind::append_bit;
    out.expected = Rule::R2_3_append;
  } else if (name == "insert_bit") {
    p.kind = ProfileKind::insert_bit;
    out.expected = Rule::R2_3_insert;
  } else if (name.rfind("parity_", 0) == 0) {
    p.kind = ProfileKind::parity;
    const auto which = name.substr(7);
    p.parity = parse_parity_pattern(which == "even" ? "all_even" : which == "odd" ? "all_odd" : which);
    out.expected = Rule::R2_3_parity;
  } else if (name == "const_seed_c_rand") {
    p.kind = ProfileKind::const_seed;
    p.spec = preset("c_rand").with_seed(1);
    out.expected = Rule::R3_const_seed;
  } else if (name == "timestamp_seed") {
    p.kind = ProfileKind::timestamp_seed;
    p.spec = preset("c_rand");
    p.skew = static_cast<std::int64_t>(seed % 11) - 5;
    out.expected = Rule::R3_time_seed;
  } else if (name == "secure") {
    p.kind = ProfileKind::secure;
  } else {
    throw Error(Errc::unknown_preset, "unknown e2e profile '" + name + "'");
  }
  p.validate();
  return out;
}

inline constexpr std::array<std::size_t, 4> kE2eStages{5, 20, 1000, 1248};

struct E2eOptions {
  bool test_mode = true;  // lift the request budget and the server quota
  std::int64_t interval = 60;
  AnalysisConfig analysis{};
};

struct E2eResult {
  std::string profile;
  std::size_t codes_collected = 0;
  std::size_t stage = 0;  // index into kE2eStages where collection stopped
  AnalysisReport report;
  std::vector<std::string> collector_notes;
  bool as_expected = false;

  std::vector<std::string> summary() const {
    std::vector<std::string> lines;
    for (const auto& v : report.violations) lines.push_back(summarize(v));
    if (lines.empty()) lines.push_back("no violation detected");
    return lines;
  }
};

/// Collects in stages of 5, 20, 1000 and 1248 codes and stops at the first
/// stage whose analysis holds a confirmed finding.
inline E2eResult run_e2e(const E2eProfile& profile, const E2eOptions& opt = {}) {
  ServerConfig cfg = profile.server;
  if (opt.test_mode) cfg.profile.daily_quota.reset();
  OtpServer server(cfg);
  InProcessTarget target(server);

  CollectPlan plan;
  plan.account_id = "victim";
  plan.interval = opt.interval;
  plan.lift_cap = opt.test_mode;

  E2eResult out;
  out.profile = profile.name;
  CollectResult acc;
  for (std::size_t s = 0; s < kE2eStages.size(); ++s) {
    plan.count = kE2eStages[s] - acc.requests_made;
    collect_more(target, plan, acc);
    out.stage = s;
    out.report = analyze(acc.sequence("harness:" + profile.name), opt.analysis);
    const bool confirmed = std::any_of(out.report.violations.begin(), out.report.violations.end(),
                                       [](const Violation& v) { return !v.evidence.suspected; });
    if (confirmed || acc.truncated) break;
  }
  out.codes_collected = acc.records.size();
  out.collector_notes = acc.notes;
  out.as_expected = profile.matches(out.report);
  return out;
}

}  // namespace otplint

#endif  // OTPLINT_E2E_HPP_
