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

// Randomness rules for OTP streams and the procedures that detect their
// violations:
//
//   R1            the same code for every session
//   R2_1          the stream repeats after a fixed number of codes
//   R2_2          every code is issued n times in a row
//   R2_3_*        codes related through their binary form (rotation,
//                 appended bit, inserted bit) or a fixed parity pattern
//   R3_*          generator seeded with a constant or with the clock
//
// Every violation carries an upper bound on the chance that uniformly
// random codes would have produced the same evidence.

#ifndef OTPLINT_RULES_HPP_
#define OTPLINT_RULES_HPP_

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "otplint/error.hpp"
#include "otplint/kv_config.hpp"
#include "otplint/patterns.hpp"
#include "otplint/prng.hpp"
#include "otplint/recovery.hpp"
#include "otplint/renewal.hpp"
#include "otplint/sequence.hpp"

namespace otplint {

enum class Rule {
  R1,
  R2_1,
  R2_2,
  R2_3_shift,
  R2_3_append,
  R2_3_insert,
  R2_3_parity,
  R3_const_seed,
  R3_time_seed,
};

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2_1: return "R2_1";
    case Rule::R2_2: return "R2_2";
    case Rule::R2_3_shift: return "R2_3_shift";
    case Rule::R2_3_append: return "R2_3_append";
    case Rule::R2_3_insert: return "R2_3_insert";
    case Rule::R2_3_parity: return "R2_3_parity";
    case Rule::R3_const_seed: return "R3_const_seed";
    case Rule::R3_time_seed: return "R3_time_seed";
  }
  return "?";
}

/// Positions are 0-based offsets into the analyzed sequence, inclusive.
struct Evidence {
  std::size_t first = 0;
  std::size_t last = 0;
  bool suspected = false;  // too little data to confirm; see the report notes

  std::optional<std::size_t> period;
  std::optional<std::size_t> repeat_count;
  std::optional<RotationDirection> direction;
  std::optional<int> width;
  std::optional<std::size_t> insert_position;  // bits below the inserted one
  std::optional<std::vector<int>> appended_bits;
  std::optional<ParityPattern> parity;
  std::optional<std::string> template_name;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> match_offset;   // R3_const_seed: where the run starts
  std::optional<std::int64_t> clock_offset;  // R3_time_seed: seed = t + offset
  std::optional<std::size_t> run_length;
};

struct Violation {
  Rule rule = Rule::R1;
  Evidence evidence;
  double log10_chance = 0.0;

  /// Chance bound as a probability, clamped into (0, 1].
  double chance_probability() const {
    if (log10_chance >= 0.0) return 1.0;
    return std::max(std::pow(10.0, log10_chance), DBL_MIN);
  }
};

struct AnalysisConfig {
  std::size_t period_N = 624;
  std::size_t static_probe_first = 5;
  std::size_t static_probe_more = 15;
  std::size_t repeat_n_max = 8;
  std::size_t parity_window = 20;
  std::size_t binary_window = 20;
  std::size_t rule3_collect = 1000;
  std::size_t rule3_sim_count = 50;
  std::size_t max_requests = 1000;
  std::uint64_t time_window = 5;
  std::size_t time_min_run = 3;
  std::vector<PrngSpec> const_seed_templates{preset("c_rand")};
  std::vector<PrngSpec> time_seed_templates{preset("c_rand")};
  // Unknown constant seeds: brute-force const_seed_templates over this space.
  bool search_const_seed = false;
  SeedSearchSpace seed_space{};

  std::size_t static_confirm() const { return static_probe_first + static_probe_more; }

  void validate() const {
    for (auto v : {period_N, static_probe_first, static_probe_more, repeat_n_max, parity_window,
                   binary_window, rule3_collect, rule3_sim_count, max_requests, time_min_run})
      if (v == 0) throw Error(Errc::config, "analysis counts must be positive");
    if (rule3_sim_count > rule3_collect)
      throw Error(Errc::config, "rule3_sim_count must not exceed rule3_collect");
    if (repeat_n_max < 2) throw Error(Errc::config, "repeat_n_max must be >= 2");
  }
};

namespace detail {

inline std::vector<PrngSpec> parse_templates(const std::string& text) {
  std::vector<PrngSpec> out;
  for (const auto& item : split_list(text)) {
    auto colon = item.find(':');
    auto spec = preset(trim(std::string_view(item).substr(0, colon)));
    if (colon != std::string::npos) spec.seed = parse_uint(std::string_view(item).substr(colon + 1));
    out.push_back(spec);
  }
  return out;
}

inline std::string template_label(const PrngSpec& s) {
  std::string name = s.preset_name.empty() ? std::string(to_string(s.algorithm)) : s.preset_name;
  return name;
}

}  // namespace detail

inline AnalysisConfig analysis_config_from(const KvConfig& kv) {
  AnalysisConfig cfg;
  auto size = [&](const char* key, std::size_t& field) {
    if (auto v = kv.get_uint(key)) field = static_cast<std::size_t>(*v);
  };
  size("period_N", cfg.period_N);
  if (auto v = kv.get("static_probe")) {
    auto parts = split_list(*v);
    if (parts.size() != 2) throw Error(Errc::config, "static_probe expects two counts, e.g. 5,15");
    cfg.static_probe_first = parse_uint(parts[0]);
    cfg.static_probe_more = parse_uint(parts[1]);
  }
  size("repeat_n_max", cfg.repeat_n_max);
  size("parity_window", cfg.parity_window);
  size("binary_window", cfg.binary_window);
  size("rule3_collect", cfg.rule3_collect);
  size("rule3_sim_count", cfg.rule3_sim_count);
  size("max_requests", cfg.max_requests);
  size("time_min_run", cfg.time_min_run);
  if (auto v = kv.get_uint("time_window")) cfg.time_window = *v;
  if (auto v = kv.get("const_seed_templates")) cfg.const_seed_templates = detail::parse_templates(*v);
  if (auto v = kv.get("time_seed_templates")) cfg.time_seed_templates = detail::parse_templates(*v);
  if (auto v = kv.get("search_const_seed")) cfg.search_const_seed = (*v == "1" || *v == "true");
  if (kv.has("seed_lower") || kv.has("seed_upper"))
    cfg.seed_space = SeedSearchSpace(kv.get_uint("seed_lower").value_or(0),
                                     kv.get_uint("seed_upper").value_or(cfg.seed_space.upper));
  cfg.validate();
  return cfg;
}

using Notes = std::vector<std::string>;

namespace detail {

inline constexpr double kLog10Two = 0.30102999566398120;

inline int bit_length(std::uint64_t v) { return v ? 64 - __builtin_clzll(v) : 0; }

inline std::uint64_t rotate(std::uint64_t v, int width, RotationDirection dir) {
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  if (dir == RotationDirection::anticlockwise)
    return ((v << 1) | (v >> (width - 1))) & mask;
  return ((v >> 1) | ((v & 1) << (width - 1))) & mask;
}

inline std::uint64_t insert_bit(std::uint64_t v, std::size_t k, int bit) {
  const std::uint64_t low = v & ((std::uint64_t{1} << k) - 1);
  return ((v >> k) << (k + 1)) | (static_cast<std::uint64_t>(bit) << k) | low;
}

inline void need(const OtpSequence& seq, std::size_t n, std::string_view what) {
  if (seq.size() < n)
    throw Error(Errc::insufficient_data,
                std::string(what) + " needs " + std::to_string(n) + " records, have " +
                    std::to_string(seq.size()) + " (short by " + std::to_string(n - seq.size()) +
                    ")");
}

inline bool all_identical(const std::vector<std::string>& codes, std::size_t n) {
  n = std::min(n, codes.size());
  return std::all_of(codes.begin(), codes.begin() + static_cast<std::ptrdiff_t>(n),
                     [&](const std::string& c) { return c == codes.front(); });
}

}  // namespace detail

/// Five identical codes raise suspicion; twenty confirm a static code.
inline std::optional<Violation> check_static(const OtpSequence& seq, const AnalysisConfig& cfg = {}) {
  detail::need(seq, cfg.static_probe_first, "static-code probe");
  const auto codes = seq.codes();
  if (!detail::all_identical(codes, cfg.static_probe_first)) return std::nullopt;
  const std::size_t confirm = cfg.static_confirm();
  const std::size_t span = std::min(codes.size(), confirm);
  if (!detail::all_identical(codes, span)) return std::nullopt;
  Violation v;
  v.rule = Rule::R1;
  v.evidence.first = 0;
  v.evidence.last = span - 1;
  v.evidence.suspected = span < confirm;
  v.log10_chance = -static_cast<double>(seq.format().length()) * static_cast<double>(span - 1);
  return v;
}

/// Compares the first N codes with the next N.
inline std::optional<Violation> check_fixed_period(const OtpSequence& seq, std::size_t N) {
  if (N == 0) throw Error(Errc::range, "period must be positive");
  detail::need(seq, 2 * N, "fixed-period test (N=" + std::to_string(N) + ")");
  for (std::size_t i = 0; i < N; ++i)
    if (seq[i].code != seq[i + N].code) return std::nullopt;
  Violation v;
  v.rule = Rule::R2_1;
  v.evidence.first = 0;
  v.evidence.last = 2 * N - 1;
  v.evidence.period = N;
  v.log10_chance = -static_cast<double>(seq.format().length()) * static_cast<double>(N);
  return v;
}

struct PeriodEstimate {
  std::size_t period = 0;
  bool confident = false;  // at least two full periods observed
};

/// Smallest p with code[i + p] == code[i] wherever both exist.
inline std::optional<PeriodEstimate> min_period(const OtpSequence& seq) {
  const auto codes = seq.codes();
  for (std::size_t p = 1; p < codes.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; ok && i + p < codes.size(); ++i) ok = codes[i] == codes[i + p];
    if (ok) return PeriodEstimate{p, codes.size() >= 2 * p};
  }
  return std::nullopt;
}

/// The stream is runs of one length n >= 2 (the last may be cut short),
/// with at least two complete runs establishing n.
inline std::optional<Violation> check_consecutive_repeats(const OtpSequence& seq,
                                                          const AnalysisConfig& cfg = {},
                                                          Notes* notes = nullptr) {
  detail::need(seq, 4, "repeat-run test");
  std::vector<std::size_t> runs;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0 && seq[i].code == seq[i - 1].code)
      ++runs.back();
    else
      runs.push_back(1);
  }
  const std::size_t n = runs.front();
  if (n < 2 || runs.size() < 2) return std::nullopt;
  const bool body_uniform =
      std::all_of(runs.begin(), runs.end() - 1, [&](std::size_t r) { return r == n; });
  const std::size_t complete = static_cast<std::size_t>(std::count(runs.begin(), runs.end(), n));
  if (!body_uniform || runs.back() > n || complete < 2 || n > cfg.repeat_n_max) {
    if (notes && std::any_of(runs.begin(), runs.end(), [](std::size_t r) { return r >= 2; })) {
      std::string lens;
      for (std::size_t i = 0; i < std::min<std::size_t>(runs.size(), 12); ++i)
        lens += (i ? "," : "") + std::to_string(runs[i]);
      notes->push_back("R2_2: repeated codes with inconsistent run lengths [" + lens +
                       (runs.size() > 12 ? ",..." : "") + "]");
    }
    return std::nullopt;
  }
  Violation v;
  v.rule = Rule::R2_2;
  v.evidence.first = 0;
  v.evidence.last = seq.size() - 1;
  v.evidence.repeat_count = n;
  v.log10_chance = -static_cast<double>(seq.format().length()) *
                   static_cast<double>(seq.size() - runs.size());
  return v;
}

/// Rotation, appended-bit and inserted-bit relations between consecutive
/// codes over the first min(binary_window, size) codes.
inline std::vector<Violation> check_binary_patterns(const OtpSequence& seq,
                                                    const AnalysisConfig& cfg = {},
                                                    Notes* notes = nullptr) {
  detail::need(seq, 3, "binary-pattern test");
  const std::size_t window = std::min(cfg.binary_window, seq.size());
  std::vector<std::uint64_t> v(window);
  for (std::size_t i = 0; i < window; ++i) v[i] = seq[i].value();
  std::vector<Violation> out;
  if (v[0] == 0) {
    if (notes) notes->push_back("R2_3: first code is 0, binary width undefined; checks skipped");
    return out;
  }
  if (std::all_of(v.begin(), v.end(), [&](std::uint64_t x) { return x == v[0]; })) return out;

  const int L = seq.format().length();
  const std::uint64_t modulus = seq.format().modulus();
  const int width = detail::bit_length(v[0]);  // insertion positions
  const double pairs = static_cast<double>(window - 1);
  auto make = [&](Rule rule) {
    Violation viol;
    viol.rule = rule;
    viol.evidence.first = 0;
    viol.evidence.last = window - 1;
    return viol;
  };

  // Doubling plus a bit, truncated to the code length.
  {
    std::vector<int> bits;
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < window; ++i) {
      const std::uint64_t doubled = (2 * v[i]) % modulus;
      const std::uint64_t b = (v[i + 1] + modulus - doubled) % modulus;
      ok = b <= 1;
      bits.push_back(static_cast<int>(b));
    }
    if (ok) {
      auto viol = make(Rule::R2_3_append);
      viol.evidence.appended_bits = bits;
      viol.log10_chance = pairs * (detail::kLog10Two - L);
      out.push_back(viol);
    }
  }

  // Rotation at the smallest width, from the widest observed code up to
  // the widest code the length allows, under which every step is a
  // one-bit rotation. A left rotation that never wraps is plain doubling,
  // which the append finding already reports.
  const int max_width = detail::bit_length(modulus - 1);
  int min_width = 0;
  for (auto x : v) min_width = std::max(min_width, detail::bit_length(x));
  const int widths_tried = max_width - min_width + 1;
  for (int w = min_width; out.empty() && w <= max_width; ++w) {
    std::optional<RotationDirection> found;
    for (auto dir : {RotationDirection::anticlockwise, RotationDirection::clockwise}) {
      bool ok = true;
      for (std::size_t i = 0; ok && i + 1 < window; ++i) ok = detail::rotate(v[i], w, dir) == v[i + 1];
      if (ok) {
        found = dir;
        break;
      }
    }
    if (!found) continue;
    auto viol = make(Rule::R2_3_shift);
    viol.evidence.direction = *found;
    viol.evidence.width = w;
    viol.log10_chance =
        std::min(0.0, std::log10(2.0 * widths_tried) - L * pairs);
    out.push_back(viol);
    break;
  }

  // One bit inserted at a fixed position k >= 1, truncated to the code
  // length like the append case (which is k = 0).
  for (std::size_t k = 1; k <= static_cast<std::size_t>(width); ++k) {
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < window; ++i) {
      ok = v[i + 1] != v[i] && (detail::insert_bit(v[i], k, 0) % modulus == v[i + 1] ||
                                detail::insert_bit(v[i], k, 1) % modulus == v[i + 1]);
    }
    if (ok) {
      auto viol = make(Rule::R2_3_insert);
      viol.evidence.insert_position = k;
      viol.evidence.width = width;
      viol.log10_chance = std::log10(static_cast<double>(width)) + pairs * (detail::kLog10Two - L);
      out.push_back(viol);
      break;
    }
  }

  // Appending b after a code ending in b equals inserting b just above the
  // lowest bit. Until a step tells them apart, neither is confirmed.
  const auto append = std::find_if(out.begin(), out.end(), [](const Violation& x) { return x.rule == Rule::R2_3_append; });
  const auto insert = std::find_if(out.begin(), out.end(), [](const Violation& x) { return x.rule == Rule::R2_3_insert; });
  if (append != out.end() && insert != out.end()) {
    append->evidence.suspected = insert->evidence.suspected = true;
    if (notes)
      notes->push_back("R2_3: appended and inserted bit (position " +
                       std::to_string(*insert->evidence.insert_position) +
                       ") both explain the codes; more codes needed");
  }
  return out;
}

/// Even means the lowest binary bit is 0.
inline std::optional<Violation> check_parity_pattern(const OtpSequence& seq,
                                                     const AnalysisConfig& cfg = {}) {
  const std::size_t window = cfg.parity_window;
  detail::need(seq, window, "parity test");
  std::vector<int> parity(window);
  for (std::size_t i = 0; i < window; ++i) parity[i] = static_cast<int>(seq[i].value() & 1);
  std::optional<ParityPattern> found;
  if (std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; }))
    found = ParityPattern::all_even;
  else if (std::all_of(parity.begin(), parity.end(), [](int p) { return p == 1; }))
    found = ParityPattern::all_odd;
  else {
    bool alternating = true;
    for (std::size_t i = 1; alternating && i < window; ++i) alternating = parity[i] != parity[i - 1];
    if (alternating && window >= 2) found = ParityPattern::alternating;
  }
  if (!found) return std::nullopt;
  Violation v;
  v.rule = Rule::R2_3_parity;
  v.evidence.first = 0;
  v.evidence.last = window - 1;
  v.evidence.parity = *found;
  // 2^(1 - window) per pattern family, three families tested.
  v.log10_chance = std::min(0.0, std::log10(3.0) + (1.0 - static_cast<double>(window)) * detail::kLog10Two);
  return v;
}

/// Simulates each fixed-seed template for rule3_sim_count codes and looks
/// for that run, contiguous, inside the first rule3_collect codes.
inline std::optional<Violation> check_constant_seed(const OtpSequence& seq,
                                                    const std::vector<PrngSpec>& templates,
                                                    const AnalysisConfig& cfg = {}) {
  detail::need(seq, cfg.rule3_sim_count, "constant-seed simulation");
  const auto all_codes = seq.codes();
  const std::size_t limit = std::min(all_codes.size(), cfg.rule3_collect);
  const std::size_t sim = cfg.rule3_sim_count;
  for (const auto& tmpl : templates) {
    const auto simulated = stream_codes(tmpl, sim, seq.format());
    auto hit = std::search(all_codes.begin(), all_codes.begin() + static_cast<std::ptrdiff_t>(limit),
                           simulated.begin(), simulated.end());
    if (hit == all_codes.begin() + static_cast<std::ptrdiff_t>(limit)) continue;
    const auto offset = static_cast<std::size_t>(hit - all_codes.begin());
    // Follow the template past the simulated prefix while it keeps agreeing.
    std::size_t run = sim;
    auto gen = make_generator(tmpl);
    for (std::size_t i = 0; i < sim; ++i) next_raw(gen);
    while (offset + run < limit && draw_otp(gen, seq.format()) == all_codes[offset + run]) ++run;
    Violation v;
    v.rule = Rule::R3_const_seed;
    v.evidence.first = offset;
    v.evidence.last = offset + run - 1;
    v.evidence.template_name = detail::template_label(tmpl);
    v.evidence.seed = tmpl.seed;
    v.evidence.match_offset = offset;
    v.evidence.run_length = run;
    v.log10_chance = std::log10(static_cast<double>(limit - sim + 1) * templates.size()) -
                     static_cast<double>(seq.format().length()) * static_cast<double>(run);
    return v;
  }
  return std::nullopt;
}

/// Brute-forces an unknown constant seed from the first codes.
inline std::optional<Violation> search_constant_seed(const OtpSequence& seq,
                                                     const std::vector<PrngSpec>& templates,
                                                     const AnalysisConfig& cfg = {}) {
  const std::size_t evidence = std::min<std::size_t>(seq.size(), 8);
  if (evidence < 4) throw Error(Errc::insufficient_evidence, "seed search needs 4 codes");
  const auto codes = seq.prefix(evidence).codes();
  for (const auto& tmpl : templates) {
    auto result = seed_bruteforce(tmpl, codes, seq.format(), cfg.seed_space);
    if (!result.found()) continue;
    Violation v;
    v.rule = Rule::R3_const_seed;
    v.evidence.first = 0;
    v.evidence.last = evidence - 1;
    v.evidence.template_name = detail::template_label(tmpl);
    v.evidence.seed = result.recovered.front();
    v.evidence.match_offset = 0;
    v.evidence.run_length = evidence;
    v.log10_chance = std::log10(static_cast<double>(cfg.seed_space.size()) * templates.size()) -
                     static_cast<double>(seq.format().length()) * static_cast<double>(evidence);
    return v;
  }
  return std::nullopt;
}

/// Looks for a server that reseeds with its clock on each request.
inline std::optional<Violation> check_timestamp_seed(const OtpSequence& seq,
                                                     const std::vector<PrngSpec>& templates,
                                                     const AnalysisConfig& cfg = {}) {
  std::vector<TimedCode> obs;
  obs.reserve(seq.size());
  for (const auto& r : seq.records()) {
    if (!r.request_time)
      throw Error(Errc::shape, "record " + std::to_string(r.index) + " has no request time");
    obs.push_back({*r.request_time, r.code});
  }
  std::optional<Violation> best;
  for (const auto& tmpl : templates) {
    auto result = timestamp_seed_match(tmpl, obs, seq.format(), cfg.time_window, cfg.time_min_run);
    for (const auto& m : result.recovered) {
      const bool better =
          !best || m.run_length > *best->evidence.run_length ||
          (m.run_length == *best->evidence.run_length &&
           std::abs(m.offset) < std::abs(*best->evidence.clock_offset));
      if (!better) continue;
      Violation v;
      v.rule = Rule::R3_time_seed;
      v.evidence.first = m.first_index;
      v.evidence.last = m.first_index + m.run_length - 1;
      v.evidence.template_name = detail::template_label(tmpl);
      v.evidence.clock_offset = m.offset;
      v.evidence.run_length = m.run_length;
      v.log10_chance =
          std::log10(static_cast<double>(2 * cfg.time_window + 1) * obs.size() * templates.size()) -
          static_cast<double>(seq.format().length()) * static_cast<double>(m.run_length);
      v.log10_chance = std::min(0.0, v.log10_chance);
      best = v;
    }
  }
  return best;
}

/// Reads the renewal policy off the probe matrix. A cell "changes" when
/// every consecutive pair differs, is "constant" when all codes agree and
/// is "partial" otherwise. Under after_duration(d), gaps shorter than d
/// give constant or partial cells (the code turns over once enough gaps
/// add up to d) and gaps of at least d give changing cells.
inline RenewalPolicy classify_renewal_policy(const RenewalProbeResult& probe) {
  enum class State { constant, changes, partial, unknown };
  auto state_of = [](const ProbeCell& cell) {
    if (cell.codes.size() < 2) return State::unknown;
    bool all_same = true, all_differ = true;
    for (std::size_t i = 1; i < cell.codes.size(); ++i) {
      if (cell.codes[i] == cell.codes[i - 1])
        all_differ = false;
      else
        all_same = false;
    }
    return all_same ? State::constant : all_differ ? State::changes : State::partial;
  };
  auto fail = [&](const std::string& why) {
    return Error(Errc::unclassifiable, why + "\n" + probe.describe());
  };

  std::array<State, kProbeGaps.size()> idle{}, used{};
  for (std::size_t g = 0; g < kProbeGaps.size(); ++g) {
    idle[g] = state_of(probe.at(g, ProbeArm::no_consume));
    used[g] = state_of(probe.at(g, ProbeArm::consume));
    if (idle[g] == State::unknown)
      throw fail("no-consume arm at gap " + std::to_string(kProbeGaps[g]) + "s has too few codes");
  }
  if (std::all_of(idle.begin(), idle.end(), [](State s) { return s == State::constant; })) {
    if (std::all_of(used.begin(), used.end(), [](State s) { return s == State::changes; }))
      return RenewalPolicy::on_consume();
    throw fail("code does not change at any gap, and consumption does not renew it on every request");
  }
  std::size_t first_change = 0;
  while (first_change < idle.size() && idle[first_change] != State::changes) ++first_change;
  if (first_change == idle.size())
    throw fail("code never renews on every request; duration exceeds the longest probed gap");
  for (std::size_t g = first_change; g < kProbeGaps.size(); ++g)
    if (idle[g] != State::changes) throw fail("code renews at a short gap but not at a longer one");
  if (first_change == 0) return RenewalPolicy::per_request();
  return RenewalPolicy::after_duration(kProbeGaps[first_change]);
}

// ---------------------------------------------------------------------------

struct AnalysisReport {
  std::string source;
  AnalysisConfig config;
  std::size_t records = 0;
  int otp_length = 0;
  std::vector<Violation> violations;
  Notes notes;

  bool has(Rule r) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == r; });
  }
  const Violation* find(Rule r) const {
    for (const auto& v : violations)
      if (v.rule == r) return &v;
    return nullptr;
  }
};

/// Runs R1, R2_2, R2_1, the binary R2_3 checks and R3, then parity when
/// nothing else fired. A static sequence skips the R2 checks. Insufficient data becomes a note.
inline AnalysisReport analyze(const OtpSequence& seq, const AnalysisConfig& cfg = {}) {
  cfg.validate();
  AnalysisReport report;
  report.source = seq.source_label();
  report.config = cfg;
  report.records = seq.size();
  report.otp_length = seq.format().length();
  auto& notes = report.notes;
  auto guarded = [&](std::string_view name, auto&& check) {
    try {
      check();
    } catch (const Error& e) {
      if (e.code() != Errc::insufficient_data && e.code() != Errc::insufficient_evidence &&
          e.code() != Errc::shape)
        throw;
      notes.push_back(std::string(name) + ": " + e.what());
    }
  };
  if (seq.empty()) {
    notes.push_back("empty sequence; nothing to analyze");
    return report;
  }

  bool is_static = false;
  guarded("R1", [&] {
    if (auto v = check_static(seq, cfg)) {
      is_static = true;
      if (v->evidence.suspected)
        notes.push_back("R1: suspected static code; confirmation needs " +
                        std::to_string(cfg.static_confirm()) + " records");
      report.violations.push_back(*v);
    }
  });
  if (!is_static && seq.size() > 1 && detail::all_identical(seq.codes(), seq.size())) is_static = true;

  if (is_static) {
    notes.push_back("R2: pattern checks suppressed for a static sequence");
  } else {
    guarded("R2_2", [&] {
      if (auto v = check_consecutive_repeats(seq, cfg, &notes)) report.violations.push_back(*v);
    });
    guarded("R2_1", [&] {
      if (auto v = check_fixed_period(seq, cfg.period_N)) report.violations.push_back(*v);
    });
    guarded("R2_3", [&] {
      for (auto& v : check_binary_patterns(seq, cfg, &notes)) report.violations.push_back(v);
    });
    if (auto p = min_period(seq); p && p->confident && p->period > 1 && !report.has(Rule::R2_1))
      notes.push_back("period: codes repeat every " + std::to_string(p->period) + " requests");
  }

  guarded("R3_const_seed", [&] {
    auto v = check_constant_seed(seq, cfg.const_seed_templates, cfg);
    if (!v && cfg.search_const_seed) v = search_constant_seed(seq, cfg.const_seed_templates, cfg);
    if (v) report.violations.push_back(*v);
  });
  guarded("R3_time_seed", [&] {
    if (auto v = check_timestamp_seed(seq, cfg.time_seed_templates, cfg)) report.violations.push_back(*v);
  });
  if (!is_static && report.violations.empty()) {
    guarded("R2_3_parity", [&] {
      if (auto v = check_parity_pattern(seq, cfg)) report.violations.push_back(*v);
    });
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json to_json(const Evidence& e) {
  nlohmann::ordered_json j;
  j["first"] = e.first;
  j["last"] = e.last;
  if (e.suspected) j["suspected"] = true;
  if (e.period) j["period"] = *e.period;
  if (e.repeat_count) j["repeat_count"] = *e.repeat_count;
  if (e.direction) j["direction"] = to_string(*e.direction);
  if (e.width) j["width"] = *e.width;
  if (e.insert_position) j["insert_position"] = *e.insert_position;
  if (e.appended_bits) j["appended_bits"] = *e.appended_bits;
  if (e.parity) j["parity"] = to_string(*e.parity);
  if (e.template_name) j["template"] = *e.template_name;
  if (e.seed) j["seed"] = *e.seed;
  if (e.match_offset) j["match_offset"] = *e.match_offset;
  if (e.clock_offset) j["clock_offset"] = *e.clock_offset;
  if (e.run_length) j["run_length"] = *e.run_length;
  return j;
}

inline nlohmann::ordered_json to_json(const AnalysisConfig& c) {
  nlohmann::ordered_json j;
  j["period_N"] = c.period_N;
  j["static_probe"] = {c.static_probe_first, c.static_probe_more};
  j["repeat_n_max"] = c.repeat_n_max;
  j["parity_window"] = c.parity_window;
  j["binary_window"] = c.binary_window;
  j["rule3_collect"] = c.rule3_collect;
  j["rule3_sim_count"] = c.rule3_sim_count;
  j["max_requests"] = c.max_requests;
  j["time_window"] = c.time_window;
  j["time_min_run"] = c.time_min_run;
  auto names = [](const std::vector<PrngSpec>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(detail::template_label(t) + ":" + std::to_string(t.seed));
    return out;
  };
  j["const_seed_templates"] = names(c.const_seed_templates);
  j["time_seed_templates"] = names(c.time_seed_templates);
  return j;
}

inline nlohmann::ordered_json to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["source"] = r.source;
  j["config"] = to_json(r.config);
  j["records"] = r.records;
  j["otp_length"] = r.otp_length;
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    nlohmann::ordered_json vj;
    vj["rule"] = to_string(v.rule);
    vj["evidence"] = to_json(v.evidence);
    vj["chance_probability"] = v.chance_probability();
    vj["log10_chance"] = v.log10_chance;
    j["violations"].push_back(vj);
  }
  j["notes"] = r.notes;
  return j;
}

/// One line per finding, e.g. "R2_1 detected, N=624".
inline std::string summarize(const Violation& v) {
  std::string s = std::string(to_string(v.rule)) + (v.evidence.suspected ? " suspected" : " detected");
  const auto& e = v.evidence;
  if (e.period) s += ", N=" + std::to_string(*e.period);
  if (e.repeat_count) s += ", n=" + std::to_string(*e.repeat_count);
  if (e.direction) s += ", direction=" + std::string(to_string(*e.direction));
  if (e.width && v.rule == Rule::R2_3_shift) s += ", width=" + std::to_string(*e.width);
  if (e.insert_position) s += ", position=" + std::to_string(*e.insert_position);
  if (e.parity) s += ", pattern=" + std::string(to_string(*e.parity));
  if (e.template_name) s += ", template=" + *e.template_name;
  if (e.seed) s += ", seed=" + std::to_string(*e.seed);
  if (e.match_offset) s += ", offset=" + std::to_string(*e.match_offset);
  if (e.clock_offset) s += ", offset=" + std::to_string(*e.clock_offset);
  return s;
}

inline std::string render_text(const AnalysisReport& r) {
  std::string out = "source: " + r.source + "\nrecords: " + std::to_string(r.records) +
                    " (length " + std::to_string(r.otp_length) + ")\n";
  if (r.violations.empty()) out += "no violations\n";
  for (const auto& v : r.violations) {
    char prob[32];
    std::snprintf(prob, sizeof prob, "%.3g", v.chance_probability());
    out += summarize(v) + "  [records " + std::to_string(v.evidence.first) + ".." +
           std::to_string(v.evidence.last) + ", chance <= " + prob + "]\n";
  }
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

}  // namespace otplint

#endif  // OTPLINT_RULES_HPP_
