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

#include "otplint/rules.hpp"

#include <cstdio>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace otplint {
namespace {

std::string pad(std::uint64_t v, int len) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*llu", len, static_cast<unsigned long long>(v));
  return buf;
}

OtpSequence seq_of(const std::vector<std::uint64_t>& values, int len) {
  std::vector<std::string> codes;
  for (auto v : values) codes.push_back(pad(v, len));
  return OtpSequence::from_codes(codes);
}

OtpSequence repeat_code(const std::string& code, std::size_t n) {
  return OtpSequence::from_codes(std::vector<std::string>(n, code));
}

std::vector<std::uint64_t> crand_values(unsigned seed, std::size_t n, std::uint64_t modulus) {
  oracle::CRand ref(seed);
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) v = ref() % modulus;
  return out;
}

std::vector<std::uint64_t> mt_values(std::uint32_t seed, std::size_t n, std::uint64_t modulus) {
  oracle::Mt19937 ref(seed);
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) v = ref() % modulus;
  return out;
}

std::vector<Rule> rules_of(const AnalysisReport& r) {
  std::vector<Rule> out;
  for (const auto& v : r.violations) out.push_back(v.rule);
  return out;
}

// --- R1 ------------------------------------------------------------------

TEST(StaticCode, TwentyIdenticalConfirmed) {
  auto v = check_static(repeat_code("1234", 20));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->rule, Rule::R1);
  EXPECT_FALSE(v->evidence.suspected);
  EXPECT_EQ(v->evidence.last, 19u);
  EXPECT_DOUBLE_EQ(v->log10_chance, -76.0);
  EXPECT_NEAR(v->chance_probability() / 1e-76, 1.0, 1e-9);
}

TEST(StaticCode, ProbeFailsAtFifth) {
  auto seq = OtpSequence::from_codes({"1234", "1234", "1234", "1234", "9999", "1234"});
  EXPECT_FALSE(check_static(seq).has_value());
}

TEST(StaticCode, FiveIdenticalIsOnlySuspected) {
  auto v = check_static(repeat_code("555555", 7));
  ASSERT_TRUE(v.has_value());
  EXPECT_TRUE(v->evidence.suspected);
  EXPECT_DOUBLE_EQ(v->log10_chance, -36.0);
}

TEST(StaticCode, LaterDifferenceDefeatsProbe) {
  std::vector<std::string> codes(20, "4321");
  codes[17] = "4320";
  EXPECT_FALSE(check_static(OtpSequence::from_codes(codes)).has_value());
}

TEST(StaticCode, TooFewRecords) {
  try {
    check_static(repeat_code("1234", 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::insufficient_data);
  }
}

// --- R2_1 ----------------------------------------------------------------

TEST(FixedPeriod, CycledTableDetected) {
  auto table = mt_values(77, 10, 1000000);
  std::vector<std::uint64_t> values;
  for (int rep = 0; rep < 3; ++rep) values.insert(values.end(), table.begin(), table.end());
  auto v = check_fixed_period(seq_of(values, 6), 10);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.period, 10u);
  EXPECT_EQ(v->evidence.last, 19u);
  EXPECT_DOUBLE_EQ(v->log10_chance, -60.0);
}

TEST(FixedPeriod, ShortfallNamed) {
  auto values = mt_values(1, 1247, 1000000);
  try {
    check_fixed_period(seq_of(values, 6), 624);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::insufficient_data);
    EXPECT_NE(std::string(e.what()).find("short by 1"), std::string::npos);
  }
}

TEST(FixedPeriod, RandomStreamClean) {
  EXPECT_FALSE(check_fixed_period(seq_of(mt_values(3, 1248, 1000000), 6), 624).has_value());
}

TEST(MinPeriod, ShortSampleLowConfidence) {
  auto p = min_period(OtpSequence::from_codes({"0001", "0002", "0003", "0001", "0002"}));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->period, 3u);
  EXPECT_FALSE(p->confident);
}

TEST(MinPeriod, TwoCyclesConfident) {
  auto p = min_period(OtpSequence::from_codes({"0001", "0002", "0003", "0001", "0002", "0003"}));
  ASSERT_TRUE(p.has_value());
  EXPECT_TRUE(p->confident);
}

// --- R2_2 ----------------------------------------------------------------

TEST(Repeats, PairsDetected) {
  auto v = check_consecutive_repeats(seq_of({11, 11, 22, 22, 33, 33}, 4));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.repeat_count, 2u);
  EXPECT_DOUBLE_EQ(v->log10_chance, -12.0);
}

TEST(Repeats, TruncatedLastRunAllowed) {
  auto v = check_consecutive_repeats(seq_of({7, 7, 7, 8, 8, 8, 9, 9}, 4));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.repeat_count, 3u);
}

TEST(Repeats, MixedRunLengthsNoted) {
  Notes notes;
  auto v = check_consecutive_repeats(seq_of({1, 1, 1, 2, 2, 3, 3, 3}, 4), {}, &notes);
  EXPECT_FALSE(v.has_value());
  ASSERT_EQ(notes.size(), 1u);
  EXPECT_NE(notes[0].find("inconsistent run lengths [3,2,3]"), std::string::npos);
}

TEST(Repeats, SingleCompleteRunInsufficient) {
  EXPECT_FALSE(check_consecutive_repeats(seq_of({5, 5, 6, 7}, 4)).has_value());
}

TEST(Repeats, AboveMaximumIgnored) {
  std::vector<std::uint64_t> values;
  for (std::uint64_t c : {1, 2, 3})
    for (int i = 0; i < 9; ++i) values.push_back(c);
  EXPECT_FALSE(check_consecutive_repeats(seq_of(values, 4)).has_value());
  AnalysisConfig cfg;
  cfg.repeat_n_max = 9;
  EXPECT_TRUE(check_consecutive_repeats(seq_of(values, 4), cfg).has_value());
}

// --- R2_3 ----------------------------------------------------------------

TEST(BinaryPatterns, RotationFromObservedSequence) {
  auto found = check_binary_patterns(OtpSequence::from_codes({"081642", "032213", "064426"}));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].rule, Rule::R2_3_shift);
  EXPECT_EQ(found[0].evidence.direction, RotationDirection::anticlockwise);
  EXPECT_EQ(found[0].evidence.width, 17);
}

TEST(BinaryPatterns, ReversedRotationIsClockwise) {
  auto found = check_binary_patterns(OtpSequence::from_codes({"064426", "032213", "081642"}));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].evidence.direction, RotationDirection::clockwise);
  EXPECT_EQ(found[0].evidence.width, 17);  // first code has a leading zero bit
}

TEST(BinaryPatterns, AppendedBits) {
  auto found = check_binary_patterns(seq_of({5, 10, 20, 40}, 6));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].rule, Rule::R2_3_append);
  EXPECT_EQ(*found[0].evidence.appended_bits, (std::vector<int>{0, 0, 0}));
}

TEST(BinaryPatterns, AppendWrapsAtModulus) {
  // 2 * 6000 + 1 = 12001, truncated to four digits.
  auto found = check_binary_patterns(seq_of({3000, 6000, 2001, 4003}, 4));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(*found[0].evidence.appended_bits, (std::vector<int>{0, 1, 1}));
}

TEST(BinaryPatterns, InsertedBit) {
  // Insert at k = 2 (two bits stay below the new one).
  std::vector<std::uint64_t> values{0b101};
  for (int bit : {1, 0, 1, 1, 0, 1}) {
    auto v = values.back();
    values.push_back(((v >> 2) << 3) | (static_cast<std::uint64_t>(bit) << 2) | (v & 3));
  }
  auto found = check_binary_patterns(seq_of(values, 6));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].rule, Rule::R2_3_insert);
  EXPECT_EQ(found[0].evidence.insert_position, 2u);
}

TEST(BinaryPatterns, AppendInsertAmbiguityNotConfirmed) {
  Notes notes;
  auto found = check_binary_patterns(seq_of({2, 4, 8, 16, 32}, 6), {}, &notes);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_TRUE(found[0].evidence.suspected);
  EXPECT_TRUE(found[1].evidence.suspected);
  ASSERT_EQ(notes.size(), 1u);
  // One step that only an append explains settles it: 32 -> 65.
  found = check_binary_patterns(seq_of({2, 4, 8, 16, 32, 65}, 6));
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].rule, Rule::R2_3_append);
  EXPECT_FALSE(found[0].evidence.suspected);
}

TEST(BinaryPatterns, InsertWrapsAtModulus) {
  std::vector<std::uint64_t> values{0b11};
  std::mt19937 rng(5);
  for (int i = 0; i < 25; ++i) {
    auto v = values.back();
    values.push_back((((v >> 1) << 2) | ((rng() & 1) << 1) | (v & 1)) % 10000);
  }
  AnalysisConfig cfg;
  cfg.binary_window = values.size();
  auto found = check_binary_patterns(seq_of(values, 4), cfg);
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found.back().rule, Rule::R2_3_insert);
  EXPECT_EQ(found.back().evidence.insert_position, 1u);
}

TEST(BinaryPatterns, ZeroFirstCodeSkipped) {
  Notes notes;
  EXPECT_TRUE(check_binary_patterns(seq_of({0, 1, 2}, 4), {}, &notes).empty());
  ASSERT_EQ(notes.size(), 1u);
}

TEST(BinaryPatterns, ConstantStreamNotAPattern) {
  EXPECT_TRUE(check_binary_patterns(seq_of({8, 8, 8, 8}, 4)).empty());
}

TEST(BinaryPatterns, RotationAgreesWithStringOracle) {
  std::mt19937_64 rng(99);
  int positives = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int width = 4 + static_cast<int>(rng() % 20);  // 2^23 < 10^7
    std::vector<std::uint64_t> values{(std::uint64_t{1} << (width - 1)) |
                                      (rng() & ((std::uint64_t{1} << (width - 1)) - 1))};
    const bool left = rng() & 1;
    for (int i = 0; i < 7; ++i) {
      auto v = values.back();
      values.push_back(left ? ((v << 1) | (v >> (width - 1))) & ((std::uint64_t{1} << width) - 1)
                            : (v >> 1) | ((v & 1) << (width - 1)));
    }
    if (trial % 2) values[1 + rng() % 7] ^= std::uint64_t{1} << (rng() % width);

    // The check reports the narrowest width a 7-digit code can span.
    // Constant streams and plain doubling are reported elsewhere, if at all.
    if (std::all_of(values.begin(), values.end(), [&](auto v) { return v == values[0]; })) continue;
    auto explained = oracle::rotations_explaining(values, oracle::bit_length(9999999));
    AnalysisConfig cfg;
    cfg.binary_window = values.size();
    auto found = check_binary_patterns(seq_of(values, 7), cfg);
    if (!found.empty() && found[0].rule == Rule::R2_3_append) continue;
    std::vector<Violation> shifts;
    for (auto& v : found)
      if (v.rule == Rule::R2_3_shift) shifts.push_back(v);
    ASSERT_EQ(shifts.empty(), explained.empty()) << "trial " << trial << " " << [&] {
      std::string s;
      for (auto v : values) s += std::to_string(v) + " ";
      return s;
    }();
    if (!shifts.empty()) {
      ++positives;
      EXPECT_EQ(shifts[0].evidence.width, explained.front().first);
      const int d = shifts[0].evidence.direction == RotationDirection::anticlockwise ? +1 : -1;
      EXPECT_NE(std::find(explained.begin(), explained.end(), std::pair{*shifts[0].evidence.width, d}),
                explained.end());
    }
  }
  EXPECT_GT(positives, 900);
}

TEST(Parity, AllEven) {
  std::vector<std::uint64_t> values = mt_values(5, 20, 1000000);
  for (auto& v : values) v &= ~std::uint64_t{1};
  auto v = check_parity_pattern(seq_of(values, 6));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.parity, ParityPattern::all_even);
  EXPECT_NEAR(v->chance_probability(), 3.0 / 524288.0, 1e-15);
}

TEST(Parity, Alternating) {
  std::vector<std::uint64_t> values = mt_values(6, 20, 1000000);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = (values[i] & ~std::uint64_t{1}) | (i & 1);
  auto v = check_parity_pattern(seq_of(values, 6));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.parity, ParityPattern::alternating);
}

TEST(Parity, NeedsFullWindow) {
  EXPECT_THROW(check_parity_pattern(seq_of(std::vector<std::uint64_t>(19, 2), 6)), Error);
}

TEST(Parity, RandomStreamClean) {
  EXPECT_FALSE(check_parity_pattern(seq_of(mt_values(8, 20, 1000000), 6)).has_value());
}

// --- R3 ------------------------------------------------------------------

TEST(ConstantSeed, DefaultTemplateFound) {
  auto seq = seq_of(crand_values(1, 1000, 1000000), 6);
  auto v = check_constant_seed(seq, {preset("c_rand")});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.match_offset, 0u);
  EXPECT_EQ(v->evidence.template_name, "c_rand");
  EXPECT_EQ(v->evidence.seed, 1u);
}

TEST(ConstantSeed, OffsetMatch) {
  auto values = mt_values(11, 37, 1000000);
  auto tail = crand_values(1, 200, 1000000);
  values.insert(values.end(), tail.begin(), tail.end());
  auto v = check_constant_seed(seq_of(values, 6), {preset("c_rand")});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.match_offset, 37u);
  EXPECT_EQ(v->evidence.last, 236u);  // the run extends through the tail
  EXPECT_EQ(v->evidence.run_length, 200u);
}

TEST(ConstantSeed, OtherSeedNotMatched) {
  EXPECT_FALSE(check_constant_seed(seq_of(crand_values(2, 1000, 1000000), 6), {preset("c_rand")}));
}

TEST(ConstantSeed, UnknownSeedSearch) {
  AnalysisConfig cfg;
  cfg.seed_space = SeedSearchSpace(0, 5000);
  auto v = search_constant_seed(seq_of(crand_values(4321, 60, 1000000), 6), {preset("c_rand")}, cfg);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.seed, 4321u);
}

OtpSequence timed(const std::vector<std::int64_t>& times, const std::vector<std::string>& codes) {
  std::vector<OtpRecord> recs;
  for (std::size_t i = 0; i < codes.size(); ++i) recs.push_back({i, codes[i], times[i], false, "a"});
  return OtpSequence(recs, OtpFormat(static_cast<int>(codes[0].size())));
}

TEST(TimestampSeed, OffsetRecovered) {
  std::vector<std::int64_t> times;
  std::vector<std::string> codes;
  for (int i = 0; i < 8; ++i) {
    times.push_back(1700000000 + 7 * i);
    oracle::CRand ref(static_cast<unsigned>(times.back() + 2));
    codes.push_back(pad(ref() % 1000000, 6));
  }
  auto v = check_timestamp_seed(timed(times, codes), {preset("c_rand")});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.clock_offset, 2);
  EXPECT_EQ(v->evidence.run_length, 8u);
}

TEST(TimestampSeed, MissingTimesRejected) {
  try {
    check_timestamp_seed(seq_of({1, 2, 3}, 6), {preset("c_rand")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::shape);
  }
}

// --- analyze -------------------------------------------------------------

TEST(Analyze, StaticSuppressesPatternRules) {
  auto report = analyze(repeat_code("1234", 20));
  EXPECT_EQ(rules_of(report), std::vector<Rule>{Rule::R1});
}

TEST(Analyze, ParityOnlyWhenNothingElse) {
  // Pairs of even codes: R2_2 explains the stream, parity stays quiet.
  std::vector<std::uint64_t> values;
  for (auto v : mt_values(12, 10, 1000000)) {
    values.push_back(v & ~std::uint64_t{1});
    values.push_back(v & ~std::uint64_t{1});
  }
  EXPECT_EQ(rules_of(analyze(seq_of(values, 6))), std::vector<Rule>{Rule::R2_2});
}

TEST(Analyze, InsufficiencyBecomesNotes) {
  auto report = analyze(seq_of({81642, 32213, 64426}, 6));
  EXPECT_EQ(rules_of(report), std::vector<Rule>{Rule::R2_3_shift});
  EXPECT_FALSE(report.notes.empty());
}

TEST(Analyze, SeededStreamsClean) {
  for (std::uint32_t seed = 100; seed < 130; ++seed) {
    auto report = analyze(seq_of(mt_values(seed, 1248, 1000000), 6));
    EXPECT_TRUE(report.violations.empty()) << "seed " << seed << "\n" << render_text(report);
  }
}

TEST(Analyze, CsprngStreamsClean) {
  for (int i = 0; i < 5; ++i) {
    auto report = analyze(OtpSequence::from_codes(stream_codes(preset("os_csprng"), 1248, OtpFormat(6))));
    EXPECT_TRUE(report.violations.empty()) << render_text(report);
  }
}

// Once a rule fires on a prefix, longer prefixes keep firing with no
// larger chance bound.
TEST(Analyze, EvidenceMonotoneInLength) {
  std::vector<std::uint64_t> repeated;
  for (auto v : mt_values(21, 100, 1000000))
    for (int i = 0; i < 3; ++i) repeated.push_back(v);
  auto const_seed = crand_values(1, 300, 1000000);
  AnalysisConfig cfg;
  cfg.rule3_collect = 300;
  for (auto [values, rule] : {std::pair{repeated, Rule::R2_2}, std::pair{const_seed, Rule::R3_const_seed}}) {
    auto full = seq_of(values, 6);
    bool fired = false;
    double last_bound = 0.0;
    for (std::size_t n = 5; n <= full.size(); ++n) {
      auto report = analyze(full.prefix(n), cfg);
      const Violation* v = report.find(rule);
      if (fired) {
        ASSERT_NE(v, nullptr) << "n=" << n;
        EXPECT_LE(v->log10_chance, last_bound);
      }
      if (v) {
        fired = true;
        last_bound = v->log10_chance;
      }
    }
    EXPECT_TRUE(fired);
  }
}

// --- renewal -------------------------------------------------------------

RenewalProbeResult probe_of(const std::array<std::array<const char*, 2>, 3>& shape) {
  // 'c' = constant cell, 'x' = every request differs, 'm' = mixed.
  RenewalProbeResult r;
  int counter = 0;
  for (std::size_t g = 0; g < 3; ++g)
    for (auto arm : {ProbeArm::no_consume, ProbeArm::consume}) {
      auto& cell = r.at(g, arm);
      const char kind = shape[g][static_cast<std::size_t>(arm)][0];
      for (std::size_t i = 0; i < kProbeRequestsPerCell; ++i) {
        if (kind == 'x' || (kind == 'm' && i == 3)) ++counter;
        cell.codes.push_back(pad(static_cast<std::uint64_t>(100000 + counter), 6));
      }
      cell.complete = true;
    }
  return r;
}

TEST(Renewal, Classification) {
  EXPECT_EQ(classify_renewal_policy(probe_of({{{"x", "x"}, {"x", "x"}, {"x", "x"}}})),
            RenewalPolicy::per_request());
  EXPECT_EQ(classify_renewal_policy(probe_of({{{"c", "x"}, {"c", "x"}, {"c", "x"}}})),
            RenewalPolicy::on_consume());
  EXPECT_EQ(classify_renewal_policy(probe_of({{{"c", "c"}, {"x", "x"}, {"x", "x"}}})),
            RenewalPolicy::after_duration(1200));
  EXPECT_EQ(classify_renewal_policy(probe_of({{{"c", "c"}, {"c", "c"}, {"x", "x"}}})),
            RenewalPolicy::after_duration(3600));
  // Twenty-minute gaps add up to an hour within one cell.
  EXPECT_EQ(classify_renewal_policy(probe_of({{{"c", "c"}, {"m", "m"}, {"x", "x"}}})),
            RenewalPolicy::after_duration(3600));
}

TEST(Renewal, InconsistentProbeCarriesEvidence) {
  for (auto shape : {std::array<std::array<const char*, 2>, 3>{{{"c", "c"}, {"m", "m"}, {"m", "m"}}},
                     std::array<std::array<const char*, 2>, 3>{{{"c", "m"}, {"c", "x"}, {"c", "x"}}},
                     std::array<std::array<const char*, 2>, 3>{{{"x", "x"}, {"c", "c"}, {"x", "x"}}},
                     std::array<std::array<const char*, 2>, 3>{{{"c", "c"}, {"c", "c"}, {"c", "c"}}}}) {
    try {
      classify_renewal_policy(probe_of(shape));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::unclassifiable);
      EXPECT_NE(std::string(e.what()).find("gap=120 no-consume:"), std::string::npos);
    }
  }
}

// --- config and output ---------------------------------------------------

TEST(Config, ParsesKeys) {
  auto cfg = analysis_config_from(KvConfig::parse(
      "period_N = 10\nstatic_probe = 3, 7\nconst_seed_templates = c_rand:1, mt19937:5489\n"));
  EXPECT_EQ(cfg.period_N, 10u);
  EXPECT_EQ(cfg.static_confirm(), 10u);
  ASSERT_EQ(cfg.const_seed_templates.size(), 2u);
  EXPECT_EQ(cfg.const_seed_templates[1].algorithm, Algorithm::mt19937);
  EXPECT_EQ(cfg.const_seed_templates[1].seed, 5489u);
}

TEST(Config, RejectsInconsistentCounts) {
  EXPECT_THROW(analysis_config_from(KvConfig::parse("rule3_collect = 10\nrule3_sim_count = 50\n")), Error);
  EXPECT_THROW(analysis_config_from(KvConfig::parse("static_probe = 5\n")), Error);
  EXPECT_THROW(analysis_config_from(KvConfig::parse("const_seed_templates = nope\n")), Error);
}

TEST(Report, JsonShape) {
  auto report = analyze(repeat_code("1234", 20));
  auto j = to_json(report);
  EXPECT_EQ(j["violations"][0]["rule"], "R1");
  EXPECT_EQ(j["violations"][0]["evidence"]["last"], 19);
  EXPECT_TRUE(j["violations"][0]["chance_probability"].is_number());
  EXPECT_TRUE(j["notes"].is_array());
  EXPECT_EQ(j["config"]["period_N"], 624);
}

TEST(Report, SummaryLine) {
  Violation v;
  v.rule = Rule::R2_1;
  v.evidence.period = 624;
  EXPECT_EQ(summarize(v), "R2_1 detected, N=624");
}

}  // namespace
}  // namespace otplint
