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


#include "otplint/collector.hpp"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "otplint/harness_http.hpp"
#include "otplint/rules.hpp"

namespace otplint {
namespace {

// Brute force: every maximal digit run, filtered and ranked by the rule.
std::optional<std::string> parse_oracle(const std::string& text) {
  std::vector<std::string> runs;
  std::string cur;
  for (char c : text + "x") {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!cur.empty()) {
      runs.push_back(cur);
      cur.clear();
    }
  }
  std::optional<std::string> best;
  for (const auto& r : runs)
    if (r.size() >= 4 && r.size() <= 8 && (!best || r.size() > best->size())) best = r;
  return best;
}

TEST(ParseSms, Examples) {
  EXPECT_EQ(parse_sms("Your verification code is 081642. Valid for 5 minutes."), "081642");
  EXPECT_EQ(parse_sms("Ref 77: code 1234"), "1234");
  EXPECT_EQ(parse_sms("codes 12345 and 123456"), "123456");
  EXPECT_EQ(parse_sms("1111 then 2222"), "1111");
  EXPECT_EQ(parse_sms("call 123456789 or use 4321"), "4321");
}

TEST(ParseSms, NoCodeCarriesRawText) {
  try {
    parse_sms("Ref 77, see 123456789");
    FAIL();
  } catch (const ExtractionError& e) {
    EXPECT_EQ(e.raw_text(), "Ref 77, see 123456789");
    EXPECT_EQ(e.code(), Errc::extraction);
  }
}

TEST(ParseSms, AgreesWithOracle) {
  std::mt19937 rng(17);
  const std::string alphabet = "0123456789 .:-abc";
  for (int trial = 0; trial < 5000; ++trial) {
    std::string text;
    const int len = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    auto expect = parse_oracle(text);
    if (expect) {
      EXPECT_EQ(parse_sms(text), *expect) << text;
    } else {
      EXPECT_THROW(parse_sms(text), ExtractionError) << text;
    }
  }
}

// Scripted target that counts calls and can fail on demand.
class FakeTarget : public Target {
 public:
  std::vector<std::string> script;  // SMS per request; cycled
  int transport_failures = 0;       // the next N calls fail
  int quota_after = -1;
  bool clock = true;
  int requests = 0, registrations = 0, consumes = 0;
  std::int64_t t = 1000;

  void register_account(const std::string&, const std::string&) override { ++registrations; }
  OtpResponse request_otp(const std::string&) override {
    if (transport_failures > 0) {
      --transport_failures;
      throw Error(Errc::transport, "connection reset");
    }
    if (quota_after >= 0 && requests >= quota_after) throw Error(Errc::quota, "quota");
    return {script[static_cast<std::size_t>(requests++) % script.size()], clock ? std::optional(t) : std::nullopt};
  }
  bool consume(const std::string&, const std::string&) override {
    ++consumes;
    return true;
  }
  bool has_clock() const override { return clock; }
  std::int64_t advance_clock(std::int64_t s) override { return t += s; }
  std::int64_t now() override { return t; }
};

TEST(Collect, BudgetCheckedBeforeAnyRequest) {
  FakeTarget target;
  target.script = {"code 123456"};
  CollectPlan plan;
  plan.count = 1001;
  try {
    collect(target, plan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::range);
  }
  EXPECT_EQ(target.requests + target.registrations, 0);
  plan.lift_cap = true;
  EXPECT_EQ(collect(target, plan).records.size(), 1001u);
}

TEST(Collect, PacesOnSimulatedClock) {
  FakeTarget target;
  target.script = {"code 123456", "code 654321"};
  CollectPlan plan;
  plan.count = 5;
  auto result = collect(target, plan, [](std::int64_t) { FAIL() << "slept"; });
  ASSERT_EQ(result.records.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(result.records[i].index, i);
    EXPECT_EQ(result.records[i].request_time, 1000 + 60 * static_cast<std::int64_t>(i));
  }
}

TEST(Collect, SleepsWithoutClockControl) {
  FakeTarget target;
  target.clock = false;
  target.script = {"code 123456"};
  std::vector<std::int64_t> sleeps;
  CollectPlan plan;
  plan.count = 4;
  plan.interval = 7;
  collect(target, plan, [&](std::int64_t s) { sleeps.push_back(s); });
  EXPECT_EQ(sleeps, (std::vector<std::int64_t>{7, 7, 7}));
}

TEST(Collect, RetriesTransportErrors) {
  FakeTarget target;
  target.script = {"code 123456"};
  target.transport_failures = 3;
  CollectPlan plan;
  plan.count = 2;
  auto result = collect(target, plan);
  EXPECT_EQ(result.records.size(), 2u);
  EXPECT_EQ(result.notes.size(), 3u);

  target.transport_failures = 4;
  try {
    collect(target, plan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::transport);
    EXPECT_NE(std::string(e.what()).find("after 3 retries"), std::string::npos);
  }
}

TEST(Collect, ExtractionFailureSkipsRecord) {
  FakeTarget target;
  target.script = {"code 111111", "code 222222", "system busy", "code 444444"};
  CollectPlan plan;
  plan.count = 4;
  auto result = collect(target, plan);
  ASSERT_EQ(result.records.size(), 3u);
  EXPECT_EQ(result.records[2].index, 3u);
  EXPECT_EQ(result.records[2].code, "444444");
  ASSERT_EQ(result.notes.size(), 1u);
  EXPECT_NE(result.notes[0].find("system busy"), std::string::npos);
}

TEST(Collect, QuotaTruncates) {
  FakeTarget target;
  target.script = {"code 123456"};
  target.quota_after = 20;
  CollectPlan plan;
  plan.count = 30;
  auto result = collect(target, plan);
  EXPECT_TRUE(result.truncated);
  EXPECT_EQ(result.records.size(), 20u);
  EXPECT_EQ(result.notes.back(), "truncated: quota reached after 20 requests");
}

TEST(Collect, ConsumeEach) {
  FakeTarget target;
  target.script = {"code 123456"};
  CollectPlan plan;
  plan.count = 3;
  plan.consume_each = true;
  auto result = collect(target, plan);
  EXPECT_EQ(target.consumes, 3);
  EXPECT_TRUE(result.records[0].consumed);
}

ServerConfig harness(ProfileKind kind, RenewalPolicy renewal = RenewalPolicy::per_request()) {
  ServerConfig cfg;
  cfg.profile.kind = kind;
  cfg.profile.renewal = renewal;
  cfg.base_seed = 11;
  return cfg;
}

TEST(Collect, StaticProfileGivesIdenticalRecords) {
  OtpServer server(harness(ProfileKind::static_per_account));
  InProcessTarget target(server);
  CollectPlan plan;
  plan.count = 20;
  auto seq = collect(target, plan).sequence();
  ASSERT_EQ(seq.size(), 20u);
  for (const auto& r : seq.records()) EXPECT_EQ(r.code, seq[0].code);
}

TEST(Collect, FixedTableHalvesMatch) {
  auto cfg = harness(ProfileKind::fixed_table);
  cfg.profile.daily_quota.reset();
  OtpServer server(cfg);
  InProcessTarget target(server);
  CollectPlan plan;
  plan.count = 1248;
  plan.lift_cap = true;
  auto seq = collect(target, plan).sequence();
  ASSERT_EQ(seq.size(), 1248u);
  for (std::size_t i = 0; i < 624; ++i) ASSERT_EQ(seq[i].code, seq[i + 624].code);
}

TEST(Collect, DailyQuotaStopsDefaultPlanAtTwenty) {
  OtpServer server(harness(ProfileKind::secure));
  InProcessTarget target(server);
  CollectPlan plan;
  plan.count = 40;
  plan.interval = 60;
  auto result = collect(target, plan);
  EXPECT_TRUE(result.truncated);
  EXPECT_EQ(result.records.size(), 20u);
}

TEST(Collect, ContinuesAcrossBatches) {
  OtpServer server(harness(ProfileKind::parity));
  InProcessTarget target(server);
  CollectPlan plan;
  plan.count = 5;
  CollectResult acc;
  collect_more(target, plan, acc);
  plan.count = 10;
  collect_more(target, plan, acc);
  auto seq = acc.sequence();
  ASSERT_EQ(seq.size(), 15u);
  EXPECT_EQ(seq[14].index, 14u);
  EXPECT_EQ(*seq[5].request_time - *seq[4].request_time, 60);
}

TEST(Collect, OverHttp) {
  auto cfg = harness(ProfileKind::repeat_n);
  cfg.profile.repeat = 3;
  OtpServer server(cfg);
  HttpHarness http(server);
  HttpTarget target("127.0.0.1", http.start());
  CollectPlan plan;
  plan.count = 12;
  auto seq = collect(target, plan).sequence();
  auto v = check_consecutive_repeats(seq);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->evidence.repeat_count, 3u);
  EXPECT_EQ(*seq[11].request_time - *seq[0].request_time, 11 * 60);
}

TEST(Collect, UnreachableTargetIsTransportError) {
  HttpTarget target("127.0.0.1", 1, true, 1);
  CollectPlan plan;
  plan.count = 1;
  try {
    collect(target, plan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::transport);
  }
}

TEST(RenewalProbe, ClassifiesHarnessPolicies) {
  for (auto policy : {RenewalPolicy::per_request(), RenewalPolicy::on_consume(),
                      RenewalPolicy::after_duration(1200), RenewalPolicy::after_duration(3600)}) {
    OtpServer server(harness(ProfileKind::secure, policy));
    InProcessTarget target(server);
    auto probe = run_renewal_probe(target, "probe");
    ASSERT_TRUE(probe.complete());
    EXPECT_EQ(classify_renewal_policy(probe), policy) << probe.describe();
  }
}

TEST(RenewalProbe, CellShapes) {
  OtpServer server(harness(ProfileKind::secure, RenewalPolicy::after_duration(1200)));
  InProcessTarget target(server);
  auto probe = run_renewal_probe(target, "probe");
  const auto& two_min = probe.at(0, ProbeArm::no_consume).codes;
  EXPECT_EQ(std::set<std::string>(two_min.begin(), two_min.end()).size(), 1u);
  const auto& hour = probe.at(2, ProbeArm::no_consume).codes;
  EXPECT_EQ(std::set<std::string>(hour.begin(), hour.end()).size(), 6u);
}

TEST(RenewalProbe, QuotaLeavesPartialCells) {
  auto cfg = harness(ProfileKind::secure);
  cfg.profile.daily_quota = 4;
  OtpServer server(cfg);
  InProcessTarget target(server);
  auto probe = run_renewal_probe(target, "probe");
  EXPECT_FALSE(probe.complete());
  EXPECT_EQ(probe.at(1, ProbeArm::consume).codes.size(), 4u);
  EXPECT_NE(probe.describe().find("(incomplete)"), std::string::npos);
}

}  // namespace
}  // namespace otplint
