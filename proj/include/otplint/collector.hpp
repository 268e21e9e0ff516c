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

// Client side of the measurement: drives login requests against a target,
// extracts codes from SMS text and assembles OtpSequences under a request
// budget and pacing interval. Also runs the renewal probe matrix.

#ifndef OTPLINT_COLLECTOR_HPP_
#define OTPLINT_COLLECTOR_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "otplint/error.hpp"
#include "otplint/harness.hpp"
#include "otplint/renewal.hpp"
#include "otplint/sequence.hpp"

namespace otplint {

/// Longest maximal run of 4 to 8 decimal digits; the first one on ties.
inline std::string parse_sms(std::string_view text) {
  std::string_view best;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] < '0' || text[i] > '9') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    const std::size_t len = j - i;
    if (len >= 4 && len <= 8 && len > best.size()) best = text.substr(i, len);
    i = j;
  }
  if (best.empty()) throw ExtractionError(std::string(text));
  return std::string(best);
}

struct OtpResponse {
  std::string sms;
  std::optional<std::int64_t> server_time;
};

/// What the collector talks to. Implementations raise Error with
/// Errc::quota, Errc::not_found, Errc::conflict or Errc::transport.
class Target {
 public:
  virtual ~Target() = default;
  virtual void register_account(const std::string& account_id, const std::string& phone) = 0;
  virtual OtpResponse request_otp(const std::string& account_id) = 0;
  virtual bool consume(const std::string& account_id, const std::string& code) = 0;
  /// Whether advance_clock() moves the server's notion of time.
  virtual bool has_clock() const = 0;
  virtual std::int64_t advance_clock(std::int64_t seconds) = 0;
  virtual std::int64_t now() = 0;
};

class InProcessTarget : public Target {
 public:
  explicit InProcessTarget(OtpServer& server) : server_(server) {}

  void register_account(const std::string& id, const std::string& phone) override {
    server_.register_account(id, phone);
  }
  OtpResponse request_otp(const std::string& id) override {
    return {server_.request_otp(id), server_.now()};
  }
  bool consume(const std::string& id, const std::string& code) override { return server_.consume(id, code); }
  bool has_clock() const override { return true; }
  std::int64_t advance_clock(std::int64_t s) override { return server_.advance_clock(s); }
  std::int64_t now() override { return server_.now(); }

 private:
  OtpServer& server_;
};

/// Talks to the HTTP harness, or to any server exposing the same routes.
/// Without clock control, advance_clock() is refused and now() is the
/// local wall clock.
class HttpTarget : public Target {
 public:
  HttpTarget(const std::string& host, int port, bool clock_control = true, int timeout_seconds = 5)
      : client_(host, port), clock_control_(clock_control) {
    client_.set_connection_timeout(timeout_seconds);
    client_.set_read_timeout(timeout_seconds);
  }

  void register_account(const std::string& id, const std::string& phone) override {
    post("/accounts", {{"account_id", id}, {"phone", phone}});
  }
  OtpResponse request_otp(const std::string& id) override {
    auto j = post("/otp/request", {{"account_id", id}});
    OtpResponse r{j.at("sms").get<std::string>(), std::nullopt};
    if (j.contains("now")) r.server_time = j.at("now").get<std::int64_t>();
    return r;
  }
  bool consume(const std::string& id, const std::string& code) override {
    return post("/otp/consume", {{"account_id", id}, {"code", code}}).at("valid").get<bool>();
  }
  bool has_clock() const override { return clock_control_; }
  std::int64_t advance_clock(std::int64_t s) override {
    if (!clock_control_) throw Error(Errc::config, "target clock is not controllable");
    return post("/clock/advance", {{"seconds", s}}).at("now").get<std::int64_t>();
  }
  std::int64_t now() override {
    if (!clock_control_)
      return std::chrono::duration_cast<std::chrono::seconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    auto res = client_.Get("/clock");
    return check(res, "/clock").at("now").get<std::int64_t>();
  }

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body) {
    auto res = client_.Post(path, body.dump(), "application/json");
    return check(res, path);
  }

  static nlohmann::json check(const httplib::Result& res, const std::string& path) {
    if (!res) throw Error(Errc::transport, path + ": " + httplib::to_string(res.error()));
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      throw Error(Errc::transport, path + ": malformed response body");
    }
    if (res->status / 100 == 2) return j;
    const std::string msg = path + ": " + j.value("message", std::string("HTTP ") + std::to_string(res->status));
    switch (res->status) {
      case 429: throw Error(Errc::quota, msg);
      case 404: throw Error(Errc::not_found, msg);
      case 409: throw Error(Errc::conflict, msg);
      default: throw Error(Errc::transport, msg);
    }
  }

  httplib::Client client_;
  bool clock_control_;
};

inline constexpr std::size_t kDefaultBudgetCap = 1000;
inline constexpr int kTransportRetries = 3;

struct CollectPlan {
  std::string account_id = "victim";
  std::string phone = "+10000000000";
  std::size_t count = 20;
  std::int64_t interval = 60;  // seconds between requests
  bool consume_each = false;
  std::size_t budget_cap = kDefaultBudgetCap;
  bool lift_cap = false;
  bool register_account = true;  // an existing account is reused

  void validate(std::size_t already_made = 0) const {
    if (interval < 0) throw Error(Errc::range, "interval must be >= 0");
    if (!lift_cap && already_made + count > budget_cap)
      throw Error(Errc::range, "plan needs " + std::to_string(already_made + count) +
                                   " requests, budget cap is " + std::to_string(budget_cap));
  }
};

struct CollectResult {
  std::vector<OtpRecord> records;
  std::vector<std::string> notes;
  std::size_t requests_made = 0;
  bool truncated = false;  // stopped on the server's quota

  OtpSequence sequence(OtpFormat fmt, std::string source = {}) const {
    return OtpSequence(records, fmt, std::move(source));
  }
  /// Code length taken from the first record.
  OtpSequence sequence(std::string source = {}) const {
    if (records.empty()) throw Error(Errc::insufficient_data, "no codes collected");
    return sequence(OtpFormat(static_cast<int>(records.front().code.size())), std::move(source));
  }
};

using Sleeper = std::function<void(std::int64_t seconds)>;

inline void real_sleep(std::int64_t seconds) { std::this_thread::sleep_for(std::chrono::seconds(seconds)); }

namespace detail {

template <typename F>
auto with_retries(F&& call, std::vector<std::string>& notes, const std::string& what) {
  for (int attempt = 0;; ++attempt) {
    try {
      return call();
    } catch (const Error& e) {
      if (e.code() != Errc::transport) throw;
      if (attempt == kTransportRetries)
        throw Error(Errc::transport, what + " failed after " + std::to_string(kTransportRetries) +
                                         " retries: " + e.what());
      notes.push_back(what + ": transport error, retry " + std::to_string(attempt + 1) + ": " + e.what());
    }
  }
}

inline void wait(Target& target, std::int64_t seconds, const Sleeper& sleeper) {
  if (seconds == 0) return;
  if (target.has_clock())
    target.advance_clock(seconds);
  else
    sleeper(seconds);
}

}  // namespace detail

/// Continues a collection: issues plan.count more requests, pacing
/// plan.interval seconds between consecutive requests.
inline void collect_more(Target& target, const CollectPlan& plan, CollectResult& acc,
                         const Sleeper& sleeper = real_sleep) {
  plan.validate(acc.requests_made);
  if (acc.truncated) return;
  if (plan.register_account && acc.requests_made == 0) {
    try {
      detail::with_retries([&] { target.register_account(plan.account_id, plan.phone); return 0; },
                           acc.notes, "register");
    } catch (const Error& e) {
      if (e.code() != Errc::conflict) throw;
    }
  }
  for (std::size_t i = 0; i < plan.count; ++i) {
    const std::size_t index = acc.requests_made;
    if (index > 0) detail::wait(target, plan.interval, sleeper);
    OtpResponse resp;
    try {
      resp = detail::with_retries([&] { return target.request_otp(plan.account_id); }, acc.notes,
                                  "request " + std::to_string(index));
    } catch (const Error& e) {
      if (e.code() != Errc::quota) throw;
      acc.truncated = true;
      acc.notes.push_back("truncated: quota reached after " + std::to_string(index) + " requests");
      return;
    }
    ++acc.requests_made;
    OtpRecord rec;
    rec.index = index;
    rec.account_id = plan.account_id;
    rec.request_time = resp.server_time ? *resp.server_time : target.now();
    try {
      rec.code = parse_sms(resp.sms);
    } catch (const ExtractionError& e) {
      acc.notes.push_back("request " + std::to_string(index) + ": " + e.what());
      continue;
    }
    if (!acc.records.empty() && acc.records.front().code.size() != rec.code.size()) {
      acc.notes.push_back("request " + std::to_string(index) + ": code length changed, record skipped");
      continue;
    }
    if (plan.consume_each)
      rec.consumed = detail::with_retries([&] { return target.consume(plan.account_id, rec.code); },
                                          acc.notes, "consume " + std::to_string(index));
    acc.records.push_back(std::move(rec));
  }
}

inline CollectResult collect(Target& target, const CollectPlan& plan, const Sleeper& sleeper = real_sleep) {
  CollectResult acc;
  collect_more(target, plan, acc, sleeper);
  return acc;
}

/// Six requests per (gap, arm) cell, gaps of 2, 20 and 60 minutes, with
/// and without consuming each code. With a controllable clock every cell
/// starts at the next midnight so the daily quota is fresh.
inline RenewalProbeResult run_renewal_probe(Target& target, const std::string& account_id,
                                            const Sleeper& sleeper = real_sleep) {
  RenewalProbeResult out;
  try {
    target.register_account(account_id, "+10000000000");
  } catch (const Error& e) {
    if (e.code() != Errc::conflict) throw;
  }
  std::vector<std::string> ignored;
  for (std::size_t g = 0; g < kProbeGaps.size(); ++g) {
    for (auto arm : {ProbeArm::no_consume, ProbeArm::consume}) {
      if (target.has_clock()) {
        const std::int64_t now = target.now();
        target.advance_clock(kSecondsPerDay - now % kSecondsPerDay);
      }
      auto& cell = out.at(g, arm);
      for (std::size_t r = 0; r < kProbeRequestsPerCell; ++r) {
        if (r > 0) detail::wait(target, kProbeGaps[g], sleeper);
        std::string sms;
        try {
          sms = detail::with_retries([&] { return target.request_otp(account_id).sms; }, ignored, "probe");
        } catch (const Error& e) {
          if (e.code() != Errc::quota) throw;
          break;
        }
        try {
          cell.codes.push_back(parse_sms(sms));
        } catch (const ExtractionError&) {
          break;
        }
        if (arm == ProbeArm::consume) target.consume(account_id, cell.codes.back());
      }
      cell.complete = cell.codes.size() == kProbeRequestsPerCell;
    }
  }
  return out;
}

}  // namespace otplint

#endif  // OTPLINT_COLLECTOR_HPP_
