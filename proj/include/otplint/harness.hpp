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

// An in-process OTP server with a simulated clock whose code generation
// reproduces known-weak server behaviour. Every code it issues is a pure
// function of the configuration, the request history and the clock,
// except under the `secure` profile.

#ifndef OTPLINT_HARNESS_HPP_
#define OTPLINT_HARNESS_HPP_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "otplint/error.hpp"
#include "otplint/kv_config.hpp"
#include "otplint/patterns.hpp"
#include "otplint/prng.hpp"
#include "otplint/renewal.hpp"

namespace otplint {

enum class ProfileKind {
  static_per_account,
  fixed_table,
  repeat_n,
  rotation,
  append_bit,
  insert_bit,
  parity,
  const_seed,
  timestamp_seed,
  secure,
};

inline std::string_view to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::static_per_account: return "static_per_account";
    case ProfileKind::fixed_table: return "fixed_table";
    case ProfileKind::repeat_n: return "repeat_n";
    case ProfileKind::rotation: return "rotation";
    case ProfileKind::append_bit: return "append_bit";
    case ProfileKind::insert_bit: return "insert_bit";
    case ProfileKind::parity: return "parity";
    case ProfileKind::const_seed: return "const_seed";
    case ProfileKind::timestamp_seed: return "timestamp_seed";
    case ProfileKind::secure: return "secure";
  }
  return "?";
}

inline ProfileKind parse_profile_kind(std::string_view s) {
  for (auto k : {ProfileKind::static_per_account, ProfileKind::fixed_table, ProfileKind::repeat_n,
                 ProfileKind::rotation, ProfileKind::append_bit, ProfileKind::insert_bit,
                 ProfileKind::parity, ProfileKind::const_seed, ProfileKind::timestamp_seed,
                 ProfileKind::secure})
    if (to_string(k) == s) return k;
  throw Error(Errc::config, "unknown profile '" + std::string(s) + "'");
}

inline constexpr std::string_view kDefaultSmsTemplate =
    "Your verification code is {code}. Valid for 5 minutes.";

/// A code generation recipe plus the server policies around it. Fields
/// that do not apply to `kind` are ignored.
struct VulnProfile {
  ProfileKind kind = ProfileKind::secure;
  int otp_length = 6;
  RenewalPolicy renewal = RenewalPolicy::per_request();
  std::optional<std::uint32_t> daily_quota = 20;
  std::string sms_template{kDefaultSmsTemplate};

  std::size_t table_n = 624;                     // fixed_table
  std::optional<PrngSpec> table_spec;            // fixed_table; MT19937(base seed) if unset
  std::size_t repeat = 2;                        // repeat_n
  int width = 17;                                // rotation
  RotationDirection direction = RotationDirection::anticlockwise;
  std::optional<std::uint64_t> start;            // rotation, append_bit, insert_bit
  std::size_t position = 1;                      // insert_bit
  ParityPattern parity = ParityPattern::all_even;
  PrngSpec spec = preset("c_rand");              // const_seed, timestamp_seed
  std::int64_t skew = 0;                         // timestamp_seed: seed = now + skew

  OtpFormat format() const { return OtpFormat(otp_length); }

  void validate() const {
    if (otp_length < 4 || otp_length > 8) throw Error(Errc::config, "otp_length must be in [4,8]");
    const std::uint64_t modulus = format().modulus();
    switch (kind) {
      case ProfileKind::fixed_table:
        if (table_n < 1) throw Error(Errc::config, "fixed_table needs N >= 1");
        if (table_spec) validate_spec(*table_spec);
        break;
      case ProfileKind::repeat_n:
        if (repeat < 2) throw Error(Errc::config, "repeat_n needs n >= 2");
        break;
      case ProfileKind::rotation:
        if (width < 2 || width > 63 || (std::uint64_t{1} << width) - 1 >= modulus)
          throw Error(Errc::config, "rotation width " + std::to_string(width) +
                                        " does not fit " + std::to_string(otp_length) + " digits");
        if (start && (*start == 0 || *start >= (std::uint64_t{1} << width)))
          throw Error(Errc::config, "rotation start must be nonzero and fit the width");
        break;
      case ProfileKind::append_bit:
        if (start && (*start == 0 || *start >= modulus))
          throw Error(Errc::config, "append_bit start must be in [1, 10^L)");
        break;
      case ProfileKind::insert_bit:
        if (position < 1 || position > 40) throw Error(Errc::config, "insert_bit position must be >= 1");
        if (start && (*start == 0 || *start >= modulus))
          throw Error(Errc::config, "insert_bit start must be in [1, 10^L)");
        break;
      case ProfileKind::const_seed:
      case ProfileKind::timestamp_seed:
        validate_spec(spec);
        if (spec.algorithm == Algorithm::os_csprng || spec.algorithm == Algorithm::lfib)
          throw Error(Errc::config, "profile needs a seedable generator");
        break;
      default:
        break;
    }
    if (renewal.kind == RenewalPolicy::Kind::after_duration && renewal.seconds <= 0)
      throw Error(Errc::config, "after_duration needs a positive duration");
    if (daily_quota && *daily_quota == 0) throw Error(Errc::config, "quota must be positive or off");
    const auto at = sms_template.find("{code}");
    if (at == std::string::npos || sms_template.find("{code}", at + 1) != std::string::npos)
      throw Error(Errc::config, "sms template needs exactly one {code}");
  }

  nlohmann::ordered_json descriptor() const {
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind);
    j["otp_length"] = otp_length;
    j["renewal"] = renewal.to_string();
    j["daily_quota"] = daily_quota ? nlohmann::ordered_json(*daily_quota) : nlohmann::ordered_json(nullptr);
    switch (kind) {
      case ProfileKind::fixed_table: j["N"] = table_n; break;
      case ProfileKind::repeat_n: j["n"] = repeat; break;
      case ProfileKind::rotation:
        j["width"] = width;
        j["direction"] = to_string(direction);
        break;
      case ProfileKind::insert_bit: j["position"] = position; break;
      case ProfileKind::parity: j["pattern"] = to_string(parity); break;
      case ProfileKind::const_seed:
        j["generator"] = spec.preset_name.empty() ? std::string(to_string(spec.algorithm)) : spec.preset_name;
        j["seed"] = spec.seed;
        break;
      case ProfileKind::timestamp_seed:
        j["generator"] = spec.preset_name.empty() ? std::string(to_string(spec.algorithm)) : spec.preset_name;
        j["skew"] = skew;
        break;
      default: break;
    }
    return j;
  }

 private:
  static void validate_spec(const PrngSpec& s) {
    try {
      otplint::validate(s);
    } catch (const Error& e) {
      throw Error(Errc::config, e.what());
    }
  }
};

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr std::int64_t kDefaultClockStart = 1767225600;  // 2026-01-01T00:00:00Z

struct ServerConfig {
  VulnProfile profile;
  std::uint64_t base_seed = 1;
  std::int64_t clock_start = kDefaultClockStart;
};

/// Reads a key-value server config. Generator keys (preset, algorithm,
/// seed, ...) describe the const_seed / timestamp_seed generator, or the
/// table generator for fixed_table.
inline ServerConfig server_config_from(const KvConfig& kv) {
  ServerConfig cfg;
  auto& p = cfg.profile;
  auto kind = kv.get("profile");
  if (!kind) throw Error(Errc::config, "server config needs 'profile'");
  p.kind = parse_profile_kind(*kind);
  if (auto v = kv.get_int("otp_length")) p.otp_length = static_cast<int>(*v);
  if (auto v = kv.get("renewal"))
    p.renewal = parse_renewal(*v, kv.get_int("renewal_seconds"));
  if (auto v = kv.get("quota")) {
    if (*v == "off" || *v == "none")
      p.daily_quota.reset();
    else
      p.daily_quota = static_cast<std::uint32_t>(parse_uint(*v));
  }
  if (auto v = kv.get("template")) p.sms_template = *v;
  if (auto v = kv.get_uint("N")) p.table_n = static_cast<std::size_t>(*v);
  if (auto v = kv.get_uint("n")) p.repeat = static_cast<std::size_t>(*v);
  if (auto v = kv.get_int("width")) p.width = static_cast<int>(*v);
  if (auto v = kv.get("direction")) p.direction = parse_rotation_direction(*v);
  if (auto v = kv.get_uint("start")) p.start = *v;
  if (auto v = kv.get_uint("position")) p.position = static_cast<std::size_t>(*v);
  if (auto v = kv.get("pattern")) p.parity = parse_parity_pattern(*v);
  if (auto v = kv.get_int("skew")) p.skew = *v;
  if (kv.has("preset") || kv.has("algorithm")) {
    auto spec = spec_from_config(kv).spec;
    if (p.kind == ProfileKind::fixed_table)
      p.table_spec = spec;
    else
      p.spec = spec;
  }
  if (auto v = kv.get_uint("base_seed")) cfg.base_seed = *v;
  if (auto v = kv.get_int("clock_start")) cfg.clock_start = *v;
  p.validate();
  return cfg;
}

/// Substitutes the code into a template with exactly one `{code}`.
inline std::string render_sms(std::string_view code, std::string_view tmpl = kDefaultSmsTemplate) {
  const auto at = tmpl.find("{code}");
  if (tmpl.empty() || at == std::string_view::npos)
    throw Error(Errc::template_error, "template has no {code} placeholder");
  if (tmpl.find("{code}", at + 1) != std::string_view::npos)
    throw Error(Errc::template_error, "template has more than one {code} placeholder");
  std::string out(tmpl.substr(0, at));
  out += code;
  out += tmpl.substr(at + 6);
  return out;
}

namespace detail {

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t account_hash(std::uint64_t base_seed, std::string_view account) {
  std::string key = std::to_string(base_seed) + ":";
  key += account;
  return fnv1a(key);
}

}  // namespace detail

/// Mutable per-account state. Guarded by its own mutex inside OtpServer.
struct AccountState {
  std::string account_id;
  std::string phone;
  std::optional<std::string> current_code;
  std::uint64_t issue_count = 0;
  std::uint32_t quota_used_today = 0;
  std::int64_t quota_day = 0;
  std::int64_t last_issue_time = 0;

  // Generation state.
  std::mt19937_64 rng;
  std::uint64_t value = 0;       // last pattern value (rotation, append, insert, repeat)
  std::uint64_t cursor = 0;      // codes generated so far
};

class OtpServer {
 public:
  explicit OtpServer(ServerConfig cfg) : cfg_(std::move(cfg)), now_(cfg_.clock_start) {
    cfg_.profile.validate();
    const auto fmt = cfg_.profile.format();
    if (cfg_.profile.kind == ProfileKind::fixed_table) {
      auto spec = cfg_.profile.table_spec.value_or(
          preset("mt19937").with_seed(cfg_.base_seed & 0xFFFFFFFFu));
      table_ = stream_codes(spec, cfg_.profile.table_n, fmt);
    }
    if (cfg_.profile.kind == ProfileKind::const_seed)
      global_gen_.emplace(make_generator(cfg_.profile.spec));
    if (cfg_.profile.kind == ProfileKind::secure) global_gen_.emplace(make_generator(preset("os_csprng")));
  }

  OtpServer(const OtpServer&) = delete;
  OtpServer& operator=(const OtpServer&) = delete;

  const ServerConfig& config() const { return cfg_; }
  const VulnProfile& profile() const { return cfg_.profile; }

  void register_account(const std::string& account_id, const std::string& phone = {}) {
    if (account_id.empty()) throw Error(Errc::config, "account id must not be empty");
    std::unique_lock lock(accounts_mu_);
    if (accounts_.count(account_id))
      throw Error(Errc::conflict, "account '" + account_id + "' already registered");
    auto st = std::make_unique<Slot>();
    st->state.account_id = account_id;
    st->state.phone = phone;
    st->state.quota_day = now_.load() / kSecondsPerDay;
    seed_account(st->state);
    accounts_.emplace(account_id, std::move(st));
  }

  bool has_account(const std::string& account_id) const {
    std::shared_lock lock(accounts_mu_);
    return accounts_.count(account_id) > 0;
  }

  /// Issues (or re-issues) the account's code and returns the SMS body.
  std::string request_otp(const std::string& account_id) {
    std::shared_lock clock_lock(clock_mu_);
    Slot& slot = find(account_id);
    std::lock_guard lock(slot.mu);
    AccountState& a = slot.state;
    const std::int64_t now = now_.load();
    const auto& p = cfg_.profile;

    if (a.quota_day != now / kSecondsPerDay) {
      a.quota_day = now / kSecondsPerDay;
      a.quota_used_today = 0;
    }
    if (p.daily_quota && a.quota_used_today >= *p.daily_quota)
      throw Error(Errc::quota, "daily quota of " + std::to_string(*p.daily_quota) + " reached for '" +
                                   account_id + "'");

    bool renew = !a.current_code.has_value();
    switch (p.renewal.kind) {
      case RenewalPolicy::Kind::per_request: renew = true; break;
      case RenewalPolicy::Kind::on_consume: break;
      case RenewalPolicy::Kind::after_duration:
        renew = renew || now - a.last_issue_time >= p.renewal.seconds;
        break;
    }
    if (renew) {
      a.current_code = next_code(a, now);
      a.last_issue_time = now;
      ++a.issue_count;
    }
    ++a.quota_used_today;
    return render_sms(*a.current_code, p.sms_template);
  }

  /// True iff `code` is the account's current code. A valid code is
  /// invalidated only under the on_consume policy.
  bool consume(const std::string& account_id, const std::string& code) {
    std::shared_lock clock_lock(clock_mu_);
    Slot& slot = find(account_id);
    std::lock_guard lock(slot.mu);
    AccountState& a = slot.state;
    const bool valid = a.current_code && *a.current_code == code;
    if (valid && cfg_.profile.renewal.kind == RenewalPolicy::Kind::on_consume) a.current_code.reset();
    return valid;
  }

  std::int64_t now() const { return now_.load(); }

  std::int64_t advance_clock(std::int64_t seconds) {
    if (seconds < 0) throw Error(Errc::range, "clock cannot move backwards");
    std::unique_lock lock(clock_mu_);
    return now_ += seconds;
  }

  /// Copy of one account's state, for tests and snapshots.
  AccountState account(const std::string& account_id) const {
    std::shared_lock lock(accounts_mu_);
    auto it = accounts_.find(account_id);
    if (it == accounts_.end()) throw Error(Errc::not_found, "unknown account '" + account_id + "'");
    std::lock_guard slot_lock(it->second->mu);
    return it->second->state;
  }

  /// Serializes the clock and every account. Restoring into a server with
  /// the same config continues the same code streams.
  nlohmann::ordered_json snapshot() const {
    std::unique_lock clock_lock(clock_mu_);
    std::shared_lock lock(accounts_mu_);
    nlohmann::ordered_json j;
    j["now"] = now_.load();
    j["global_draws"] = global_draws_;
    j["accounts"] = nlohmann::ordered_json::array();
    for (const auto& [id, slot] : accounts_) {
      std::lock_guard slot_lock(slot->mu);
      const auto& a = slot->state;
      std::ostringstream rng;
      rng << a.rng;
      nlohmann::ordered_json aj;
      aj["account_id"] = a.account_id;
      aj["phone"] = a.phone;
      aj["current_code"] = a.current_code ? nlohmann::ordered_json(*a.current_code) : nlohmann::ordered_json(nullptr);
      aj["issue_count"] = a.issue_count;
      aj["quota_used_today"] = a.quota_used_today;
      aj["quota_day"] = a.quota_day;
      aj["last_issue_time"] = a.last_issue_time;
      aj["rng"] = rng.str();
      aj["value"] = a.value;
      aj["cursor"] = a.cursor;
      j["accounts"].push_back(aj);
    }
    return j;
  }

  void restore(const nlohmann::json& j) {
    std::unique_lock clock_lock(clock_mu_);
    std::unique_lock lock(accounts_mu_);
    try {
      now_ = j.at("now").get<std::int64_t>();
      const auto draws = j.at("global_draws").get<std::uint64_t>();
      if (cfg_.profile.kind == ProfileKind::const_seed) {
        global_gen_.emplace(make_generator(cfg_.profile.spec));
        for (std::uint64_t i = 0; i < draws; ++i) draw_otp(*global_gen_, cfg_.profile.format());
      }
      global_draws_ = draws;
      accounts_.clear();
      for (const auto& aj : j.at("accounts")) {
        auto slot = std::make_unique<Slot>();
        auto& a = slot->state;
        a.account_id = aj.at("account_id").get<std::string>();
        a.phone = aj.at("phone").get<std::string>();
        if (!aj.at("current_code").is_null()) a.current_code = aj.at("current_code").get<std::string>();
        a.issue_count = aj.at("issue_count").get<std::uint64_t>();
        a.quota_used_today = aj.at("quota_used_today").get<std::uint32_t>();
        a.quota_day = aj.at("quota_day").get<std::int64_t>();
        a.last_issue_time = aj.at("last_issue_time").get<std::int64_t>();
        std::istringstream rng(aj.at("rng").get<std::string>());
        rng >> a.rng;
        a.value = aj.at("value").get<std::uint64_t>();
        a.cursor = aj.at("cursor").get<std::uint64_t>();
        accounts_.emplace(a.account_id, std::move(slot));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::schema, std::string("bad snapshot: ") + e.what());
    }
  }

 private:
  struct Slot {
    mutable std::mutex mu;
    AccountState state;
  };

  Slot& find(const std::string& account_id) {
    std::shared_lock lock(accounts_mu_);
    auto it = accounts_.find(account_id);
    if (it == accounts_.end()) throw Error(Errc::not_found, "unknown account '" + account_id + "'");
    return *it->second;
  }

  void seed_account(AccountState& a) const {
    const std::uint64_t h = detail::account_hash(cfg_.base_seed, a.account_id);
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(cfg_.base_seed),
                      static_cast<std::uint32_t>(cfg_.base_seed >> 32)};
    a.rng.seed(seq);
  }

  std::uint64_t random_below(AccountState& a, std::uint64_t bound) const { return a.rng() % bound; }

  std::string next_code(AccountState& a, std::int64_t now) {
    const auto& p = cfg_.profile;
    const auto fmt = p.format();
    const std::uint64_t modulus = fmt.modulus();
    const std::uint64_t i = a.cursor++;
    switch (p.kind) {
      case ProfileKind::static_per_account:
        return format_code(detail::account_hash(cfg_.base_seed, a.account_id) % modulus, fmt);

      case ProfileKind::fixed_table:
        return table_[i % table_.size()];

      case ProfileKind::repeat_n:
        if (i % p.repeat == 0) {
          const auto previous = a.value;
          do a.value = random_below(a, modulus);
          while (i > 0 && a.value == previous);
        }
        return format_code(a.value, fmt);

      case ProfileKind::rotation: {
        const std::uint64_t mask = (std::uint64_t{1} << p.width) - 1;
        if (i == 0) {
          a.value = p.start ? *p.start
                            : (std::uint64_t{1} << (p.width - 1)) | random_below(a, mask >> 1);
        } else if (p.direction == RotationDirection::anticlockwise) {
          a.value = ((a.value << 1) | (a.value >> (p.width - 1))) & mask;
        } else {
          a.value = (a.value >> 1) | ((a.value & 1) << (p.width - 1));
        }
        return format_code(a.value, fmt);
      }

      case ProfileKind::append_bit:
        if (i == 0)
          a.value = p.start ? *p.start : 1 + random_below(a, 255);
        else
          a.value = (2 * a.value + (a.rng() & 1)) % modulus;
        return format_code(a.value, fmt);

      case ProfileKind::insert_bit: {
        if (i == 0) {
          a.value = p.start ? *p.start
                            : (std::uint64_t{1} << p.position) | random_below(a, std::uint64_t{1} << p.position);
        } else {
          const std::uint64_t low = a.value & ((std::uint64_t{1} << p.position) - 1);
          a.value = (((a.value >> p.position) << (p.position + 1)) | ((a.rng() & 1) << p.position) | low) %
                    modulus;
        }
        return format_code(a.value, fmt);
      }

      case ProfileKind::parity: {
        std::uint64_t v = random_below(a, modulus);
        const bool odd = p.parity == ParityPattern::all_odd ||
                         (p.parity == ParityPattern::alternating && (i & 1));
        v = odd ? (v | 1) : (v & ~std::uint64_t{1});
        return format_code(v, fmt);
      }

      case ProfileKind::const_seed:
      case ProfileKind::secure: {
        std::lock_guard lock(global_mu_);
        ++global_draws_;
        return draw_otp(*global_gen_, fmt);
      }

      case ProfileKind::timestamp_seed: {
        const std::int64_t seed = now + p.skew;
        if (seed < 0) throw Error(Errc::range, "clock plus skew is negative");
        auto gen = make_generator(p.spec.with_seed(static_cast<std::uint64_t>(seed)));
        return draw_otp(gen, fmt);
      }
    }
    throw Error(Errc::config, "unhandled profile");
  }

  ServerConfig cfg_;
  std::vector<std::string> table_;

  mutable std::shared_mutex clock_mu_;  // exclusive for clock moves and snapshots
  std::atomic<std::int64_t> now_;

  mutable std::shared_mutex accounts_mu_;
  std::map<std::string, std::unique_ptr<Slot>> accounts_;

  std::mutex global_mu_;
  std::optional<GeneratorState> global_gen_;
  std::uint64_t global_draws_ = 0;
};

}  // namespace otplint

#endif  // OTPLINT_HARNESS_HPP_
