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

// Attacks that rebuild generator state, parameters or seeds from observed
// outputs: MT19937 untempering and cloning, LCG parameter algebra, the 2^16
// low-bit search on java.util.Random, and seed brute force over OTP codes.

#ifndef OTPLINT_RECOVERY_HPP_
#define OTPLINT_RECOVERY_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "otplint/error.hpp"
#include "otplint/prng.hpp"

namespace otplint {

template <typename T>
struct RecoveryResult {
  std::vector<T> recovered;
  std::uint64_t trials_examined = 0;
  std::size_t verification_depth = 0;

  bool found() const { return !recovered.empty(); }
};

/// Inclusive integer seed range.
struct SeedSearchSpace {
  std::uint64_t lower = 0;
  std::uint64_t upper = (std::uint64_t{1} << 24) - 1;

  SeedSearchSpace() = default;
  SeedSearchSpace(std::uint64_t lo, std::uint64_t hi) : lower(lo), upper(hi) {
    if (lo > hi) throw Error(Errc::range, "seed space lower bound exceeds upper bound");
  }

  static SeedSearchSpace around(std::uint64_t center, std::uint64_t window) {
    std::uint64_t lo = center >= window ? center - window : 0;
    std::uint64_t hi = UINT64_MAX - center >= window ? center + window : UINT64_MAX;
    return {lo, hi};
  }

  std::uint64_t size() const { return upper - lower + 1; }  // wraps for the full range
};

// ---------------------------------------------------------------------------
// MT19937

inline constexpr std::uint32_t mt_untemper(std::uint32_t y) {
  y ^= y >> 18;
  {
    std::uint32_t x = y;
    for (int i = 0; i < 3; ++i) x = y ^ ((x << 15) & 0xEFC60000u);
    y = x;
  }
  {
    std::uint32_t x = y;
    for (int i = 0; i < 5; ++i) x = y ^ ((x << 7) & 0x9D2C5680u);
    y = x;
  }
  return y ^ (y >> 11) ^ (y >> 22);
}

/// Rebuilds the full generator from 624 consecutive outputs. The clone's
/// next output is the one following the last supplied value.
inline GeneratorState mt_clone(std::span<const std::uint32_t> outputs) {
  if (outputs.size() != MtState::kWords)
    throw Error(Errc::shape, "mt_clone needs exactly 624 outputs, got " +
                                 std::to_string(outputs.size()));
  MtState s;
  std::transform(outputs.begin(), outputs.end(), s.words.begin(), mt_untemper);
  s.index = MtState::kWords;
  return GeneratorState(s);
}

// ---------------------------------------------------------------------------
// LCG parameters from raw states

struct LcgCandidate {
  std::uint64_t a = 0;
  std::uint64_t c = 0;
  bool operator==(const LcgCandidate&) const = default;
};

struct LcgRecovery {
  std::vector<LcgCandidate> candidates;  // ascending by a
  std::uint64_t gcd = 1;                 // gcd(s2 - s1, m); 1 means unique
  std::size_t verification_depth = 0;
};

namespace detail {

inline std::uint64_t submod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  x %= m;
  y %= m;
  return x >= y ? x - y : m - (y - x);
}

// Inverse of x modulo m, x and m coprime.
inline std::uint64_t invmod(std::uint64_t x, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = x % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

}  // namespace detail

/// Solves a*(s2-s1) = (s3-s2) mod m. When s2-s1 shares a factor g with m
/// there are g solutions; all of them are returned unless g exceeds
/// `max_candidates`, which raises AmbiguousError carrying g.
inline LcgRecovery lcg_recover_params(std::span<const std::uint64_t> outputs, std::uint64_t m,
                                      std::uint64_t max_candidates = std::uint64_t{1} << 20) {
  if (outputs.size() < 3)
    throw Error(Errc::shape, "need at least 3 consecutive states, got " +
                                 std::to_string(outputs.size()));
  if (m < 2) throw Error(Errc::range, "modulus must be >= 2");
  for (auto v : outputs)
    if (v >= m) throw Error(Errc::range, "observed state exceeds modulus");

  const std::uint64_t d1 = detail::submod(outputs[1], outputs[0], m);
  const std::uint64_t d2 = detail::submod(outputs[2], outputs[1], m);
  const std::uint64_t g = std::gcd(d1, m);  // gcd(0, m) = m
  if (d2 % g != 0)
    throw Error(Errc::not_this_generator, "no (a, c) maps these states under modulus " +
                                              std::to_string(m));
  if (g > max_candidates)
    throw AmbiguousError(g, "s2 - s1 shares factor " + std::to_string(g) +
                                " with m; too many candidates");

  const std::uint64_t reduced_m = m / g;
  const std::uint64_t base =
      reduced_m == 1 ? 0
                     : detail::mulmod_add(d2 / g, detail::invmod(d1 / g, reduced_m), 0, reduced_m);
  LcgRecovery out;
  out.gcd = g;
  for (std::uint64_t k = 0; k < g; ++k) {
    const std::uint64_t a = base + k * reduced_m;
    const std::uint64_t c = detail::submod(outputs[1], detail::mulmod_add(a, outputs[0], 0, m), m);
    bool consistent = true;
    for (std::size_t i = 1; i < outputs.size() && consistent; ++i)
      consistent = detail::mulmod_add(a, outputs[i - 1], c, m) == outputs[i];
    if (consistent) out.candidates.push_back({a, c});
  }
  if (out.candidates.empty())
    throw Error(Errc::not_this_generator, "no (a, c) reproduces all supplied states");
  out.verification_depth = outputs.size();
  return out;
}

// ---------------------------------------------------------------------------
// java.util.Random: 48-bit LCG observed through its top 32 bits

/// Recovers the 48-bit state that emitted `o1` by scanning its 16 hidden
/// low bits. Each recovered value is the state *after* producing o1; feed
/// it to java_predictor() to continue the stream at o2.
inline RecoveryResult<std::uint64_t> java_state_recover(std::uint32_t o1, std::uint32_t o2,
                                                        std::optional<std::uint32_t> o3 = {}) {
  const LcgParams params = *preset("java_lcg").lcg();
  RecoveryResult<std::uint64_t> out;
  for (std::uint64_t low = 0; low < (1u << 16); ++low) {
    ++out.trials_examined;
    const std::uint64_t s1 = (std::uint64_t{o1} << 16) | low;
    const std::uint64_t s2 = detail::mulmod_add(params.a, s1, params.c, params.m);
    if ((s2 >> 16) != o2) continue;
    if (o3) {
      const std::uint64_t s3 = detail::mulmod_add(params.a, s2, params.c, params.m);
      if ((s3 >> 16) != *o3) continue;
    }
    out.recovered.push_back(s1);
  }
  if (out.recovered.empty())
    throw Error(Errc::not_this_generator, "no 48-bit state produces this output pair");
  // Replay check: every candidate must regenerate the observations.
  for (auto s : out.recovered) {
    auto gen = lcg_at_state(params, s);
    if (gen.next() != o2 || (o3 && gen.next() != *o3))
      throw Error(Errc::not_this_generator, "internal replay mismatch");
  }
  out.verification_depth = o3 ? 3 : 2;
  return out;
}

inline GeneratorState java_predictor(std::uint64_t state) {
  return lcg_at_state(*preset("java_lcg").lcg(), state);
}

// ---------------------------------------------------------------------------
// Seed search over OTP codes

namespace detail {

// Narrows the space to seeds the template's algorithm accepts.
inline std::optional<SeedSearchSpace> clamp_to_seedable(const PrngSpec& tmpl, SeedSearchSpace s) {
  std::uint64_t lo = s.lower, hi = s.upper;
  switch (tmpl.algorithm) {
    case Algorithm::lcg: hi = std::min(hi, tmpl.lcg()->m - 1); break;
    case Algorithm::mt19937:
    case Algorithm::well512: hi = std::min<std::uint64_t>(hi, 0xFFFFFFFFu); break;
    case Algorithm::dual_lcg_combined:
      lo = std::max<std::uint64_t>(lo, 1);
      hi = std::min<std::uint64_t>(hi, kDualLcgM1 - 1);
      break;
    case Algorithm::lfib:
    case Algorithm::os_csprng:
      throw Error(Errc::config, std::string(to_string(tmpl.algorithm)) +
                                    " streams are not determined by a seed");
  }
  if (lo > hi) return std::nullopt;
  return SeedSearchSpace(lo, hi);
}

inline bool stream_begins_with(GeneratorState gen, std::span<const std::string> codes,
                               OtpFormat fmt) {
  for (const auto& code : codes)
    if (draw_otp(gen, fmt) != code) return false;
  return true;
}

}  // namespace detail

/// Every seed in `space` whose code stream begins with `observed_codes`.
/// An empty result is a definitive negative over the space. The scan is
/// split across `workers` threads (0 = hardware concurrency); the result
/// is sorted ascending regardless of the split.
inline RecoveryResult<std::uint64_t> seed_bruteforce(const PrngSpec& tmpl,
                                                     std::span<const std::string> observed_codes,
                                                     OtpFormat fmt, SeedSearchSpace space = {},
                                                     unsigned workers = 0) {
  if (observed_codes.size() < 4)
    throw Error(Errc::insufficient_evidence,
                "seed search needs at least 4 consecutive codes, got " +
                    std::to_string(observed_codes.size()));
  RecoveryResult<std::uint64_t> out;
  out.verification_depth = observed_codes.size();
  auto clamped = detail::clamp_to_seedable(tmpl, space);
  if (!clamped) return out;
  validate(tmpl.with_seed(clamped->lower));

  const std::uint64_t lo = clamped->lower, hi = clamped->upper;
  const std::uint64_t total = hi - lo + 1;  // >= 1; full 64-bit range is not a desk-scale search
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

  std::vector<std::vector<std::uint64_t>> found(workers);
  auto scan = [&](unsigned w) {
    const std::uint64_t begin = lo + total / workers * w;
    const std::uint64_t end = w + 1 == workers ? hi : lo + total / workers * (w + 1) - 1;
    PrngSpec spec = tmpl;
    for (std::uint64_t seed = begin;; ++seed) {
      spec.seed = seed;
      if (detail::stream_begins_with(detail::make_generator_unchecked(spec), observed_codes, fmt))
        found[w].push_back(seed);
      if (seed == end) break;
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }
  for (auto& f : found) out.recovered.insert(out.recovered.end(), f.begin(), f.end());
  std::sort(out.recovered.begin(), out.recovered.end());
  out.trials_examined = total;
  return out;
}

struct TimedCode {
  std::int64_t request_time = 0;  // seconds
  std::string code;
};

struct TimeSeedMatch {
  std::int64_t offset = 0;      // seed = request_time + offset
  std::size_t first_index = 0;  // first observation of the matching run
  std::size_t run_length = 0;
  bool operator==(const TimeSeedMatch&) const = default;
};

/// Models a server that reseeds with its clock on every request and emits
/// the first code. For each clock offset in [-window, window], reports the
/// longest run of consecutive observations explained by seed = t + offset
/// when that run reaches `min_run`.
inline RecoveryResult<TimeSeedMatch> timestamp_seed_match(const PrngSpec& tmpl,
                                                          std::span<const TimedCode> observations,
                                                          OtpFormat fmt, std::uint64_t window,
                                                          std::size_t min_run = 3) {
  if (observations.empty()) throw Error(Errc::shape, "no observations to match");
  if (min_run == 0) throw Error(Errc::range, "min_run must be positive");
  validate(tmpl.with_seed(tmpl.algorithm == Algorithm::dual_lcg_combined ? 1 : 0));
  RecoveryResult<TimeSeedMatch> out;
  const auto w = static_cast<std::int64_t>(window);
  for (std::int64_t offset = -w; offset <= w; ++offset) {
    std::size_t run = 0, best = 0, best_start = 0;
    for (std::size_t i = 0; i < observations.size(); ++i) {
      ++out.trials_examined;
      const std::int64_t seed = observations[i].request_time + offset;
      bool hit = false;
      if (seed >= 0) {
        auto bounded = detail::clamp_to_seedable(
            tmpl, SeedSearchSpace(static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(seed)));
        if (bounded) {
          auto gen = detail::make_generator_unchecked(tmpl.with_seed(static_cast<std::uint64_t>(seed)));
          hit = draw_otp(gen, fmt) == observations[i].code;
        }
      }
      run = hit ? run + 1 : 0;
      if (run > best) {
        best = run;
        best_start = i + 1 - run;
      }
    }
    if (best >= min_run) out.recovered.push_back({offset, best_start, best});
  }
  if (!out.recovered.empty())
    out.verification_depth = std::max_element(out.recovered.begin(), out.recovered.end(),
                                              [](const auto& x, const auto& y) {
                                                return x.run_length < y.run_length;
                                              })->run_length;
  return out;
}

}  // namespace otplint

#endif  // OTPLINT_RECOVERY_HPP_
