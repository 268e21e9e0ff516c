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

// Reference implementations of the generator families commonly found behind
// SMS one-time-password endpoints: linear congruential (incl. the C and Java
// library flavours), lagged Fibonacci, MT19937, WELL512a, the combined dual
// LCG behind PHP's lcg_value(), and the OS entropy source as a control.

#ifndef OTPLINT_PRNG_HPP_
#define OTPLINT_PRNG_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "otplint/error.hpp"
#include "otplint/kv_config.hpp"

namespace otplint {

enum class Algorithm { lcg, lfib, mt19937, well512, dual_lcg_combined, os_csprng };

enum class OutputTransform {
  identity,
  high16_mod32768,  // (state / 65536) mod 32768, the classic rand()
  high32_of_48,     // state >> 16 of a 48-bit state
};

enum class LfibOp { add, sub, mul, bit_xor };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::lcg: return "lcg";
    case Algorithm::lfib: return "lfib";
    case Algorithm::mt19937: return "mt19937";
    case Algorithm::well512: return "well512";
    case Algorithm::dual_lcg_combined: return "dual_lcg_combined";
    case Algorithm::os_csprng: return "os_csprng";
  }
  return "?";
}

inline std::string_view to_string(OutputTransform t) {
  switch (t) {
    case OutputTransform::identity: return "identity";
    case OutputTransform::high16_mod32768: return "high16_mod32768";
    case OutputTransform::high32_of_48: return "high32_of_48";
  }
  return "?";
}

inline std::string_view to_string(LfibOp op) {
  switch (op) {
    case LfibOp::add: return "add";
    case LfibOp::sub: return "sub";
    case LfibOp::mul: return "mul";
    case LfibOp::bit_xor: return "xor";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  for (auto a : {Algorithm::lcg, Algorithm::lfib, Algorithm::mt19937, Algorithm::well512,
                 Algorithm::dual_lcg_combined, Algorithm::os_csprng})
    if (to_string(a) == s) return a;
  throw Error(Errc::config, "unknown algorithm '" + std::string(s) + "'");
}

inline OutputTransform parse_output_transform(std::string_view s) {
  for (auto t : {OutputTransform::identity, OutputTransform::high16_mod32768,
                 OutputTransform::high32_of_48})
    if (to_string(t) == s) return t;
  throw Error(Errc::config, "unknown output transform '" + std::string(s) + "'");
}

inline LfibOp parse_lfib_op(std::string_view s) {
  for (auto op : {LfibOp::add, LfibOp::sub, LfibOp::mul, LfibOp::bit_xor})
    if (to_string(op) == s) return op;
  throw Error(Errc::config, "unknown lfib op '" + std::string(s) + "'");
}

/// S(n+1) = (a * S(n) + c) mod m, observed through `output`.
struct LcgParams {
  std::uint64_t a = 0;
  std::uint64_t c = 0;
  std::uint64_t m = 2;
  OutputTransform output = OutputTransform::identity;
  // XORed into the seed before it becomes the state (java.util.Random).
  std::uint64_t seed_scramble = 0;

  bool operator==(const LcgParams&) const = default;
};

/// S(n) = S(n-j) op S(n-p) mod m, or S(n-q) op S(n-j) op S(n-p) with three
/// lags. `initial` holds the first max-lag values, oldest first.
struct LfibParams {
  std::vector<std::uint32_t> lags;
  LfibOp op = LfibOp::add;
  std::uint64_t m = 2;
  std::vector<std::uint64_t> initial;

  std::uint32_t longest_lag() const { return lags.empty() ? 0 : lags.back(); }
  bool operator==(const LfibParams&) const = default;
};

struct PrngSpec {
  Algorithm algorithm = Algorithm::mt19937;
  std::variant<std::monostate, LcgParams, LfibParams> params;
  std::uint64_t seed = 0;
  std::uint64_t seed2 = 0;  // second seed of dual_lcg_combined
  std::string preset_name;

  PrngSpec with_seed(std::uint64_t s) const {
    PrngSpec copy = *this;
    copy.seed = s;
    return copy;
  }

  const LcgParams* lcg() const { return std::get_if<LcgParams>(&params); }
  const LfibParams* lfib() const { return std::get_if<LfibParams>(&params); }

  bool operator==(const PrngSpec&) const = default;
};

/// Decimal code length, 4 to 8 digits.
class OtpFormat {
 public:
  explicit OtpFormat(int length = 6) : length_(length) {
    if (length < 4 || length > 8)
      throw Error(Errc::range, "OTP length must be within [4,8], got " + std::to_string(length));
  }

  int length() const noexcept { return length_; }

  std::uint64_t modulus() const noexcept {
    std::uint64_t m = 1;
    for (int i = 0; i < length_; ++i) m *= 10;
    return m;
  }

  bool operator==(const OtpFormat&) const = default;

 private:
  int length_;
};

/// Zero-padded decimal rendering of `value mod 10^L`.
inline std::string format_code(std::uint64_t value, OtpFormat fmt) {
  std::string digits = std::to_string(value % fmt.modulus());
  return std::string(static_cast<std::size_t>(fmt.length()) - digits.size(), '0') + digits;
}

namespace detail {

inline std::uint64_t mulmod_add(std::uint64_t a, std::uint64_t x, std::uint64_t c,
                                std::uint64_t m) {
  using u128 = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<u128>(a) * x + c) % m);
}

inline constexpr std::uint32_t kMtKnuthMultiplier = 1812433253u;

// Seed-fill shared by MT19937 and our WELL512 seeding.
template <std::size_t N>
void knuth_fill(std::array<std::uint32_t, N>& words, std::uint32_t seed) {
  words[0] = seed;
  for (std::size_t i = 1; i < N; ++i)
    words[i] = kMtKnuthMultiplier * (words[i - 1] ^ (words[i - 1] >> 30)) +
               static_cast<std::uint32_t>(i);
}

}  // namespace detail

inline constexpr std::uint32_t mt_temper(std::uint32_t y) {
  y ^= y >> 11;
  y ^= (y << 7) & 0x9D2C5680u;
  y ^= (y << 15) & 0xEFC60000u;
  y ^= y >> 18;
  return y;
}

struct LcgState {
  LcgParams params;
  std::uint64_t state = 0;
};

struct LfibState {
  LfibParams params;
  std::vector<std::uint64_t> ring;  // last max-lag values
  std::size_t head = 0;             // slot of the oldest value
};

struct MtState {
  static constexpr std::size_t kWords = 624;
  std::array<std::uint32_t, kWords> words{};
  std::size_t index = kWords;  // kWords means "twist before next output"
};

// WELL512a (Panneton, L'Ecuyer, Matsumoto), as published by Lomont:
//   a = s[i]; c = s[i+13]; b = a ^ c ^ (a<<16) ^ (c<<15);
//   c = s[i+9]; c ^= c>>11; a = s[i] = b ^ c;
//   d = a ^ ((a<<5) & 0xDA442D24); i = i+15;
//   a = s[i]; s[i] = a ^ b ^ d ^ (a<<2) ^ (b<<18) ^ (c<<28); return s[i];
// with all indices taken mod 16.
struct Well512State {
  static constexpr std::size_t kWords = 16;
  std::array<std::uint32_t, kWords> words{};
  std::size_t index = 0;
};

// L'Ecuyer combined generator used by PHP's lcg_value().
struct DualLcgState {
  std::int64_t s1 = 1;
  std::int64_t s2 = 1;
};

struct CsprngState {
  std::shared_ptr<std::random_device> device;
};

inline constexpr std::int64_t kDualLcgM1 = 2147483563;
inline constexpr std::int64_t kDualLcgM2 = 2147483399;

/// Evolving state of one reference generator. A value type; copies are
/// independent clones (except os_csprng, which shares the OS device).
class GeneratorState {
 public:
  using Storage =
      std::variant<LcgState, LfibState, MtState, Well512State, DualLcgState, CsprngState>;

  explicit GeneratorState(Storage s) : storage_(std::move(s)) {}

  Algorithm algorithm() const {
    switch (storage_.index()) {
      case 0: return Algorithm::lcg;
      case 1: return Algorithm::lfib;
      case 2: return Algorithm::mt19937;
      case 3: return Algorithm::well512;
      case 4: return Algorithm::dual_lcg_combined;
      default: return Algorithm::os_csprng;
    }
  }

  template <typename T>
  const T* as() const { return std::get_if<T>(&storage_); }
  template <typename T>
  T* as() { return std::get_if<T>(&storage_); }

  std::uint64_t next() {
    return std::visit([](auto& s) { return step(s); }, storage_);
  }

  bool operator==(const GeneratorState& other) const {
    if (storage_.index() != other.storage_.index()) return false;
    return std::visit(
        [&](const auto& mine) {
          using T = std::decay_t<decltype(mine)>;
          const auto& theirs = std::get<T>(other.storage_);
          if constexpr (std::is_same_v<T, LcgState>)
            return mine.params == theirs.params && mine.state == theirs.state;
          else if constexpr (std::is_same_v<T, LfibState>)
            return mine.params == theirs.params && mine.ring == theirs.ring &&
                   mine.head == theirs.head;
          else if constexpr (std::is_same_v<T, MtState> || std::is_same_v<T, Well512State>)
            return mine.words == theirs.words && mine.index == theirs.index;
          else if constexpr (std::is_same_v<T, DualLcgState>)
            return mine.s1 == theirs.s1 && mine.s2 == theirs.s2;
          else
            return mine.device == theirs.device;
        },
        storage_);
  }

 private:
  static std::uint64_t step(LcgState& s) {
    const auto& p = s.params;
    s.state = detail::mulmod_add(p.a, s.state, p.c, p.m);
    switch (p.output) {
      case OutputTransform::identity: return s.state;
      case OutputTransform::high16_mod32768: return (s.state / 65536) % 32768;
      case OutputTransform::high32_of_48: return (s.state >> 16) & 0xFFFFFFFFu;
    }
    return s.state;
  }

  static std::uint64_t step(LfibState& s) {
    const auto& p = s.params;
    const std::size_t len = s.ring.size();
    // Value at lag k sits k slots back from the next write position.
    auto lagged = [&](std::uint32_t k) { return s.ring[(s.head + len - k) % len]; };
    auto combine = [&](std::uint64_t x, std::uint64_t y) -> std::uint64_t {
      switch (p.op) {
        case LfibOp::add: return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) + y) % p.m);
        case LfibOp::sub: return (x + (p.m - y % p.m)) % p.m;
        case LfibOp::mul: return detail::mulmod_add(x, y, 0, p.m);
        case LfibOp::bit_xor: return (x ^ y) % p.m;
      }
      return 0;
    };
    std::uint64_t v;
    if (p.lags.size() == 2) {
      v = combine(lagged(p.lags[0]), lagged(p.lags[1]));
    } else {
      v = combine(combine(lagged(p.lags[0]), lagged(p.lags[1])), lagged(p.lags[2]));
    }
    s.ring[s.head] = v;
    s.head = (s.head + 1) % len;
    return v;
  }

  static std::uint64_t step(MtState& s) {
    constexpr std::size_t n = MtState::kWords, m = 397;
    if (s.index >= n) {
      for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t y = (s.words[i] & 0x80000000u) | (s.words[(i + 1) % n] & 0x7FFFFFFFu);
        s.words[i] = s.words[(i + m) % n] ^ (y >> 1) ^ ((y & 1u) ? 0x9908B0DFu : 0u);
      }
      s.index = 0;
    }
    return mt_temper(s.words[s.index++]);
  }

  static std::uint64_t step(Well512State& s) {
    auto& w = s.words;
    const std::size_t i = s.index;
    std::uint32_t a = w[i];
    std::uint32_t c = w[(i + 13) & 15];
    std::uint32_t b = a ^ c ^ (a << 16) ^ (c << 15);
    c = w[(i + 9) & 15];
    c ^= c >> 11;
    a = w[i] = b ^ c;
    std::uint32_t d = a ^ ((a << 5) & 0xDA442D24u);
    s.index = (i + 15) & 15;
    a = w[s.index];
    w[s.index] = a ^ b ^ d ^ (a << 2) ^ (b << 18) ^ (c << 28);
    return w[s.index];
  }

  static std::uint64_t step(DualLcgState& s) {
    std::int64_t q = s.s1 / 53668;
    s.s1 = 40014 * (s.s1 - q * 53668) - q * 12211;
    if (s.s1 < 0) s.s1 += kDualLcgM1;
    q = s.s2 / 52774;
    s.s2 = 40692 * (s.s2 - q * 52774) - q * 3791;
    if (s.s2 < 0) s.s2 += kDualLcgM2;
    std::int64_t z = s.s1 - s.s2;
    if (z < 1) z += kDualLcgM1 - 1;
    return static_cast<std::uint64_t>(z);
  }

  static std::uint64_t step(CsprngState& s) {
    try {
      return (*s.device)();
    } catch (const std::exception& e) {
      throw Error(Errc::environment, std::string("OS entropy source failed: ") + e.what());
    }
  }

  Storage storage_;
};

/// lcg_value() as PHP reports it: the combined raw output scaled into (0,1).
inline double lcg_value_from_raw(std::uint64_t raw) {
  return static_cast<double>(raw) * 4.656613e-10;
}

inline std::vector<std::string> preset_names() {
  return {"c_rand", "php_rand", "java_lcg", "lcg_value", "mt19937", "well512", "os_csprng"};
}

inline PrngSpec preset(std::string_view name) {
  PrngSpec spec;
  spec.preset_name = std::string(name);
  if (name == "c_rand" || name == "php_rand") {
    spec.algorithm = Algorithm::lcg;
    spec.params = LcgParams{1103515245u, 12345u, std::uint64_t{1} << 31,
                            OutputTransform::high16_mod32768, 0};
    spec.seed = 1;
  } else if (name == "java_lcg") {
    spec.algorithm = Algorithm::lcg;
    spec.params = LcgParams{0x5DEECE66Du, 0xBu, std::uint64_t{1} << 48,
                            OutputTransform::high32_of_48, 0x5DEECE66Du};
    spec.seed = 0;
  } else if (name == "lcg_value") {
    spec.algorithm = Algorithm::dual_lcg_combined;
    spec.seed = 1;
    spec.seed2 = 1;
  } else if (name == "mt19937") {
    spec.algorithm = Algorithm::mt19937;
    spec.seed = 5489;
  } else if (name == "well512") {
    spec.algorithm = Algorithm::well512;
    spec.seed = 5489;
  } else if (name == "os_csprng") {
    spec.algorithm = Algorithm::os_csprng;
  } else {
    throw Error(Errc::unknown_preset, "unknown preset '" + std::string(name) + "'");
  }
  return spec;
}

/// Checks every PrngSpec invariant; throws Error(range|shape|config).
inline void validate(const PrngSpec& spec) {
  switch (spec.algorithm) {
    case Algorithm::lcg: {
      const auto* p = spec.lcg();
      if (!p) throw Error(Errc::config, "lcg spec requires a, c and m");
      if (p->m < 2) throw Error(Errc::range, "lcg modulus must be >= 2");
      if (p->a >= p->m || p->c >= p->m)
        throw Error(Errc::range, "lcg requires a < m and c < m");
      if (p->output == OutputTransform::high32_of_48 && p->m != (std::uint64_t{1} << 48))
        throw Error(Errc::config, "high32_of_48 output requires m = 2^48");
      if (spec.seed >= p->m)
        throw Error(Errc::range, "seed " + std::to_string(spec.seed) + " does not fit modulus " +
                                     std::to_string(p->m));
      break;
    }
    case Algorithm::lfib: {
      const auto* p = spec.lfib();
      if (!p) throw Error(Errc::config, "lfib spec requires lags, op, m and init");
      if (p->m < 2) throw Error(Errc::range, "lfib modulus must be >= 2");
      if (p->lags.size() != 2 && p->lags.size() != 3)
        throw Error(Errc::shape, "lfib needs 2 or 3 lags");
      if (p->lags.front() == 0 || !std::is_sorted(p->lags.begin(), p->lags.end()) ||
          std::adjacent_find(p->lags.begin(), p->lags.end()) != p->lags.end())
        throw Error(Errc::shape, "lfib lags must be positive and strictly increasing");
      if (p->initial.size() != p->longest_lag())
        throw Error(Errc::shape, "lfib initial sequence must have " +
                                     std::to_string(p->longest_lag()) + " values, got " +
                                     std::to_string(p->initial.size()));
      for (auto v : p->initial)
        if (v >= p->m) throw Error(Errc::range, "lfib initial value exceeds modulus");
      break;
    }
    case Algorithm::mt19937:
    case Algorithm::well512:
      if (spec.seed > 0xFFFFFFFFu) throw Error(Errc::range, "seed must fit in 32 bits");
      break;
    case Algorithm::dual_lcg_combined:
      if (spec.seed < 1 || spec.seed >= static_cast<std::uint64_t>(kDualLcgM1))
        throw Error(Errc::range, "dual LCG seed must lie in [1, 2147483562]");
      if (spec.seed2 < 1 || spec.seed2 >= static_cast<std::uint64_t>(kDualLcgM2))
        throw Error(Errc::range, "dual LCG seed2 must lie in [1, 2147483398]");
      break;
    case Algorithm::os_csprng:
      break;
  }
}

namespace detail {

// Builds the generator without re-validating; callers validate once.
inline GeneratorState make_generator_unchecked(const PrngSpec& spec) {
  switch (spec.algorithm) {
    case Algorithm::lcg: {
      const auto& p = *spec.lcg();
      return GeneratorState(LcgState{p, (spec.seed ^ p.seed_scramble) % p.m});
    }
    case Algorithm::lfib: {
      const auto& p = *spec.lfib();
      return GeneratorState(LfibState{p, p.initial, 0});
    }
    case Algorithm::mt19937: {
      MtState s;
      detail::knuth_fill(s.words, static_cast<std::uint32_t>(spec.seed));
      s.index = MtState::kWords;
      return GeneratorState(s);
    }
    case Algorithm::well512: {
      Well512State s;
      detail::knuth_fill(s.words, static_cast<std::uint32_t>(spec.seed));
      return GeneratorState(s);
    }
    case Algorithm::dual_lcg_combined:
      return GeneratorState(DualLcgState{static_cast<std::int64_t>(spec.seed),
                                         static_cast<std::int64_t>(spec.seed2)});
    case Algorithm::os_csprng:
      try {
        return GeneratorState(CsprngState{std::make_shared<std::random_device>()});
      } catch (const std::exception& e) {
        throw Error(Errc::environment, std::string("OS entropy source unavailable: ") + e.what());
      }
  }
  throw Error(Errc::config, "unhandled algorithm");
}

}  // namespace detail

inline GeneratorState make_generator(const PrngSpec& spec) {
  validate(spec);
  return detail::make_generator_unchecked(spec);
}

/// Builds an LCG positioned at an explicit raw state (used after recovery).
inline GeneratorState lcg_at_state(const LcgParams& params, std::uint64_t state) {
  return GeneratorState(LcgState{params, state % params.m});
}

inline std::uint64_t next_raw(GeneratorState& state) { return state.next(); }

inline std::string draw_otp(GeneratorState& state, OtpFormat fmt) {
  return format_code(state.next(), fmt);
}

inline std::vector<std::uint64_t> stream(const PrngSpec& spec, std::size_t n) {
  auto gen = make_generator(spec);
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen.next());
  return out;
}

inline std::vector<std::string> stream_codes(const PrngSpec& spec, std::size_t n, OtpFormat fmt) {
  auto gen = make_generator(spec);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw_otp(gen, fmt));
  return out;
}

// ---------------------------------------------------------------------------
// Text form: `algorithm`, `preset`, `seed`, `seed2`, `a`, `c`, `m`, `lags`,
// `op`, `init`, `otp_length`, plus `output` and `scramble` for custom LCGs.
// A preset supplies defaults that explicit keys override.

struct SpecFile {
  PrngSpec spec;
  std::optional<OtpFormat> format;
};

inline SpecFile spec_from_config(const KvConfig& cfg) {
  SpecFile out;
  PrngSpec& spec = out.spec;
  if (auto p = cfg.get("preset")) spec = preset(*p);
  if (auto a = cfg.get("algorithm")) {
    auto alg = parse_algorithm(*a);
    if (alg != spec.algorithm) {
      spec.params = std::monostate{};
      if (!cfg.has("preset")) spec.preset_name.clear();
    }
    spec.algorithm = alg;
  } else if (!cfg.has("preset")) {
    throw Error(Errc::config, "spec needs 'algorithm' or 'preset'");
  }

  if (spec.algorithm == Algorithm::lcg) {
    LcgParams p = spec.lcg() ? *spec.lcg() : LcgParams{};
    if (auto v = cfg.get_uint("a")) p.a = *v;
    if (auto v = cfg.get_uint("c")) p.c = *v;
    if (auto v = cfg.get_uint("m")) p.m = *v;
    if (auto v = cfg.get("output")) p.output = parse_output_transform(*v);
    if (auto v = cfg.get_uint("scramble")) p.seed_scramble = *v;
    spec.params = p;
  } else if (spec.algorithm == Algorithm::lfib) {
    LfibParams p = spec.lfib() ? *spec.lfib() : LfibParams{};
    if (auto v = cfg.get("lags")) {
      p.lags.clear();
      for (const auto& s : split_list(*v)) p.lags.push_back(static_cast<std::uint32_t>(parse_uint(s)));
    }
    if (auto v = cfg.get("op")) p.op = parse_lfib_op(*v);
    if (auto v = cfg.get_uint("m")) p.m = *v;
    if (auto v = cfg.get("init")) {
      p.initial.clear();
      for (const auto& s : split_list(*v)) p.initial.push_back(parse_uint(s));
    }
    spec.params = p;
  }
  if (auto v = cfg.get_uint("seed")) spec.seed = *v;
  if (auto v = cfg.get_uint("seed2")) spec.seed2 = *v;
  if (auto v = cfg.get_uint("otp_length")) out.format = OtpFormat(static_cast<int>(*v));
  validate(spec);
  return out;
}

inline std::string spec_to_config(const PrngSpec& spec, std::optional<OtpFormat> fmt = {}) {
  KvConfig cfg;
  cfg.set("algorithm", std::string(to_string(spec.algorithm)));
  if (!spec.preset_name.empty()) cfg.set("preset", spec.preset_name);
  cfg.set("seed", std::to_string(spec.seed));
  if (spec.algorithm == Algorithm::dual_lcg_combined) cfg.set("seed2", std::to_string(spec.seed2));
  if (const auto* p = spec.lcg()) {
    cfg.set("a", std::to_string(p->a));
    cfg.set("c", std::to_string(p->c));
    cfg.set("m", std::to_string(p->m));
    cfg.set("output", std::string(to_string(p->output)));
    if (p->seed_scramble) cfg.set("scramble", std::to_string(p->seed_scramble));
  }
  if (const auto* p = spec.lfib()) {
    std::string lags, init;
    for (auto l : p->lags) lags += (lags.empty() ? "" : ",") + std::to_string(l);
    for (auto v : p->initial) init += (init.empty() ? "" : ",") + std::to_string(v);
    cfg.set("lags", lags);
    cfg.set("op", std::string(to_string(p->op)));
    cfg.set("m", std::to_string(p->m));
    cfg.set("init", init);
  }
  if (fmt) cfg.set("otp_length", std::to_string(fmt->length()));
  return cfg.dump();
}

}  // namespace otplint

#endif  // OTPLINT_PRNG_HPP_
