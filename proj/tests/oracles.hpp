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

// Test-only reference implementations, written independently of the
// library code they check. Nothing here includes otplint headers.

#ifndef OTPLINT_TESTS_ORACLES_HPP_
#define OTPLINT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Matsumoto & Nishimura's reference genrand_int32, transliterated.
class Mt19937 {
 public:
  explicit Mt19937(std::uint32_t s) {
    mt_[0] = s;
    for (mti_ = 1; mti_ < kN; mti_++)
      mt_[mti_] = 1812433253UL * (mt_[mti_ - 1] ^ (mt_[mti_ - 1] >> 30)) + mti_;
  }

  std::uint32_t operator()() {
    static const unsigned long mag01[2] = {0x0UL, 0x9908b0dfUL};
    unsigned long y;
    if (mti_ >= kN) {
      int kk;
      for (kk = 0; kk < kN - kM; kk++) {
        y = (mt_[kk] & 0x80000000UL) | (mt_[kk + 1] & 0x7fffffffUL);
        mt_[kk] = mt_[kk + kM] ^ (y >> 1) ^ mag01[y & 0x1UL];
      }
      for (; kk < kN - 1; kk++) {
        y = (mt_[kk] & 0x80000000UL) | (mt_[kk + 1] & 0x7fffffffUL);
        mt_[kk] = mt_[kk + (kM - kN)] ^ (y >> 1) ^ mag01[y & 0x1UL];
      }
      y = (mt_[kN - 1] & 0x80000000UL) | (mt_[0] & 0x7fffffffUL);
      mt_[kN - 1] = mt_[kM - 1] ^ (y >> 1) ^ mag01[y & 0x1UL];
      mti_ = 0;
    }
    y = mt_[mti_++];
    y ^= (y >> 11);
    y ^= (y << 7) & 0x9d2c5680UL;
    y ^= (y << 15) & 0xefc60000UL;
    y ^= (y >> 18);
    return static_cast<std::uint32_t>(y);
  }

 private:
  static constexpr int kN = 624, kM = 397;
  std::uint32_t mt_[kN];
  int mti_;
};

// The portable rand() from the C standard's example implementation.
class CRand {
 public:
  explicit CRand(unsigned long seed) : next_(seed) {}
  int operator()() {
    next_ = next_ * 1103515245 + 12345;
    return static_cast<unsigned>(next_ / 65536) % 32768;
  }

 private:
  unsigned long next_;
};

// java.util.Random#nextInt() with 64-bit wrapping arithmetic and a mask.
class JavaRandom {
 public:
  explicit JavaRandom(std::int64_t seed) : seed_((seed ^ 0x5DEECE66DLL) & kMask) {}
  std::uint32_t next_int() {
    seed_ = static_cast<std::int64_t>(
                (static_cast<std::uint64_t>(seed_) * 0x5DEECE66DULL + 0xBULL)) & kMask;
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(seed_) >> 16);
  }
  std::int64_t raw_state() const { return seed_; }

 private:
  static constexpr std::int64_t kMask = (1LL << 48) - 1;
  std::int64_t seed_;
};

// Binary-string rotation, used to cross-check the bitwise rotation check.
inline std::string to_binary(std::uint64_t v, int width) {
  std::string s;
  for (int i = width - 1; i >= 0; --i) s.push_back(((v >> i) & 1) ? '1' : '0');
  return s;
}

inline int bit_length(std::uint64_t v) {
  int n = 0;
  while (v) {
    ++n;
    v >>= 1;
  }
  return n;
}

// All (width, direction) pairs with width <= max_width under which every
// consecutive pair is a one-step rotation. direction: +1 left, -1 right.
inline std::vector<std::pair<int, int>> rotations_explaining(const std::vector<std::uint64_t>& vs,
                                                             int max_width) {
  std::vector<std::pair<int, int>> out;
  for (int width = 1; width <= max_width; ++width) {
    bool fits = std::all_of(vs.begin(), vs.end(),
                            [&](std::uint64_t v) { return v < (std::uint64_t{1} << width); });
    if (!fits) continue;
    for (int dir : {+1, -1}) {
      bool ok = vs.size() >= 2;
      for (std::size_t i = 0; ok && i + 1 < vs.size(); ++i) {
        std::string cur = to_binary(vs[i], width);
        std::string rot = dir > 0 ? cur.substr(1) + cur[0] : cur.back() + cur.substr(0, width - 1);
        ok = rot == to_binary(vs[i + 1], width);
      }
      if (ok) out.emplace_back(width, dir);
    }
  }
  return out;
}

// Length of the longest common substring by trying every substring of a.
inline std::size_t brute_lcs(std::string a, std::string b) {
  for (auto& ch : a) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (auto& ch : b) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t len = 1; i + len <= a.size(); ++len)
      if (b.find(a.substr(i, len)) != std::string::npos) best = std::max(best, len);
  return best;
}

}  // namespace oracle

#endif  // OTPLINT_TESTS_ORACLES_HPP_
