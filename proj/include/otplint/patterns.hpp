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

// Names for the bit-level code patterns shared by the rule engine and the
// test server.

#ifndef OTPLINT_PATTERNS_HPP_
#define OTPLINT_PATTERNS_HPP_

#include <string>
#include <string_view>

#include "otplint/error.hpp"

namespace otplint {

// Anticlockwise moves the top bit to the bottom (rotate left).
enum class RotationDirection { anticlockwise, clockwise };

inline std::string_view to_string(RotationDirection d) {
  return d == RotationDirection::anticlockwise ? "anticlockwise" : "clockwise";
}

enum class ParityPattern { all_even, all_odd, alternating };

inline std::string_view to_string(ParityPattern p) {
  switch (p) {
    case ParityPattern::all_even: return "all_even";
    case ParityPattern::all_odd: return "all_odd";
    case ParityPattern::alternating: return "alternating";
  }
  return "?";
}

inline RotationDirection parse_rotation_direction(std::string_view s) {
  if (s == "anticlockwise" || s == "left") return RotationDirection::anticlockwise;
  if (s == "clockwise" || s == "right") return RotationDirection::clockwise;
  throw Error(Errc::config, "unknown rotation direction '" + std::string(s) + "'");
}

inline ParityPattern parse_parity_pattern(std::string_view s) {
  if (s == "all_even") return ParityPattern::all_even;
  if (s == "all_odd") return ParityPattern::all_odd;
  if (s == "alternating") return ParityPattern::alternating;
  throw Error(Errc::config, "unknown parity pattern '" + std::string(s) + "'");
}

}  // namespace otplint

#endif  // OTPLINT_PATTERNS_HPP_
