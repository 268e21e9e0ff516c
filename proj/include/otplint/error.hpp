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

#ifndef OTPLINT_ERROR_HPP_
#define OTPLINT_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace otplint {

enum class Errc {
  unknown_preset,
  range,
  shape,
  environment,
  insufficient_data,
  insufficient_evidence,
  ambiguous,
  not_this_generator,
  config,
  template_error,
  quota,
  not_found,
  conflict,
  extraction,
  transport,
  schema,
  unclassifiable,
};

inline std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::unknown_preset: return "unknown_preset";
    case Errc::range: return "range";
    case Errc::shape: return "shape";
    case Errc::environment: return "environment";
    case Errc::insufficient_data: return "insufficient_data";
    case Errc::insufficient_evidence: return "insufficient_evidence";
    case Errc::ambiguous: return "ambiguous";
    case Errc::not_this_generator: return "not_this_generator";
    case Errc::config: return "config";
    case Errc::template_error: return "template";
    case Errc::quota: return "quota";
    case Errc::not_found: return "not_found";
    case Errc::conflict: return "conflict";
    case Errc::extraction: return "extraction";
    case Errc::transport: return "transport";
    case Errc::schema: return "schema";
    case Errc::unclassifiable: return "unclassifiable";
  }
  return "unknown";
}

/// Base exception for every failure raised by the toolkit. The code
/// identifies the failure class; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised when a modular equation has more solutions than the caller allows.
class AmbiguousError : public Error {
 public:
  AmbiguousError(std::uint64_t gcd, const std::string& what)
      : Error(Errc::ambiguous, what), gcd_(gcd) {}
  std::uint64_t gcd() const noexcept { return gcd_; }

 private:
  std::uint64_t gcd_;
};

class ExtractionError : public Error {
 public:
  explicit ExtractionError(std::string raw)
      : Error(Errc::extraction, "no 4-8 digit code in message: \"" + raw + "\""),
        raw_(std::move(raw)) {}
  const std::string& raw_text() const noexcept { return raw_; }

 private:
  std::string raw_;
};

}  // namespace otplint

#endif  // OTPLINT_ERROR_HPP_
