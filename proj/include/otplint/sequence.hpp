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

#ifndef OTPLINT_SEQUENCE_HPP_
#define OTPLINT_SEQUENCE_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "otplint/error.hpp"
#include "otplint/kv_config.hpp"
#include "otplint/prng.hpp"

namespace otplint {

struct OtpRecord {
  std::size_t index = 0;                     // request ordinal
  std::string code;
  std::optional<std::int64_t> request_time;  // seconds, simulated or wall clock
  bool consumed = false;
  std::string account_id;

  std::uint64_t value() const { return parse_uint(code); }
  bool operator==(const OtpRecord&) const = default;
};

inline bool is_code(std::string_view s, OtpFormat fmt) {
  return s.size() == static_cast<std::size_t>(fmt.length()) &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

/// The rule engine's input: every record belongs to one account and uses
/// one code length; request times never decrease.
class OtpSequence {
 public:
  OtpSequence(std::vector<OtpRecord> records, OtpFormat format, std::string source_label = {})
      : records_(std::move(records)), format_(format), source_(std::move(source_label)) {
    validate_all();
  }

  // Convenience for tests and tools: codes only, indices 0.., no timestamps.
  static OtpSequence from_codes(const std::vector<std::string>& codes,
                                std::string account = "acct", std::string source = "codes") {
    if (codes.empty()) throw Error(Errc::shape, "cannot infer code length from an empty list");
    std::vector<OtpRecord> recs;
    for (std::size_t i = 0; i < codes.size(); ++i) recs.push_back({i, codes[i], std::nullopt, false, account});
    return OtpSequence(std::move(recs), OtpFormat(static_cast<int>(codes.front().size())),
                       std::move(source));
  }

  const std::vector<OtpRecord>& records() const { return records_; }
  OtpFormat format() const { return format_; }
  const std::string& source_label() const { return source_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const OtpRecord& operator[](std::size_t i) const { return records_[i]; }

  std::vector<std::string> codes() const {
    std::vector<std::string> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.code);
    return out;
  }

  std::vector<std::uint64_t> values() const {
    std::vector<std::uint64_t> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.value());
    return out;
  }

  void append(OtpRecord r) {
    check_record(r, records_.empty() ? nullptr : &records_.back());
    records_.push_back(std::move(r));
  }

  OtpSequence prefix(std::size_t n) const {
    n = std::min(n, records_.size());
    return OtpSequence({records_.begin(), records_.begin() + static_cast<std::ptrdiff_t>(n)},
                       format_, source_);
  }

 private:
  void check_record(const OtpRecord& r, const OtpRecord* prev) const {
    if (!is_code(r.code, format_))
      throw Error(Errc::shape, "record " + std::to_string(r.index) + ": '" + r.code +
                                   "' is not a " + std::to_string(format_.length()) +
                                   "-digit code");
    if (prev) {
      if (r.account_id != prev->account_id)
        throw Error(Errc::shape, "sequence mixes accounts '" + prev->account_id + "' and '" +
                                     r.account_id + "'");
      if (r.request_time && prev->request_time && *r.request_time < *prev->request_time)
        throw Error(Errc::shape, "request times decrease at record " + std::to_string(r.index));
    }
  }

  void validate_all() const {
    for (std::size_t i = 0; i < records_.size(); ++i)
      check_record(records_[i], i ? &records_[i - 1] : nullptr);
  }

  std::vector<OtpRecord> records_;
  OtpFormat format_;
  std::string source_;
};

// ---------------------------------------------------------------------------
// Line format: index \t epoch_seconds \t code \t consumed(0|1) \t account_id
// '#' lines are comments; "-" in the time column means unknown.

inline OtpSequence read_sequence(std::istream& in, std::string source_label) {
  std::vector<OtpRecord> recs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto fields = split_list(line, '\t');
    if (fields.size() != 5)
      throw Error(Errc::shape, "line " + std::to_string(lineno) + ": expected 5 tab-separated fields");
    OtpRecord r;
    try {
      r.index = static_cast<std::size_t>(parse_uint(fields[0]));
      if (fields[1] != "-") r.request_time = parse_int(fields[1]);
    } catch (const Error&) {
      throw Error(Errc::shape, "line " + std::to_string(lineno) + ": bad index or timestamp");
    }
    r.code = fields[2];
    if (fields[3] != "0" && fields[3] != "1")
      throw Error(Errc::shape, "line " + std::to_string(lineno) + ": consumed must be 0 or 1");
    r.consumed = fields[3] == "1";
    r.account_id = fields[4];
    recs.push_back(std::move(r));
  }
  if (recs.empty()) throw Error(Errc::shape, "sequence file has no records");
  const auto len = recs.front().code.size();
  if (len < 4 || len > 8)
    throw Error(Errc::shape, "code length " + std::to_string(len) + " outside [4,8]");
  return OtpSequence(std::move(recs), OtpFormat(static_cast<int>(len)), std::move(source_label));
}

inline OtpSequence load_sequence(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::shape, "cannot open sequence file " + path);
  return read_sequence(f, path);
}

inline void write_sequence(std::ostream& out, const OtpSequence& seq) {
  out << "# index\tepoch_seconds\tcode\tconsumed\taccount_id\n";
  for (const auto& r : seq.records()) {
    out << r.index << '\t' << (r.request_time ? std::to_string(*r.request_time) : "-") << '\t'
        << r.code << '\t' << (r.consumed ? '1' : '0') << '\t' << r.account_id << '\n';
  }
}

inline void save_sequence(const std::string& path, const OtpSequence& seq) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::shape, "cannot write sequence file " + path);
  write_sequence(f, seq);
}

}  // namespace otplint

#endif  // OTPLINT_SEQUENCE_HPP_
