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


#ifndef OTPLINT_CLI_HPP_
#define OTPLINT_CLI_HPP_

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "otplint/collector.hpp"
#include "otplint/e2e.hpp"
#include "otplint/error.hpp"
#include "otplint/harness.hpp"
#include "otplint/harness_http.hpp"
#include "otplint/kv_config.hpp"
#include "otplint/locator.hpp"
#include "otplint/prng.hpp"
#include "otplint/recovery.hpp"
#include "otplint/rules.hpp"
#include "otplint/sequence.hpp"

namespace otplint::cli {

enum ExitCode : int { kOk = 0, kFindings = 1, kUsage = 2, kRuntime = 3 };

namespace detail {

using nlohmann::ordered_json;

inline std::atomic<bool> g_stop{false};

inline void on_signal(int) { g_stop = true; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Whitespace-separated tokens, ignoring '#' comments.
inline std::vector<std::string> read_tokens(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line.substr(0, line.find('#')));
    for (std::string w; words >> w;) out.push_back(w);
  }
  return out;
}

inline std::vector<std::uint64_t> read_numbers(const std::string& path) {
  std::vector<std::uint64_t> out;
  for (const auto& t : read_tokens(path)) out.push_back(parse_uint(t));
  return out;
}

/// A sequence file, or a plain list of codes.
inline OtpSequence read_codes_or_sequence(const std::string& path) {
  const auto text = read_file(path);
  if (text.find('\t') != std::string::npos) {
    std::istringstream in(text);
    return read_sequence(in, path);
  }
  return OtpSequence::from_codes(read_tokens(path), "acct", path);
}

struct TemplateOptions {
  std::string spec_file;
  std::string preset_name = "c_rand";
};

inline void add_template_options(CLI::App* cmd, TemplateOptions& t) {
  auto* spec = cmd->add_option("--spec", t.spec_file, "generator spec file (key = value)");
  cmd->add_option("--preset", t.preset_name, "generator preset")
      ->check(CLI::IsMember(preset_names()))
      ->excludes(spec)
      ->capture_default_str();
}

inline SpecFile load_template(const TemplateOptions& t) {
  if (!t.spec_file.empty()) return spec_from_config(KvConfig::load(t.spec_file));
  return {preset(t.preset_name), std::nullopt};
}

inline void print_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct SimulateOptions {
  TemplateOptions tmpl;
  std::optional<std::uint64_t> seed;
  std::size_t count = 10;
  std::optional<int> otp_length;
  bool json = false;
};

inline int simulate(const SimulateOptions& o, std::ostream& out) {
  auto file = load_template(o.tmpl);
  if (o.seed) file.spec.seed = *o.seed;
  validate(file.spec);
  if (o.otp_length) file.format = OtpFormat(*o.otp_length);
  ordered_json values = ordered_json::array();
  if (file.format) {
    for (const auto& c : stream_codes(file.spec, o.count, *file.format)) {
      if (o.json) values.push_back(c);
      else out << c << '\n';
    }
  } else {
    for (auto v : stream(file.spec, o.count)) {
      if (o.json) values.push_back(v);
      else out << v << '\n';
    }
  }
  if (o.json) {
    ordered_json j;
    j["algorithm"] = std::string(to_string(file.spec.algorithm));
    j["preset"] = file.spec.preset_name;
    j["seed"] = file.spec.seed;
    j[file.format ? "codes" : "values"] = values;
    print_json(out, j);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct ServeOptions {
  std::string config;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<double> duration;
};

inline ServerConfig load_server_config(const std::string& path) {
  ServerConfig cfg = path.empty() ? ServerConfig{} : server_config_from(KvConfig::load(path));
  cfg.base_seed = env_seed_or(cfg.base_seed);
  return cfg;
}

inline int serve(const ServeOptions& o, std::ostream& out) {
  OtpServer server(load_server_config(o.config));
  HttpHarness http(server);
  const int port = http.start(o.host, o.port);
  out << "listening on http://" << o.host << ':' << port << " profile "
      << to_string(server.config().profile.kind) << std::endl;
  g_stop = false;
  auto prev_int = std::signal(SIGINT, on_signal);
  auto prev_term = std::signal(SIGTERM, on_signal);
  const auto started = std::chrono::steady_clock::now();
  while (!g_stop) {
    if (o.duration && std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >= *o.duration)
      break;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  http.stop();
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);
  out << "stopped" << std::endl;
  return kOk;
}

// ---------------------------------------------------------------------------

struct CollectOptions {
  std::string target;
  std::string config;
  CollectPlan plan;
  bool wall_clock = false;
  std::string out_file;
  bool probe_renewal = false;
  bool json = false;
};

inline std::pair<std::string, int> parse_url(const std::string& url) {
  std::string rest = url;
  if (rest.rfind("http://", 0) == 0) rest = rest.substr(7);
  while (!rest.empty() && rest.back() == '/') rest.pop_back();
  const auto colon = rest.rfind(':');
  if (colon == std::string::npos || colon == 0)
    throw Error(Errc::config, "target must look like http://host:port, got '" + url + "'");
  return {rest.substr(0, colon), static_cast<int>(parse_uint(rest.substr(colon + 1)))};
}

inline int collect_cmd(const CollectOptions& o, std::ostream& out, std::ostream& err) {
  std::optional<OtpServer> local;
  std::unique_ptr<Target> target;
  if (!o.target.empty()) {
    auto [host, port] = parse_url(o.target);
    target = std::make_unique<HttpTarget>(host, port, !o.wall_clock);
  } else {
    local.emplace(load_server_config(o.config));
    target = std::make_unique<InProcessTarget>(*local);
  }
  if (o.probe_renewal) {
    const auto probe = run_renewal_probe(*target, o.plan.account_id);
    std::optional<RenewalPolicy> policy;
    std::string reason;
    try {
      policy = classify_renewal_policy(probe);
    } catch (const Error& e) {
      if (e.code() != Errc::unclassifiable) throw;
      reason = e.what();
    }
    if (o.json) {
      ordered_json j;
      j["probe"] = probe.describe();
      j["policy"] = policy ? ordered_json(policy->to_string()) : ordered_json(nullptr);
      if (!policy) j["reason"] = reason;
      print_json(out, j);
    } else {
      out << probe.describe() << '\n';
      out << "renewal policy: " << (policy ? policy->to_string() : std::string("unclassifiable")) << '\n';
      if (!policy) err << reason << '\n';
    }
    return kOk;
  }
  const auto result = collect(*target, o.plan);
  for (const auto& n : result.notes) err << "note: " << n << '\n';
  const auto seq = result.sequence(o.target.empty() ? "harness" : o.target);
  if (o.out_file.empty()) {
    write_sequence(out, seq);
  } else {
    save_sequence(o.out_file, seq);
    out << "wrote " << seq.size() << " records to " << o.out_file << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct AnalyzeOptions {
  std::string in;
  std::string config;
  bool json = false;
};

inline int analyze_cmd(const AnalyzeOptions& o, std::ostream& out) {
  const auto cfg = o.config.empty() ? AnalysisConfig{} : analysis_config_from(KvConfig::load(o.config));
  const auto report = analyze(read_codes_or_sequence(o.in), cfg);
  if (o.json)
    print_json(out, to_json(report));
  else
    out << render_text(report);
  return report.violations.empty() ? kOk : kFindings;
}

// ---------------------------------------------------------------------------

struct RecoverOptions {
  std::string mode;
  std::string in;
  TemplateOptions tmpl;
  std::uint64_t modulus = std::uint64_t{1} << 31;
  std::uint64_t lower = 0;
  std::uint64_t upper = (std::uint64_t{1} << 24) - 1;
  std::uint64_t window = 5;
  std::size_t min_run = 3;
  std::size_t predict = 10;
  bool json = false;
};

inline const std::vector<std::string>& recover_modes() {
  static const std::vector<std::string> modes{"mt-clone", "lcg-params", "seed-brute", "time-seed", "java-state"};
  return modes;
}

inline int recover_cmd(const RecoverOptions& o, std::ostream& out) {
  ordered_json j;
  j["mode"] = o.mode;
  bool found = false;
  auto predictions = [&](GeneratorState gen, std::size_t skip) {
    ordered_json p = ordered_json::array();
    for (std::size_t i = 0; i < skip; ++i) gen.next();
    for (std::size_t i = 0; i < o.predict; ++i) p.push_back(gen.next());
    return p;
  };
  if (o.mode == "mt-clone") {
    const auto nums = read_numbers(o.in);
    if (nums.size() < MtState::kWords)
      throw Error(Errc::insufficient_data, "mt-clone needs 624 outputs, got " + std::to_string(nums.size()));
    std::vector<std::uint32_t> words(nums.begin(), nums.begin() + MtState::kWords);
    auto gen = mt_clone(words);
    // Outputs already in the file past the first 624 are checked, not predicted.
    std::size_t verified = 0;
    for (std::size_t i = MtState::kWords; i < nums.size(); ++i, ++verified)
      if (gen.next() != nums[i])
        throw Error(Errc::not_this_generator, "clone disagrees with output " + std::to_string(i + 1));
    found = true;
    j["verified"] = verified;
    j["predictions"] = predictions(gen, 0);
  } else if (o.mode == "lcg-params") {
    const auto nums = read_numbers(o.in);
    const auto rec = lcg_recover_params(nums, o.modulus);
    ordered_json cands = ordered_json::array();
    for (const auto& c : rec.candidates) {
      LcgParams p;
      p.a = c.a;
      p.c = c.c;
      p.m = o.modulus;
      cands.push_back({{"a", c.a}, {"c", c.c}, {"predictions", predictions(lcg_at_state(p, nums.back()), 0)}});
    }
    found = !rec.candidates.empty();
    j["modulus"] = o.modulus;
    j["gcd"] = rec.gcd;
    j["verification_depth"] = rec.verification_depth;
    j["candidates"] = cands;
  } else if (o.mode == "java-state") {
    const auto nums = read_numbers(o.in);
    if (nums.size() < 2 || nums.size() > 3)
      throw Error(Errc::shape, "java-state needs 2 or 3 consecutive outputs, got " + std::to_string(nums.size()));
    std::optional<std::uint32_t> o3;
    if (nums.size() == 3) o3 = static_cast<std::uint32_t>(nums[2]);
    const auto rec = java_state_recover(static_cast<std::uint32_t>(nums[0]), static_cast<std::uint32_t>(nums[1]), o3);
    ordered_json states = ordered_json::array();
    for (auto s : rec.recovered)
      states.push_back({{"state", s}, {"predictions", predictions(java_predictor(s), nums.size() - 1)}});
    found = rec.found();
    j["trials_examined"] = rec.trials_examined;
    j["verification_depth"] = rec.verification_depth;
    j["states"] = states;
  } else if (o.mode == "seed-brute") {
    const auto seq = read_codes_or_sequence(o.in);
    const auto file = load_template(o.tmpl);
    const auto codes = seq.codes();
    const auto rec = seed_bruteforce(file.spec, codes, seq.format(), SeedSearchSpace(o.lower, o.upper));
    found = rec.found();
    j["template"] = file.spec.preset_name.empty() ? std::string(to_string(file.spec.algorithm)) : file.spec.preset_name;
    j["seeds"] = rec.recovered;
    j["trials_examined"] = rec.trials_examined;
    j["verification_depth"] = rec.verification_depth;
    if (rec.recovered.size() == 1) {
      ordered_json next = ordered_json::array();
      for (const auto& c : stream_codes(file.spec.with_seed(rec.recovered[0]), codes.size() + o.predict, seq.format()))
        next.push_back(c);
      j["predictions"] = ordered_json(next.begin() + static_cast<std::ptrdiff_t>(codes.size()), next.end());
    }
  } else {
    const auto seq = read_codes_or_sequence(o.in);
    const auto file = load_template(o.tmpl);
    std::vector<TimedCode> obs;
    for (const auto& r : seq.records()) {
      if (!r.request_time) throw Error(Errc::shape, "time-seed needs request times in the sequence file");
      obs.push_back({*r.request_time, r.code});
    }
    const auto rec = timestamp_seed_match(file.spec, obs, seq.format(), o.window, o.min_run);
    ordered_json matches = ordered_json::array();
    for (const auto& m : rec.recovered)
      matches.push_back({{"offset", m.offset}, {"first_index", m.first_index}, {"run_length", m.run_length}});
    found = rec.found();
    j["window"] = o.window;
    j["matches"] = matches;
    j["trials_examined"] = rec.trials_examined;
  }
  j["found"] = found;
  if (o.json) {
    print_json(out, j);
  } else {
    out << o.mode << ": " << (found ? "recovered" : "nothing recovered") << '\n';
    for (const auto& [key, value] : j.items())
      if (key != "mode" && key != "found") out << "  " << key << ": " << value.dump() << '\n';
  }
  return found ? kOk : kFindings;
}

// ---------------------------------------------------------------------------

struct LocateOptions {
  std::string model;
  std::string candidates;
  LocatorConfig cfg;
  bool json = false;
};

inline int locate_cmd(LocateOptions o, std::ostream& out) {
  o.cfg.seed = env_seed_or(o.cfg.seed);
  const auto model = load_app_model(o.model);
  const auto result = locate_login(model, load_candidates(o.candidates), o.cfg);
  const auto widgets = find_sms_widgets(model, o.cfg.keywords);
  const auto sms_acts = sms_otp_activities(model, o.cfg.keywords);
  if (o.json) {
    auto j = result.to_json();
    ordered_json w = ordered_json::array();
    for (const auto& h : widgets)
      w.push_back({{"activity", h.widget.activity}, {"type", h.widget.type_name}, {"text", h.widget.text},
                   {"layout", h.widget.layout}, {"keyword", h.keyword}});
    j["sms_widgets"] = w;
    j["sms_otp_activities"] = sms_acts;
    print_json(out, j);
    return kOk;
  }
  out << "model: " << model.name << '\n';
  if (result.found()) {
    out << "login activity: " << *result.activity << " (iteration " << result.iterations << ")\n";
    out << "witness:";
    for (std::size_t i = 0; i < result.witness.size(); ++i) out << (i ? " -> " : " ") << result.witness[i];
    out << '\n';
  } else {
    out << "login activity: none after " << result.iterations << " iterations\n";
  }
  for (const auto& w : result.warnings) out << "warning: " << w << '\n';
  for (const auto& h : widgets)
    out << "sms widget: " << h.widget.activity << ' ' << h.widget.type_name << " \"" << h.widget.text
        << "\" keyword=" << h.keyword << '\n';
  for (const auto& a : sms_acts) out << "sms-otp activity: " << a << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct E2eCmdOptions {
  std::string profile;
  std::uint64_t seed = 1;
  bool json = false;
};

inline int e2e_cmd(const E2eCmdOptions& o, std::ostream& out) {
  const auto seed = env_seed_or(o.seed);
  std::vector<std::string> names =
      o.profile == "all" ? e2e_profile_names() : std::vector<std::string>{o.profile};
  bool all_ok = true;
  ordered_json runs = ordered_json::array();
  for (const auto& name : names) {
    const auto r = run_e2e(e2e_profile(name, seed));
    all_ok = all_ok && r.as_expected;
    if (o.json) {
      runs.push_back({{"profile", r.profile},
                      {"codes_collected", r.codes_collected},
                      {"as_expected", r.as_expected},
                      {"summary", r.summary()},
                      {"report", to_json(r.report)}});
      continue;
    }
    for (const auto& line : r.summary()) out << name << ": " << line << '\n';
    out << name << ": " << r.codes_collected << " codes, " << (r.as_expected ? "as expected" : "UNEXPECTED")
        << '\n';
  }
  if (o.json) print_json(out, runs);
  return all_ok ? kOk : kFindings;
}

}  // namespace detail

/// Runs one command line. Returns 0 on success (no findings), 1 when
/// findings are reported, 2 on usage errors and 3 on runtime errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace detail;
  CLI::App app{"Detect predictable SMS one-time-password generation.", "otplint"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "print a generator's raw outputs or OTP codes");
  add_template_options(c_sim, sim.tmpl);
  c_sim->add_option("--seed", sim.seed, "override the generator seed");
  c_sim->add_option("--count", sim.count, "values to print")->capture_default_str();
  c_sim->add_option("--otp-length", sim.otp_length, "print codes of this length")->check(CLI::Range(4, 8));
  c_sim->add_flag("--json", sim.json, "structured output");

  ServeOptions srv;
  auto* c_srv = app.add_subcommand("serve", "run the simulated OTP server over HTTP");
  c_srv->add_option("--config", srv.config, "server config file")->check(CLI::ExistingFile);
  c_srv->add_option("--host", srv.host)->capture_default_str();
  c_srv->add_option("--port", srv.port, "0 picks a free port")->check(CLI::Range(0, 65535))->capture_default_str();
  c_srv->add_option("--duration", srv.duration, "stop after this many seconds");

  CollectOptions col;
  auto* c_col = app.add_subcommand("collect", "request codes from a target and write a sequence file");
  auto* o_target = c_col->add_option("--target", col.target, "http://host:port of a harness");
  c_col->add_option("--config", col.config, "server config for an in-process target")
      ->check(CLI::ExistingFile)
      ->excludes(o_target);
  c_col->add_option("--account", col.plan.account_id)->capture_default_str();
  c_col->add_option("--phone", col.plan.phone)->capture_default_str();
  c_col->add_option("--count", col.plan.count)->capture_default_str();
  c_col->add_option("--interval", col.plan.interval, "seconds between requests")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_col->add_flag("--consume", col.plan.consume_each, "consume every code after receiving it");
  c_col->add_option("--cap", col.plan.budget_cap, "request budget")->capture_default_str();
  c_col->add_flag("--lift-cap", col.plan.lift_cap, "ignore the request budget");
  c_col->add_flag("--wall-clock", col.wall_clock, "sleep instead of advancing the target's clock");
  c_col->add_option("--out", col.out_file, "sequence file (default stdout)");
  c_col->add_flag("--probe-renewal", col.probe_renewal, "run the renewal probe instead of collecting");
  c_col->add_flag("--json", col.json, "structured output for --probe-renewal");

  AnalyzeOptions ana;
  auto* c_ana = app.add_subcommand("analyze", "check a sequence against the randomness rules");
  c_ana->add_option("--in", ana.in, "sequence file or list of codes")->required()->check(CLI::ExistingFile);
  c_ana->add_option("--config", ana.config, "analysis config file")->check(CLI::ExistingFile);
  c_ana->add_flag("--json", ana.json, "structured report");

  RecoverOptions rec;
  auto* c_rec = app.add_subcommand("recover", "recover generator state, parameters or seeds");
  c_rec->add_option("--mode", rec.mode)->required()->check(CLI::IsMember(recover_modes()));
  c_rec->add_option("--in", rec.in, "input values, codes or sequence file")->required()->check(CLI::ExistingFile);
  add_template_options(c_rec, rec.tmpl);
  c_rec->add_option("--modulus", rec.modulus, "lcg-params modulus")->capture_default_str();
  c_rec->add_option("--lower", rec.lower, "seed-brute lower bound")->capture_default_str();
  c_rec->add_option("--upper", rec.upper, "seed-brute upper bound")->capture_default_str();
  c_rec->add_option("--window", rec.window, "time-seed window in seconds")->capture_default_str();
  c_rec->add_option("--min-run", rec.min_run, "time-seed minimum run")->capture_default_str();
  c_rec->add_option("--predict", rec.predict, "outputs to predict")->capture_default_str();
  c_rec->add_flag("--json", rec.json, "structured output");

  LocateOptions loc;
  auto* c_loc = app.add_subcommand("locate", "find the login activity in an app model");
  c_loc->add_option("--model", loc.model)->required()->check(CLI::ExistingFile);
  c_loc->add_option("--candidates", loc.candidates)->required()->check(CLI::ExistingFile);
  c_loc->add_option("--max-iterations", loc.cfg.max_iterations)->check(CLI::PositiveNumber)->capture_default_str();
  c_loc->add_option("--thresh", loc.cfg.lcs_thresh, "similarity threshold")->capture_default_str();
  c_loc->add_option("--seed", loc.cfg.seed)->capture_default_str();
  c_loc->add_flag("--json", loc.json, "structured output");

  E2eCmdOptions e2e;
  auto names = e2e_profile_names();
  names.push_back("all");
  auto* c_e2e = app.add_subcommand("e2e", "collect from an in-process harness profile and analyze");
  c_e2e->add_option("--profile", e2e.profile)->required()->check(CLI::IsMember(names));
  c_e2e->add_option("--seed", e2e.seed)->capture_default_str();
  c_e2e->add_flag("--json", e2e.json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (c_sim->parsed()) return simulate(sim, out);
    if (c_srv->parsed()) return serve(srv, out);
    if (c_col->parsed()) return collect_cmd(col, out, err);
    if (c_ana->parsed()) return analyze_cmd(ana, out);
    if (c_rec->parsed()) return recover_cmd(rec, out);
    if (c_loc->parsed()) return locate_cmd(loc, out);
    return e2e_cmd(e2e, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace otplint::cli

#endif  // OTPLINT_CLI_HPP_
