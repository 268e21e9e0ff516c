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

// Finds the login activity of an app by fuzzing a function sequence until
// it embeds into one activity's dependency graph, and spots SMS-OTP screens
// from widget text. Apps are described by a JSON model file:
//
//   {
//     "activities": [{"name": "LoginActivity", "methods": ["onCreate", "doLogin"]}],
//     "methods": [{"name": "doLogin", "args": ["phone"], "invokes": ["sendSms"]}],
//     "edges": [["doLogin", "validate"]],
//     "widgets": [{"type": "EditText", "text": "SMS code", "layout": "et_code",
//                  "activity": "LoginActivity"}]
//   }

#ifndef OTPLINT_LOCATOR_HPP_
#define OTPLINT_LOCATOR_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "otplint/error.hpp"
#include "otplint/kv_config.hpp"

namespace otplint {

enum class WidgetType { edit_text, button, other };

struct Widget {
  WidgetType type = WidgetType::other;
  std::string type_name;
  std::string text;
  std::string layout;
  std::string activity;
};

struct MethodDecl {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::string> invokes;
};

struct ActivityDecl {
  std::string name;
  std::vector<std::string> methods;
};

struct AppModel {
  std::string name;
  std::vector<ActivityDecl> activities;
  std::vector<MethodDecl> methods;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<Widget> widgets;

  const MethodDecl* method(const std::string& n) const {
    for (const auto& m : methods)
      if (m.name == n) return &m;
    return nullptr;
  }
};

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size())), '\n'));
}

inline std::vector<std::string> string_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw Error(Errc::schema, where + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string() || j[i].get<std::string>().empty())
      throw Error(Errc::schema, where + "/" + std::to_string(i) + ": expected a non-empty string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::string required_string(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty())
    throw Error(Errc::schema, where + ": missing string '" + key + "'");
  return j[key].get<std::string>();
}

}  // namespace detail

/// Syntax errors name the line; structural errors name the JSON path.
inline AppModel parse_app_model(const std::string& text, const std::string& name = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::schema, "line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(Errc::schema, "line 1: model must be a JSON object");
  AppModel m;
  m.name = j.value("app", name);
  std::set<std::string> declared;
  if (j.contains("methods")) {
    if (!j["methods"].is_array()) throw Error(Errc::schema, "/methods: expected an array");
    for (std::size_t i = 0; i < j["methods"].size(); ++i) {
      const auto& mj = j["methods"][i];
      const std::string where = "/methods/" + std::to_string(i);
      MethodDecl d;
      d.name = detail::required_string(mj, "name", where);
      if (mj.contains("args")) d.args = detail::string_list(mj["args"], where + "/args");
      if (mj.contains("invokes")) d.invokes = detail::string_list(mj["invokes"], where + "/invokes");
      if (!declared.insert(d.name).second) throw Error(Errc::schema, where + ": duplicate method '" + d.name + "'");
      m.methods.push_back(std::move(d));
    }
  }
  std::set<std::string> activity_names;
  if (j.contains("activities")) {
    if (!j["activities"].is_array()) throw Error(Errc::schema, "/activities: expected an array");
    for (std::size_t i = 0; i < j["activities"].size(); ++i) {
      const auto& aj = j["activities"][i];
      const std::string where = "/activities/" + std::to_string(i);
      ActivityDecl a;
      a.name = detail::required_string(aj, "name", where);
      if (aj.contains("methods")) a.methods = detail::string_list(aj["methods"], where + "/methods");
      for (const auto& mn : a.methods)
        if (!declared.count(mn))
          throw Error(Errc::schema, where + ": method '" + mn + "' is not declared");
      if (!activity_names.insert(a.name).second)
        throw Error(Errc::schema, where + ": duplicate activity '" + a.name + "'");
      m.activities.push_back(std::move(a));
    }
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw Error(Errc::schema, "/edges: expected an array");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const std::string where = "/edges/" + std::to_string(i);
      auto pair = detail::string_list(j["edges"][i], where);
      if (pair.size() != 2) throw Error(Errc::schema, where + ": expected [caller, callee]");
      if (!declared.count(pair[0]))
        throw Error(Errc::schema, where + ": caller '" + pair[0] + "' is not a declared method");
      m.edges.emplace_back(pair[0], pair[1]);
    }
  }
  if (j.contains("widgets")) {
    if (!j["widgets"].is_array()) throw Error(Errc::schema, "/widgets: expected an array");
    for (std::size_t i = 0; i < j["widgets"].size(); ++i) {
      const auto& wj = j["widgets"][i];
      const std::string where = "/widgets/" + std::to_string(i);
      Widget w;
      w.type_name = detail::required_string(wj, "type", where);
      w.type = w.type_name == "EditText" ? WidgetType::edit_text
               : w.type_name == "Button" ? WidgetType::button
                                         : WidgetType::other;
      w.text = wj.value("text", std::string{});
      w.layout = wj.value("layout", std::string{});
      w.activity = wj.value("activity", std::string{});
      if (!w.activity.empty() && !activity_names.count(w.activity))
        throw Error(Errc::schema, where + ": unknown activity '" + w.activity + "'");
      m.widgets.push_back(std::move(w));
    }
  }
  return m;
}

inline AppModel load_app_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open model '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') + 1);
  return parse_app_model(ss.str(), stem.substr(0, stem.find('.')));
}

struct LocatorConfig {
  std::size_t max_iterations = 1000;
  double lcs_thresh = 0.5;
  std::set<std::string> redundant{"nextLine", "toString", "printStackTrace"};
  std::vector<std::string> keywords{"sms", "mobilephone", "verification", "otp", "code"};
  std::uint64_t seed = 1;

  void validate() const {
    if (!(lcs_thresh > 0.0 && lcs_thresh <= 1.0)) throw Error(Errc::config, "lcs_thresh must be in (0, 1]");
    if (max_iterations < 1) throw Error(Errc::config, "max_iterations must be >= 1");
  }
};

/// Directed caller -> callee graph over invoked function names.
class DependencyGraph {
 public:
  std::string activity;

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<std::vector<std::size_t>>& successors() const { return succ_; }
  bool empty() const { return nodes_.empty(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_edge(const std::string& from, const std::string& to) const {
    auto a = index_of(from), b = index_of(to);
    return a && b && std::find(succ_[*a].begin(), succ_[*a].end(), *b) != succ_[*a].end();
  }

  void add_edge(const std::string& from, const std::string& to) {
    const auto a = intern(from), b = intern(to);
    if (std::find(succ_[a].begin(), succ_[a].end(), b) == succ_[a].end()) succ_[a].push_back(b);
  }

  /// Shortest directed path of at least one edge, as node indices.
  std::optional<std::vector<std::size_t>> path(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> parent(nodes_.size(), SIZE_MAX);
    std::vector<bool> seen(nodes_.size(), false);
    std::deque<std::size_t> queue;
    for (auto n : succ_[from])
      if (!seen[n]) {
        seen[n] = true;
        parent[n] = from;
        queue.push_back(n);
      }
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      if (u == to) {
        std::vector<std::size_t> out{to};
        for (auto v = parent[to]; v != from; v = parent[v]) out.push_back(v);
        out.push_back(from);
        std::reverse(out.begin(), out.end());
        return out;
      }
      for (auto n : succ_[u])
        if (!seen[n]) {
          seen[n] = true;
          parent[n] = u;
          queue.push_back(n);
        }
    }
    return std::nullopt;
  }

 private:
  std::size_t intern(const std::string& n) {
    auto [it, added] = index_.emplace(n, nodes_.size());
    if (added) {
      nodes_.push_back(n);
      succ_.emplace_back();
    }
    return it->second;
  }

  std::vector<std::string> nodes_;
  std::vector<std::vector<std::size_t>> succ_;
  std::map<std::string, std::size_t> index_;
};

/// One graph per activity: starting from the activity's methods, adds an
/// edge for every invocation and declared call edge, and follows callees
/// that are declared methods so their bodies join the graph. Redundant
/// functions never become nodes.
inline std::vector<DependencyGraph> build_dependency_graphs(const AppModel& model,
                                                            const LocatorConfig& cfg = {}) {
  std::map<std::string, std::vector<std::string>> calls;
  for (const auto& m : model.methods) calls[m.name] = m.invokes;
  for (const auto& [from, to] : model.edges) {
    auto& list = calls[from];
    if (std::find(list.begin(), list.end(), to) == list.end()) list.push_back(to);
  }
  std::vector<DependencyGraph> out;
  for (const auto& act : model.activities) {
    DependencyGraph g;
    g.activity = act.name;
    std::set<std::string> visited;
    std::deque<std::string> queue(act.methods.begin(), act.methods.end());
    while (!queue.empty()) {
      const auto caller = queue.front();
      queue.pop_front();
      if (!visited.insert(caller).second) continue;
      auto it = calls.find(caller);
      if (it == calls.end()) continue;
      for (const auto& callee : it->second) {
        if (cfg.redundant.count(callee)) continue;
        if (!cfg.redundant.count(caller)) g.add_edge(caller, callee);
        if (calls.count(callee)) queue.push_back(callee);
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// Longest common substring length, ignoring case.
inline std::size_t lcs_len(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = lower(a[i - 1]) == lower(b[j - 1]) ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

inline bool similar(std::string_view a, std::string_view b, double thresh) {
  const auto l = lcs_len(a, b);
  return l > 0 && static_cast<double>(l) >= thresh * static_cast<double>(std::min(a.size(), b.size()));
}

struct Candidate {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::string> functions;
};

/// One candidate per line: `name(arg, ...): tx1, tx2, ...`; the argument
/// list is optional and `#` starts a comment.
inline std::vector<Candidate> parse_candidates(const std::string& text) {
  std::vector<Candidate> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto colon = body.find(':');
    if (colon == std::string_view::npos)
      throw Error(Errc::schema, "candidates line " + std::to_string(lineno) + ": expected 'name: tx1,tx2'");
    auto head = trim(body.substr(0, colon));
    Candidate c;
    if (auto open = head.find('('); open != std::string_view::npos) {
      if (head.back() != ')')
        throw Error(Errc::schema, "candidates line " + std::to_string(lineno) + ": unclosed argument list");
      c.args = split_list(head.substr(open + 1, head.size() - open - 2));
      head = trim(head.substr(0, open));
    }
    c.name = std::string(head);
    c.functions = split_list(body.substr(colon + 1));
    c.functions.erase(std::remove(c.functions.begin(), c.functions.end(), ""), c.functions.end());
    if (c.name.empty() || c.functions.empty())
      throw Error(Errc::schema, "candidates line " + std::to_string(lineno) + ": needs a name and functions");
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Candidate> load_candidates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open candidates '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_candidates(ss.str());
}

struct TestActivity {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::string> functions;

  static TestActivity from(const Candidate& c) { return {c.name, c.args, c.functions}; }
  bool operator==(const TestActivity&) const = default;
};

struct Selection {
  std::size_t index = 0;
  std::size_t score = 0;
  bool all_zero = false;  // no candidate shares a character run with the name
};

/// Candidate whose name has the longest common substring with A's name;
/// the first in file order on ties.
inline Selection select_candidate(const TestActivity& a, const std::vector<Candidate>& candidates) {
  if (candidates.empty()) throw Error(Errc::config, "candidate list is empty");
  Selection s;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto score = lcs_len(a.name, candidates[i].name);
    if (score > s.score) {
      s.score = score;
      s.index = i;
    }
  }
  s.all_zero = s.score == 0;
  return s;
}

/// Replaces the function of A at position j with C's function at the same
/// position (a random function of C when C is shorter). j is the hint when
/// it is in range, otherwise uniform. C's arguments missing from A are
/// appended.
template <typename Rng>
TestActivity mutate_activity(const TestActivity& a, const Candidate& c, Rng& rng,
                             std::optional<std::size_t> position = std::nullopt) {
  if (c.functions.empty()) throw Error(Errc::config, "candidate '" + c.name + "' has no functions");
  TestActivity out = a;
  for (const auto& arg : c.args)
    if (std::find(out.args.begin(), out.args.end(), arg) == out.args.end()) out.args.push_back(arg);
  if (out.functions.empty()) {
    out.functions.push_back(c.functions.front());
    return out;
  }
  const std::size_t j =
      position && *position < out.functions.size() ? *position : rng() % out.functions.size();
  out.functions[j] = j < c.functions.size() ? c.functions[j] : c.functions[rng() % c.functions.size()];
  return out;
}

struct GraphMatch {
  std::vector<std::size_t> anchors;  // node index matched to each fc
  std::vector<std::string> witness;  // full walk through the graph
};

/// Ordered embedding of A's functions into G: every function maps to a
/// similar node and consecutive nodes are joined by a directed path.
inline std::optional<GraphMatch> match_graph(const DependencyGraph& g, const TestActivity& a, double thresh) {
  const auto& fcs = a.functions;
  if (g.empty() || fcs.empty()) return std::nullopt;
  const auto& nodes = g.nodes();
  std::vector<std::vector<bool>> ok(fcs.size(), std::vector<bool>(nodes.size()));
  for (std::size_t i = 0; i < fcs.size(); ++i)
    for (std::size_t n = 0; n < nodes.size(); ++n) ok[i][n] = similar(fcs[i], nodes[n], thresh);

  // reach[u][v]: path of length >= 1 from u to v.
  std::vector<std::vector<bool>> reach(nodes.size(), std::vector<bool>(nodes.size()));
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    std::deque<std::size_t> queue(g.successors()[u].begin(), g.successors()[u].end());
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      if (reach[u][v]) continue;
      reach[u][v] = true;
      for (auto w : g.successors()[v]) queue.push_back(w);
    }
  }
  // feasible[i][n]: fc_i..fc_last embed starting with fc_i at node n.
  std::vector<std::vector<bool>> feasible(fcs.size(), std::vector<bool>(nodes.size()));
  for (std::size_t i = fcs.size(); i-- > 0;)
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (!ok[i][n]) continue;
      if (i + 1 == fcs.size()) {
        feasible[i][n] = true;
        continue;
      }
      for (std::size_t m = 0; m < nodes.size() && !feasible[i][n]; ++m)
        feasible[i][n] = reach[n][m] && feasible[i + 1][m];
    }
  GraphMatch out;
  std::optional<std::size_t> cur;
  for (std::size_t i = 0; i < fcs.size(); ++i) {
    std::optional<std::size_t> pick;
    for (std::size_t n = 0; n < nodes.size() && !pick; ++n)
      if (feasible[i][n] && (!cur || reach[*cur][n])) pick = n;
    if (!pick) return std::nullopt;
    out.anchors.push_back(*pick);
    if (!cur) {
      out.witness.push_back(nodes[*pick]);
    } else {
      auto p = g.path(*cur, *pick);
      for (std::size_t k = 1; k < p->size(); ++k) out.witness.push_back(nodes[(*p)[k]]);
    }
    cur = pick;
  }
  return out;
}

struct Feedback {
  std::size_t position = 0;
  std::size_t graph = 0;
  std::size_t total = 0;
  std::vector<std::size_t> scores;
  bool degenerate = false;  // no graphs to compare against
};

/// For each graph, aligns every fc greedily to the best-scoring similar
/// node reachable from the previous match (any node for the first match),
/// scoring 0 and keeping the previous match when none qualifies. Keeps
/// the graph with the highest total and returns the first position with
/// the lowest score.
inline Feedback feedback_optimize(const TestActivity& a, const std::vector<DependencyGraph>& graphs,
                                  double thresh) {
  Feedback fb;
  if (graphs.empty() || a.functions.empty()) {
    fb.degenerate = true;
    fb.scores.assign(a.functions.size(), 0);
    return fb;
  }
  std::optional<std::size_t> best_total;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& g = graphs[gi];
    const auto& nodes = g.nodes();
    std::vector<std::size_t> scores;
    std::optional<std::size_t> prev;
    std::size_t total = 0;
    for (const auto& fc : a.functions) {
      std::size_t best = 0;
      std::optional<std::size_t> at;
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        if (prev && !g.path(*prev, n)) continue;
        const auto s = lcs_len(fc, nodes[n]);
        if (s > best && similar(fc, nodes[n], thresh)) {
          best = s;
          at = n;
        }
      }
      if (at) prev = at;
      scores.push_back(best);
      total += best;
    }
    if (!best_total || total > *best_total) {
      best_total = total;
      fb.total = total;
      fb.graph = gi;
      fb.scores = std::move(scores);
    }
  }
  fb.position = static_cast<std::size_t>(std::min_element(fb.scores.begin(), fb.scores.end()) - fb.scores.begin());
  return fb;
}

/// Iterations without a better feedback total before the replacement
/// position is drawn uniformly instead of taken from feedback.
inline constexpr std::size_t kStagnationLimit = 25;

struct LocateResult {
  std::optional<std::string> activity;
  std::size_t iterations = 0;
  TestActivity probe;                // the sequence that matched, or the last one tried
  std::vector<std::string> witness;  // walk through the matched graph
  std::vector<std::string> warnings;

  bool found() const { return activity.has_value(); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["activity"] = activity ? nlohmann::ordered_json(*activity) : nlohmann::ordered_json(nullptr);
    j["iterations"] = iterations;
    j["probe"] = {{"name", probe.name}, {"args", probe.args}, {"functions", probe.functions}};
    j["witness"] = witness;
    j["warnings"] = warnings;
    return j;
  }
};

/// Starts from a random candidate and, each iteration, tests the probe
/// against every activity graph, then mutates the weakest position with the
/// same-position function of a candidate drawn with weight lcs(name) + 1.
/// After kStagnationLimit iterations without progress one mutation takes a
/// uniform position and the progress baseline restarts.
inline LocateResult locate_login(const AppModel& model, const std::vector<Candidate>& candidates,
                                 const LocatorConfig& cfg = {}) {
  cfg.validate();
  if (candidates.empty()) throw Error(Errc::config, "candidate list is empty");
  const auto graphs = build_dependency_graphs(model, cfg);
  std::mt19937_64 rng(cfg.seed);
  LocateResult out;
  out.probe = TestActivity::from(candidates[rng() % candidates.size()]);

  const auto sel = select_candidate(out.probe, candidates);
  if (sel.all_zero) out.warnings.push_back("no candidate name resembles '" + out.probe.name + "'");
  std::vector<std::size_t> weights;
  std::size_t weight_sum = 0;
  for (const auto& c : candidates) {
    weights.push_back(lcs_len(out.probe.name, c.name) + 1);
    weight_sum += weights.back();
  }

  std::size_t best_total = 0, stale = 0;
  for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
    out.iterations = iter;
    for (const auto& g : graphs) {
      if (auto m = match_graph(g, out.probe, cfg.lcs_thresh)) {
        out.activity = g.activity;
        out.witness = m->witness;
        return out;
      }
    }
    const auto fb = feedback_optimize(out.probe, graphs, cfg.lcs_thresh);
    if (fb.degenerate && iter == 1) out.warnings.push_back("model has no dependency graphs");
    std::size_t draw = rng() % weight_sum, pick = 0;
    while (draw >= weights[pick]) draw -= weights[pick++];
    if (fb.total > best_total) {
      best_total = fb.total;
      stale = 0;
    } else {
      ++stale;
    }
    std::optional<std::size_t> position = fb.position;
    if (stale >= kStagnationLimit) {
      position.reset();
      best_total = 0;
      stale = 0;
    }
    out.probe = mutate_activity(out.probe, candidates[pick], rng, position);
  }
  return out;
}

struct WidgetHit {
  Widget widget;
  std::string keyword;
};

/// Widgets whose text contains a keyword, ignoring case.
inline std::vector<WidgetHit> find_sms_widgets(const AppModel& model,
                                               const std::vector<std::string>& keywords = LocatorConfig{}.keywords) {
  auto lower = [](std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
  };
  std::vector<WidgetHit> out;
  for (const auto& w : model.widgets) {
    const auto text = lower(w.text);
    for (const auto& k : keywords)
      if (text.find(lower(k)) != std::string::npos) {
        out.push_back({w, k});
        break;
      }
  }
  return out;
}

/// Activities with at least one keyword-matching EditText and at least one
/// Button.
inline std::vector<std::string> sms_otp_activities(const AppModel& model,
                                                   const std::vector<std::string>& keywords = LocatorConfig{}.keywords) {
  std::set<std::string> with_field;
  for (const auto& hit : find_sms_widgets(model, keywords))
    if (hit.widget.type == WidgetType::edit_text) with_field.insert(hit.widget.activity);
  std::vector<std::string> out;
  for (const auto& act : model.activities) {
    const bool has_button = std::any_of(model.widgets.begin(), model.widgets.end(), [&](const Widget& w) {
      return w.activity == act.name && w.type == WidgetType::button;
    });
    if (has_button && with_field.count(act.name)) out.push_back(act.name);
  }
  return out;
}

}  // namespace otplint

#endif  // OTPLINT_LOCATOR_HPP_
