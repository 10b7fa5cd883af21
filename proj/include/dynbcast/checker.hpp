// Exhaustive small-n verification.
//
// Breadth-first exploration where every round branches over all labeled
// connected snapshots on n nodes. Configurations are deduplicated per depth
// by a canonical key that pins the broadcaster at index 0 and sorts the
// remaining (state, informed) slots: non-broadcaster nodes are
// interchangeable because the adversary ranges over all labeled graphs.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynbcast/algorithms.hpp"
#include "dynbcast/engine.hpp"
#include "dynbcast/snapshot.hpp"
#include "json.hpp"

namespace dynbcast {

class ConfigurationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckOptions {
  std::size_t config_cap = 10'000'000;
  bool allow_n5 = false;
  std::size_t max_witnesses = 8;
};

struct CheckViolation {
  std::size_t depth = 0;
  std::string message;
  std::string witness_jsonl;  // labeled execution reaching the violation
};

struct CheckReport {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t depth_bound = 0;
  std::size_t reachable_count = 0;
  bool all_stable_at_bound = false;
  std::vector<CheckViolation> invariant_violations;
  std::size_t violation_count = 0;
  /// First depth from which every reachable configuration is idle.
  std::size_t worst_stabilization_depth = 0;
  std::size_t frontier_size = 0;
  std::size_t frontier_unfinished = 0;  // not idle, or idle with uninformed nodes
};

nlohmann::json check_report_json(const CheckReport& report);

template <class State>
using ConfigKey = std::vector<std::pair<State, bool>>;

template <class State>
ConfigKey<State> config_key(const Configuration<State>& config) {
  ConfigKey<State> key;
  key.reserve(config.n());
  for (std::size_t v = 0; v < config.n(); ++v) key.emplace_back(config.states[v], config.informed[v]);
  if (key.size() > 2) std::sort(key.begin() + 1, key.end());
  return key;
}

template <class State>
Configuration<State> from_key(const ConfigKey<State>& key, std::size_t t) {
  Configuration<State> config;
  config.t = t;
  for (const auto& [s, informed] : key) {
    config.states.push_back(s);
    config.informed.push_back(informed);
  }
  return config;
}

namespace detail {

inline void check_checker_n(std::size_t n, bool allow_n5) {
  if (n < 2 || n > 5 || (n == 5 && !allow_n5)) {
    throw std::invalid_argument("exhaustive checking supports 2 <= n <= 4 (n = 5 needs allow_n5)");
  }
}

inline const std::vector<Snapshot>& snapshots_for(std::size_t n) {
  static const std::vector<std::vector<Snapshot>> table = [] {
    std::vector<std::vector<Snapshot>> t(6);
    for (std::size_t k = 1; k <= 5; ++k) t[k] = enumerate_connected_snapshots(k);
    return t;
  }();
  return table.at(n);
}

}  // namespace detail

/// All distinct (by ConfigKey) configurations one round after cfg, in key
/// order.
template <AnonymousAlgorithm A>
std::vector<Configuration<typename A::State>> successors(const Configuration<typename A::State>& cfg,
                                                         const A& alg, std::size_t n) {
  if (n < 1 || n > 5) throw std::invalid_argument("successors supports n <= 5");
  if (cfg.n() != n) throw std::invalid_argument("configuration size differs from n");
  std::map<ConfigKey<typename A::State>, Configuration<typename A::State>> out;
  for (const Snapshot& s : detail::snapshots_for(n)) {
    auto next = execute_round(cfg, s, alg).first;
    out.try_emplace(config_key(next), std::move(next));
  }
  std::vector<Configuration<typename A::State>> result;
  result.reserve(out.size());
  for (auto& [key, config] : out) result.push_back(std::move(config));
  return result;
}

template <class State>
using ConfigInvariant = std::function<std::optional<std::string>(const Configuration<State>&)>;

template <AnonymousAlgorithm A>
CheckReport explore(const A& alg, std::size_t n, std::size_t depth_bound,
                    const ConfigInvariant<typename A::State>& invariant,
                    const CheckOptions& options = {}) {
  using State = typename A::State;
  using Key = ConfigKey<State>;
  detail::check_checker_n(n, options.allow_n5);
  const auto& snapshots = detail::snapshots_for(n);

  struct Node {
    Key key;
    std::size_t parent;
    std::size_t snapshot;
  };
  std::vector<std::vector<Node>> layers;
  std::set<Key> seen;

  CheckReport report;
  report.algorithm = alg.name();
  report.n = n;
  report.depth_bound = depth_bound;

  auto witness = [&](std::size_t depth, std::size_t index) {
    std::vector<std::size_t> chain(depth + 1);
    chain[depth] = index;
    for (std::size_t d = depth; d > 0; --d) chain[d - 1] = layers[d][chain[d]].parent;

    // Replay on a labeled configuration; perm maps canonical slot -> node id.
    Trace<State> trace;
    trace.algorithm = alg.name();
    trace.adversary = "exhaustive";
    trace.configurations.push_back(initial_configuration(alg, n));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto canonical_perm = [&](const Configuration<State>& c) {
      std::vector<std::size_t> p(n);
      std::iota(p.begin(), p.end(), std::size_t{0});
      std::stable_sort(p.begin() + 1, p.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(c.states[a], static_cast<bool>(c.informed[a])) <
               std::pair(c.states[b], static_cast<bool>(c.informed[b]));
      });
      return p;
    };
    perm = canonical_perm(trace.configurations.back());
    for (std::size_t d = 1; d <= depth; ++d) {
      const Snapshot& canonical = snapshots[layers[d][chain[d]].snapshot];
      EdgeList relabeled;
      for (const Edge& e : canonical.edges()) relabeled.push_back({perm[e.u], perm[e.v]});
      auto [next, record] = execute_round(trace.configurations.back(), Snapshot(n, relabeled), alg);
      perm = canonical_perm(next);
      trace.rounds.push_back(std::move(record));
      trace.configurations.push_back(std::move(next));
    }
    std::ostringstream os;
    write_trace_jsonl(os, trace, alg);
    return os.str();
  };

  const Configuration<State> init = initial_configuration(alg, n);
  layers.push_back({Node{config_key(init), 0, 0}});
  seen.insert(layers[0][0].key);

  for (std::size_t depth = 0;; ++depth) {
    const auto& layer = layers[depth];
    bool layer_unstable = false;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const Configuration<State> config = from_key(layer[i].key, depth);
      if (invariant) {
        if (auto failure = invariant(config)) {
          ++report.violation_count;
          if (report.invariant_violations.size() < options.max_witnesses) {
            report.invariant_violations.push_back({depth, *failure, witness(depth, i)});
          }
        }
      }
      if (!detect_stabilization(config, alg)) layer_unstable = true;
    }
    if (layer_unstable) report.worst_stabilization_depth = depth + 1;
    if (depth == depth_bound) break;

    std::vector<Node> next_layer;
    std::map<Key, std::size_t> index;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const Configuration<State> config = from_key(layer[i].key, depth);
      for (std::size_t s = 0; s < snapshots.size(); ++s) {
        Key key = config_key(execute_round(config, snapshots[s], alg).first);
        if (index.contains(key)) continue;
        index.emplace(key, next_layer.size());
        seen.insert(key);
        next_layer.push_back(Node{std::move(key), i, s});
        if (seen.size() > options.config_cap) {
          throw ConfigurationCapExceeded("explored more than " + std::to_string(options.config_cap) +
                                         " configurations");
        }
      }
    }
    layers.push_back(std::move(next_layer));
  }

  const auto& frontier = layers[depth_bound];
  report.frontier_size = frontier.size();
  for (const Node& node : frontier) {
    const Configuration<State> config = from_key(node.key, depth_bound);
    if (!detect_stabilization(config, alg) || !config.all_informed()) ++report.frontier_unfinished;
  }
  report.reachable_count = seen.size();
  report.all_stable_at_bound = report.violation_count == 0 && report.frontier_unfinished == 0;
  return report;
}

/// Every adversary path reaches an idle, all-informed configuration by
/// depth_bound.
template <AnonymousAlgorithm A>
CheckReport verify_universal_stabilization(const A& alg, std::size_t n, std::size_t depth_bound,
                                           const CheckOptions& options = {}) {
  return explore(alg, n, depth_bound, ConfigInvariant<typename A::State>{}, options);
}

/// Countdown-family invariant: non-idle nodes share one (current, maximum)
/// pair equal to expected_attempt_values(t), and every counter satisfies
/// current <= maximum <= 2(n - 1).
std::optional<std::string> countdown_invariant(const Configuration<CountdownState>& config);

template <AnonymousAlgorithm A>
  requires std::same_as<typename A::State, CountdownState>
CheckReport verify_invariants(const A& alg, std::size_t n, std::size_t depth_bound,
                              const CheckOptions& options = {}) {
  return explore(alg, n, depth_bound, ConfigInvariant<CountdownState>(countdown_invariant), options);
}

}  // namespace dynbcast
