// Synchronous round executor.
//
// One round: the adversary fixes a snapshot, every node computes its message
// from its pre-round state, every node builds the multiset it hears from its
// snapshot neighbors, and all nodes transition simultaneously. Informed
// tracking lives here rather than in algorithm state.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dynbcast/adversaries.hpp"
#include "dynbcast/core.hpp"
#include "dynbcast/snapshot.hpp"
#include "json.hpp"

namespace dynbcast {

template <class State>
struct Configuration {
  std::size_t t = 0;
  std::vector<State> states;
  std::vector<bool> informed;

  [[nodiscard]] std::size_t n() const noexcept { return states.size(); }
  [[nodiscard]] bool all_informed() const {
    return std::all_of(informed.begin(), informed.end(), [](bool b) { return b; });
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct RoundRecord {
  std::size_t t = 0;
  Snapshot snapshot{1, {}};
  std::size_t messages_sent = 0;
  std::uint64_t deliveries = 0;  // one per (sender, neighbor) pair
  std::vector<bool> senders;
  std::vector<NodeId> newly_informed;
};

template <class State>
struct Trace {
  std::string algorithm;
  std::string adversary;
  std::uint64_t seed = 0;
  std::size_t max_rounds = 0;
  /// configurations[t] is the configuration at the start of round t;
  /// rounds[t] describes round t. configurations.size() == rounds.size() + 1.
  std::vector<Configuration<State>> configurations;
  std::vector<RoundRecord> rounds;
  bool stabilized = false;
  /// Failures reported by the algorithm's configuration audit, if it has one.
  std::vector<std::string> violations;

  [[nodiscard]] std::size_t n() const { return configurations.front().n(); }
  [[nodiscard]] const Configuration<State>& last() const { return configurations.back(); }
};

struct Metrics {
  std::size_t n = 0;
  std::optional<std::size_t> rounds_to_all_informed;
  std::optional<std::size_t> rounds_to_stabilization;
  long long peak_counter_value = 0;
  int peak_state_bits = 0;
  std::uint64_t total_messages = 0;
  std::size_t uninformed_at_end = 0;
  std::size_t rounds_executed = 0;

  /// Stabilized with at least one node never informed.
  [[nodiscard]] bool broadcast_failed() const {
    return rounds_to_stabilization.has_value() && uninformed_at_end > 0;
  }
};

/// 4n + ceil(log2 n) + 2 for n >= 2, and 1 for n = 1.
std::size_t stabilization_bound(std::size_t n);

/// 10 * stabilization_bound(n).
std::size_t auto_horizon(std::size_t n);

template <AnonymousAlgorithm A>
Configuration<typename A::State> initial_configuration(const A& alg, std::size_t n) {
  Configuration<typename A::State> config;
  config.states.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    config.states.push_back(alg.init(v == 0 ? Role::Broadcaster : Role::Ordinary));
  }
  config.informed.assign(n, false);
  if (n > 0) config.informed[0] = true;
  return config;
}

template <AnonymousAlgorithm A>
std::vector<bool> sending_flags(const A& alg, const Configuration<typename A::State>& config) {
  std::vector<bool> sending(config.n());
  for (std::size_t v = 0; v < config.n(); ++v) sending[v] = alg.emit(config.states[v]).has_value();
  return sending;
}

template <AnonymousAlgorithm A>
std::pair<Configuration<typename A::State>, RoundRecord> execute_round(
    const Configuration<typename A::State>& config, const Snapshot& snapshot, const A& alg) {
  using Message = typename A::Message;
  const std::size_t n = config.n();
  if (snapshot.n() != n) {
    throw ModelViolation("snapshot has " + std::to_string(snapshot.n()) +
                         " nodes but the configuration has " + std::to_string(n));
  }
  if (!snapshot.connected()) {
    throw ModelViolation("disconnected snapshot in round " + std::to_string(config.t));
  }

  std::vector<std::optional<Message>> outgoing(n);
  RoundRecord record;
  record.t = config.t;
  record.snapshot = snapshot;
  record.senders.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    outgoing[v] = alg.emit(config.states[v]);
    if (outgoing[v]) {
      record.senders[v] = true;
      ++record.messages_sent;
    }
  }

  std::vector<MessageBag<Message>> bags(n);
  std::vector<bool> hears_informed(n, false);
  for (const Edge& e : snapshot.edges()) {
    if (outgoing[e.u]) {
      bags[e.v].insert(*outgoing[e.u]);
      ++record.deliveries;
      if (config.informed[e.u]) hears_informed[e.v] = true;
    }
    if (outgoing[e.v]) {
      bags[e.u].insert(*outgoing[e.v]);
      ++record.deliveries;
      if (config.informed[e.v]) hears_informed[e.u] = true;
    }
  }

  Configuration<typename A::State> next;
  next.t = config.t + 1;
  next.states.reserve(n);
  next.informed = config.informed;
  for (std::size_t v = 0; v < n; ++v) {
    next.states.push_back(alg.step(config.states[v], bags[v]));
    if (!config.informed[v] && hears_informed[v]) {
      next.informed[v] = true;
      record.newly_informed.push_back(v);
    }
  }
  return {std::move(next), std::move(record)};
}

template <AnonymousAlgorithm A>
bool detect_stabilization(const Configuration<typename A::State>& config, const A& alg) {
  return std::all_of(config.states.begin(), config.states.end(),
                     [&](const typename A::State& s) { return is_idle(alg, s); });
}

namespace detail {

template <AnonymousAlgorithm A>
void audit_into(const A& alg, const Configuration<typename A::State>& config,
                std::vector<std::string>& out) {
  if constexpr (AuditedAlgorithm<A>) {
    if (auto failure = alg.audit(std::span<const typename A::State>(config.states), config.t)) {
      out.push_back(std::move(*failure));
    }
  }
}

}  // namespace detail

/// Runs from the initial configuration (node 0 is the broadcaster) until every
/// node is idle or max_rounds rounds have executed.
/// With keep_snapshots false each RoundRecord holds an empty edge set, which
/// keeps long runs on dense schedules small; such traces cannot be exported.
template <AnonymousAlgorithm A>
Trace<typename A::State> run(const A& alg, const Adversary& adversary, std::size_t n,
                             std::size_t max_rounds, bool keep_snapshots = true) {
  if (n < 1) throw std::invalid_argument("run needs at least one node");
  if (adversary.n() != n) {
    throw ModelViolation("adversary " + adversary.name() + " is built for " +
                         std::to_string(adversary.n()) + " nodes, not " + std::to_string(n));
  }
  Trace<typename A::State> trace;
  trace.algorithm = alg.name();
  trace.adversary = adversary.name();
  trace.max_rounds = max_rounds;
  trace.configurations.push_back(initial_configuration(alg, n));
  detail::audit_into(alg, trace.configurations.back(), trace.violations);
  const Snapshot dropped(n, {});

  for (;;) {
    const auto& current = trace.configurations.back();
    if (detect_stabilization(current, alg)) {
      trace.stabilized = true;
      break;
    }
    if (current.t >= max_rounds) break;
    const std::vector<bool> sending = sending_flags(alg, current);
    const Snapshot snapshot = adversary.next(AdversaryView{current.t, current.informed, sending});
    auto [next, record] = execute_round(current, snapshot, alg);
    if (!keep_snapshots) record.snapshot = dropped;
    trace.rounds.push_back(std::move(record));
    trace.configurations.push_back(std::move(next));
    detail::audit_into(alg, trace.configurations.back(), trace.violations);
  }
  return trace;
}

template <AnonymousAlgorithm A>
Metrics compute_metrics(const Trace<typename A::State>& trace, const A& alg) {
  Metrics m;
  m.n = trace.n();
  m.rounds_executed = trace.rounds.size();
  for (const auto& config : trace.configurations) {
    if (!m.rounds_to_all_informed && config.all_informed()) m.rounds_to_all_informed = config.t;
    for (const auto& s : config.states) {
      m.peak_state_bits = std::max(m.peak_state_bits, static_cast<int>(alg.bits(s)));
      if constexpr (CounterAlgorithm<A>) {
        m.peak_counter_value = std::max(m.peak_counter_value, static_cast<long long>(alg.peak_counter(s)));
      }
    }
  }
  if (trace.stabilized) m.rounds_to_stabilization = trace.last().t;
  for (const auto& r : trace.rounds) m.total_messages += r.deliveries;
  const auto& last = trace.last().informed;
  m.uninformed_at_end = static_cast<std::size_t>(std::count(last.begin(), last.end(), false));
  return m;
}

/// JSON Lines: a header object, then one object per round holding the
/// snapshot and the pre-round configuration, then a closing object with the
/// final configuration (empty edge list, zero messages).
template <AnonymousAlgorithm A>
void write_trace_jsonl(std::ostream& out, const Trace<typename A::State>& trace, const A& alg) {
  nlohmann::json header = {{"algorithm", trace.algorithm},
                           {"adversary", trace.adversary},
                           {"n", trace.n()},
                           {"seed", trace.seed}};
  out << header.dump() << '\n';
  auto line = [&](const Configuration<typename A::State>& config, const RoundRecord* round) {
    nlohmann::json edges = nlohmann::json::array();
    if (round) {
      for (const Edge& e : round->snapshot.edges()) edges.push_back({e.u, e.v});
    }
    nlohmann::json states = nlohmann::json::array();
    for (const auto& s : config.states) states.push_back(alg.state_json(s));
    nlohmann::json informed = nlohmann::json::array();
    for (bool b : config.informed) informed.push_back(b);
    nlohmann::json obj = {{"t", config.t},
                          {"edges", std::move(edges)},
                          {"states", std::move(states)},
                          {"informed", std::move(informed)},
                          {"messages_sent", round ? round->messages_sent : 0}};
    out << obj.dump() << '\n';
  };
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) line(trace.configurations[i], &trace.rounds[i]);
  line(trace.last(), nullptr);
}

nlohmann::json metrics_json(const Metrics& m);

}  // namespace dynbcast
