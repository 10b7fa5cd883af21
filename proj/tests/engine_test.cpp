#include <algorithm>
#include <vector>

#include "doctest.h"
#include "dynbcast/adversaries.hpp"
#include "dynbcast/algorithms.hpp"
#include "dynbcast/engine.hpp"
#include "trace_properties.hpp"

using namespace dynbcast;
using dynbcast::testing::informed_monotone;
using dynbcast::testing::progress_failures;
using dynbcast::testing::synchronization_failures;

namespace {

// Sends its value when positive and adopts the largest value it hears. On a
// path a value would cross two hops in one round under sequential updates.
struct MaxRelay {
  using State = int;
  using Message = int;
  State init(Role r) const { return r == Role::Broadcaster ? 1 : 0; }
  std::optional<Message> emit(const State& s) const {
    if (s > 0) return s;
    return std::nullopt;
  }
  State step(const State& s, const MessageBag<Message>& bag) const {
    return bag.empty() ? s : std::max(s, bag.max());
  }
  int bits(const State&) const { return 1; }
  std::string name() const { return "max-relay"; }
  nlohmann::json state_json(const State& s) const { return s; }
};

std::vector<AdversaryPtr> adversary_zoo(std::size_t n) {
  std::vector<AdversaryPtr> zoo;
  zoo.push_back(complete_adversary(n));
  zoo.push_back(static_adversary(n, [&] {
    const Snapshot p = path_snapshot(n);
    return EdgeList(p.edges().begin(), p.edges().end());
  }()));
  zoo.push_back(spooling_adversary(n));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (double p : {0.0, 0.1, 0.5}) zoo.push_back(random_connected_adversary(n, seed, p));
  }
  if (n >= 3) {
    zoo.push_back(path_sequester_adversary(2, n - 2));
    zoo.push_back(path_sequester_adversary(n - 1, 1));
  }
  return zoo;
}

}  // namespace

TEST_CASE("execute_round on the path b-u-w") {
  const Countdown cd;
  Configuration<CountdownState> config = initial_configuration(cd, 3);
  REQUIRE(config.states == std::vector<CountdownState>{{0, 1}, {-1, -1}, {-1, -1}});
  const auto [next, record] = execute_round(config, path_snapshot(3), cd);
  CHECK(next.t == 1);
  CHECK(next.states == std::vector<CountdownState>{{-1, 1}, {2, 2}, {-1, -1}});
  CHECK(record.newly_informed == std::vector<NodeId>{1});
  CHECK(next.informed == std::vector<bool>{true, true, false});
  CHECK(record.messages_sent == 1);
  CHECK(record.deliveries == 1);
}

TEST_CASE("execute_round with every node idle changes nothing") {
  const Countdown cd;
  Configuration<CountdownState> config;
  config.states = {{-1, 2}, {-1, 2}, {-1, 2}};
  config.informed = {true, true, true};
  const auto [next, record] = execute_round(config, complete_snapshot(3), cd);
  CHECK(next.states == config.states);
  CHECK(record.messages_sent == 0);
  CHECK(record.newly_informed.empty());
}

TEST_CASE("execute_round flood_forever on K_2") {
  const FloodForever ff;
  const auto config = initial_configuration(ff, 2);
  const auto [next, record] = execute_round(config, complete_snapshot(2), ff);
  CHECK(next.states == std::vector<FloodState>{FloodState::Informed, FloodState::Informed});
  CHECK(record.newly_informed == std::vector<NodeId>{1});
}

TEST_CASE("execute_round updates all nodes simultaneously") {
  const MaxRelay relay;
  const auto config = initial_configuration(relay, 3);
  const auto [next, record] = execute_round(config, path_snapshot(3), relay);
  CHECK(next.states == std::vector<int>{1, 1, 0});
  CHECK(next.informed == std::vector<bool>{true, true, false});
}

TEST_CASE("execute_round rejects model violations") {
  const Countdown cd;
  const auto config = initial_configuration(cd, 4);
  CHECK_THROWS_AS(execute_round(config, Snapshot(4, {{0, 1}, {2, 3}}), cd), ModelViolation);
  CHECK_THROWS_AS(execute_round(config, complete_snapshot(3), cd), ModelViolation);
  CHECK_THROWS_AS(run(cd, *complete_adversary(3), 4, 10), ModelViolation);
}

TEST_CASE("detect_stabilization") {
  const Countdown cd;
  Configuration<CountdownState> idle;
  idle.states = {{-1, 2}, {-1, 4}, {-1, -1}};
  CHECK(detect_stabilization(idle, cd));
  Configuration<CountdownState> busy = idle;
  busy.states[1] = {0, 4};
  CHECK_FALSE(detect_stabilization(busy, cd));

  const FloodForever ff;
  Configuration<FloodState> flood;
  flood.states = {FloodState::Informed, FloodState::Uninformed};
  CHECK_FALSE(detect_stabilization(flood, ff));
}

TEST_CASE("run: Countdown on K_2 follows the hand-derived trace") {
  const Countdown cd;
  const auto trace = run(cd, *complete_adversary(2), 2, auto_horizon(2));
  const std::vector<std::vector<CountdownState>> golden{
      {{0, 1}, {-1, -1}}, {{-1, 1}, {2, 2}}, {{1, 2}, {1, 2}}, {{0, 2}, {0, 2}}, {{-1, 2}, {-1, 2}}};
  REQUIRE(trace.configurations.size() == golden.size());
  for (std::size_t t = 0; t < golden.size(); ++t) CHECK(trace.configurations[t].states == golden[t]);
  const Metrics m = compute_metrics(trace, cd);
  CHECK(m.rounds_to_all_informed == 1u);
  CHECK(m.rounds_to_stabilization == 4u);
  CHECK(m.peak_counter_value == 2);
  CHECK(m.total_messages == 1 + 1 + 2 + 2);
  CHECK(trace.violations.empty());
}

TEST_CASE("run: Countdown alone") {
  const Countdown cd;
  const auto trace = run(cd, *complete_adversary(1), 1, auto_horizon(1));
  const Metrics m = compute_metrics(trace, cd);
  CHECK(m.rounds_to_all_informed == 0u);
  CHECK(m.rounds_to_stabilization == 1u);
  CHECK(m.peak_counter_value == 1);
}

TEST_CASE("run: flood_forever under spooling") {
  const FloodForever ff;
  const auto trace = run(ff, *spooling_adversary(8), 8, 200);
  const Metrics m = compute_metrics(trace, ff);
  CHECK(m.rounds_to_all_informed == 7u);
  CHECK_FALSE(m.rounds_to_stabilization.has_value());
  CHECK(m.rounds_executed == 200);
  CHECK(m.peak_state_bits == 1);
  CHECK(m.peak_counter_value == 0);
  for (std::size_t t = 0; t < trace.configurations.size(); ++t) {
    const auto& informed = trace.configurations[t].informed;
    CHECK(static_cast<std::size_t>(std::count(informed.begin(), informed.end(), true)) ==
          std::min<std::size_t>(t + 1, 8));
  }
}

TEST_CASE("flood_forever never stabilizes") {
  const FloodForever ff;
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    for (std::size_t horizon : {1u, 7u, 60u}) {
      const auto trace = run(ff, *random_connected_adversary(n, n, 0.2), n, horizon);
      CHECK_FALSE(trace.stabilized);
      CHECK(trace.rounds.back().messages_sent > 0);
    }
  }
}

TEST_CASE("stabilization_bound") {
  CHECK(stabilization_bound(1) == 1);
  CHECK(stabilization_bound(2) == 11);
  CHECK(stabilization_bound(3) == 16);
  CHECK(stabilization_bound(4) == 20);
  CHECK(stabilization_bound(8) == 37);
  CHECK(stabilization_bound(9) == 42);
  CHECK(auto_horizon(2) == 110);
}

TEST_CASE("Countdown guarantees hold across the adversary zoo") {
  const Countdown cd;
  for (std::size_t n = 2; n <= 40; n += (n < 12 ? 1 : 7)) {
    for (const auto& adv : adversary_zoo(n)) {
      INFO("n = " << n << ", adversary = " << adv->name());
      const auto trace = run(cd, *adv, n, auto_horizon(n));
      const Metrics m = compute_metrics(trace, cd);
      REQUIRE(trace.stabilized);
      CHECK(m.uninformed_at_end == 0);
      CHECK(*m.rounds_to_stabilization <= stabilization_bound(n));
      CHECK(m.peak_counter_value <= 2 * static_cast<long long>(n - 1));
      CHECK(*m.rounds_to_all_informed <= *m.rounds_to_stabilization);
      CHECK(trace.violations.empty());
      CHECK(synchronization_failures(trace).empty());
      CHECK(progress_failures(trace).empty());
      CHECK(informed_monotone(trace));
      for (const auto& r : trace.rounds) {
        CHECK(r.messages_sent == static_cast<std::size_t>(std::count(r.senders.begin(), r.senders.end(), true)));
      }

      // idle-all is absorbing
      auto config = trace.last();
      for (std::size_t extra = 0; extra < 10; ++extra) {
        const std::vector<bool> sending = sending_flags(cd, config);
        const Snapshot s = adv->next(AdversaryView{config.t, config.informed, sending});
        auto [next, record] = execute_round(config, s, cd);
        CHECK(record.messages_sent == 0);
        CHECK(next.states == config.states);
        config = std::move(next);
      }
    }
  }
}

TEST_CASE("trace JSONL has a header and one line per configuration") {
  const Countdown cd;
  auto trace = run(cd, *complete_adversary(2), 2, 50);
  trace.seed = 5;
  std::ostringstream os;
  write_trace_jsonl(os, trace, cd);
  std::istringstream in(os.str());
  std::vector<nlohmann::json> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(nlohmann::json::parse(line));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == nlohmann::json{{"algorithm", "countdown"}, {"adversary", "complete"}, {"n", 2}, {"seed", 5}});
  CHECK(lines[1]["t"] == 0);
  CHECK(lines[1]["edges"] == nlohmann::json::parse("[[0,1]]"));
  CHECK(lines[1]["states"][0] == nlohmann::json{{"current", 0}, {"maximum", 1}});
  CHECK(lines[1]["informed"] == nlohmann::json::parse("[true,false]"));
  CHECK(lines[1]["messages_sent"] == 1);
  CHECK(lines[5]["t"] == 4);
  CHECK(lines[5]["states"][1] == nlohmann::json{{"current", -1}, {"maximum", 2}});
  CHECK(lines[5]["messages_sent"] == 0);
}

TEST_CASE("run without snapshots gives the same configurations and metrics") {
  const Countdown cd;
  const auto adv = spooling_adversary(20);
  const auto kept = run(cd, *adv, 20, auto_horizon(20));
  const auto dropped = run(cd, *adv, 20, auto_horizon(20), false);
  REQUIRE(kept.configurations.size() == dropped.configurations.size());
  for (std::size_t t = 0; t < kept.configurations.size(); ++t) {
    CHECK(kept.configurations[t].states == dropped.configurations[t].states);
  }
  const Metrics a = compute_metrics(kept, cd);
  const Metrics b = compute_metrics(dropped, cd);
  CHECK(a.total_messages == b.total_messages);
  CHECK(a.rounds_to_stabilization == b.rounds_to_stabilization);
  for (const auto& r : dropped.rounds) CHECK(r.snapshot.edges().empty());
}
