#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "dynbcast/adversaries.hpp"
#include "dynbcast/checker.hpp"

using namespace dynbcast;

namespace {

// Mutant: non-idle nodes never decrement.
struct ForgetfulCountdown : Countdown {
  State step(const State& s, const MessageBag<Message>& bag) const {
    if (s.current != -1) return s;
    return Countdown::step(s, bag);
  }
  std::string name() const { return "forgetful-countdown"; }
};

template <class State>
std::set<ConfigKey<State>> successor_keys(const std::vector<Configuration<State>>& succ) {
  std::set<ConfigKey<State>> keys;
  for (const auto& c : succ) keys.insert(config_key(c));
  return keys;
}

}  // namespace

TEST_CASE("config_key pins the broadcaster and sorts the rest") {
  Configuration<CountdownState> a;
  a.states = {{-1, 1}, {2, 2}, {-1, -1}, {2, 2}};
  a.informed = {true, true, false, true};
  Configuration<CountdownState> b = a;
  std::swap(b.states[1], b.states[2]);
  std::vector<bool> informed = b.informed;
  informed[1] = a.informed[2];
  informed[2] = a.informed[1];
  b.informed = informed;
  CHECK(config_key(a) == config_key(b));

  Configuration<CountdownState> c = a;
  std::swap(c.states[0], c.states[1]);
  CHECK(config_key(a) != config_key(c));
}

TEST_CASE("successors of the initial configuration") {
  const Countdown cd;
  CHECK(successors(initial_configuration(cd, 2), cd, 2).size() == 1);
  // the broadcaster reaches one or both other nodes
  const auto succ3 = successors(initial_configuration(cd, 3), cd, 3);
  CHECK(succ3.size() <= 4);
  CHECK(succ3.size() == 2);
  CHECK_THROWS_AS(successors(initial_configuration(cd, 6), cd, 6), std::invalid_argument);
}

TEST_CASE("a stable configuration is its own unique successor") {
  const Countdown cd;
  Configuration<CountdownState> stable;
  stable.t = 9;
  stable.states = {{-1, 2}, {-1, 2}, {-1, 4}, {-1, 4}};
  stable.informed = {true, true, true, true};
  const auto succ = successors(stable, cd, 4);
  REQUIRE(succ.size() == 1);
  CHECK(config_key(succ.front()) == config_key(stable));
}

TEST_CASE("universal stabilization") {
  const Countdown cd;
  const CheckReport two = verify_universal_stabilization(cd, 2, 11);
  CHECK(two.all_stable_at_bound);
  CHECK(two.worst_stabilization_depth == 4);
  CHECK(two.reachable_count == 5);

  const CheckReport three = verify_universal_stabilization(cd, 3, 16);
  CHECK(three.all_stable_at_bound);
  CHECK(three.worst_stabilization_depth <= stabilization_bound(3));

  const CheckReport four = verify_universal_stabilization(cd, 4, 20);
  CHECK(four.all_stable_at_bound);
  CHECK(four.worst_stabilization_depth <= stabilization_bound(4));

  const CheckReport flood = verify_universal_stabilization(FloodForever{}, 2, 11);
  CHECK_FALSE(flood.all_stable_at_bound);
  CHECK(flood.frontier_unfinished == 1);
}

TEST_CASE("a too-shallow depth bound is reported as unfinished") {
  const CheckReport r = verify_universal_stabilization(Countdown{}, 3, 3);
  CHECK_FALSE(r.all_stable_at_bound);
  CHECK(r.frontier_unfinished > 0);
}

TEST_CASE("Countdown invariants on every reachable configuration") {
  const Countdown cd;
  const CheckReport three = verify_invariants(cd, 3, 16);
  CHECK(three.violation_count == 0);
  CHECK(three.all_stable_at_bound);
  const CheckReport four = verify_invariants(cd, 4, 20);
  CHECK(four.violation_count == 0);
  CHECK(four.all_stable_at_bound);
}

TEST_CASE("the checker catches a mutant and replays a witness") {
  const ForgetfulCountdown mutant;
  const CheckReport r = verify_invariants(mutant, 3, 8);
  REQUIRE(r.violation_count >= 1);
  REQUIRE_FALSE(r.invariant_violations.empty());
  CHECK_FALSE(r.all_stable_at_bound);

  const CheckViolation& v = r.invariant_violations.front();
  std::istringstream in(v.witness_jsonl);
  std::vector<nlohmann::json> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(nlohmann::json::parse(line));
  REQUIRE(lines.size() == v.depth + 2);
  CHECK(lines.front()["algorithm"] == "forgetful-countdown");

  // the replayed final configuration violates the invariant on its own
  const auto& last = lines.back();
  Configuration<CountdownState> config;
  config.t = last["t"].get<std::size_t>();
  for (const auto& s : last["states"]) {
    config.states.push_back({s["current"].get<std::int64_t>(), s["maximum"].get<std::int64_t>()});
  }
  for (const auto& b : last["informed"]) config.informed.push_back(b.get<bool>());
  CHECK(config.t == v.depth);
  CHECK(countdown_invariant(config).has_value());

  // every witness edge list is a connected graph
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    EdgeList edges;
    for (const auto& e : lines[i]["edges"]) edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
    CHECK(is_connected(Snapshot(3, edges)));
  }
}

TEST_CASE("on K_2 the checker's only path is the engine's trace") {
  const Countdown cd;
  const auto trace = run(cd, *complete_adversary(2), 2, 11);
  auto config = initial_configuration(cd, 2);
  for (std::size_t t = 0; t <= 11; ++t) {
    const auto& expected = t < trace.configurations.size() ? trace.configurations[t] : trace.last();
    CHECK(config.states == expected.states);
    CHECK(config.informed == expected.informed);
    const auto succ = successors(config, cd, 2);
    REQUIRE(succ.size() == 1);
    config = succ.front();
  }
}

TEST_CASE("config keys are a congruence for successors") {
  const Countdown cd;
  std::mt19937_64 gen(11);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto trace = run(cd, *random_connected_adversary(4, seed, 0.3), 4, 40);
    for (const auto& config : trace.configurations) {
      Configuration<CountdownState> shuffled = config;
      std::vector<std::size_t> perm{1, 2, 3};
      std::shuffle(perm.begin(), perm.end(), gen);
      for (std::size_t i = 0; i < 3; ++i) {
        shuffled.states[i + 1] = config.states[perm[i]];
        shuffled.informed[i + 1] = config.informed[perm[i]];
      }
      REQUIRE(config_key(shuffled) == config_key(config));
      CHECK(successor_keys(successors(config, cd, 4)) == successor_keys(successors(shuffled, cd, 4)));
    }
  }
}

TEST_CASE("checker guards") {
  const Countdown cd;
  CHECK_THROWS_AS(verify_universal_stabilization(cd, 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(verify_universal_stabilization(cd, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(verify_universal_stabilization(cd, 6, 3, {.allow_n5 = true}), std::invalid_argument);
  CHECK_THROWS_AS(verify_universal_stabilization(cd, 4, 20, {.config_cap = 3}), ConfigurationCapExceeded);
}

TEST_CASE("n = 5 behind the explicit flag") {
  const Countdown cd;
  const CheckReport r = verify_invariants(cd, 5, stabilization_bound(5), {.allow_n5 = true});
  CHECK(r.violation_count == 0);
  CHECK(r.all_stable_at_bound);
  CHECK(r.worst_stabilization_depth <= stabilization_bound(5));
}

TEST_CASE("check report serializes") {
  const CheckReport r = verify_universal_stabilization(Countdown{}, 2, 11);
  const auto j = check_report_json(r);
  CHECK(j["n"] == 2);
  CHECK(j["depth_bound"] == 11);
  CHECK(j["all_stable_at_bound"] == true);
  CHECK(j["worst_stabilization_depth"] == 4);
  CHECK(j["invariant_violations"].empty());
}
