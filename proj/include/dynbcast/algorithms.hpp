// Concrete anonymous broadcast algorithms.
//
//   Countdown     - doubling attempts; stabilizes in O(n) rounds with
//                   O(log n) bits per node.
//   FloodForever  - every informed node sends forever; never stabilizes.
//   BoundedFlood  - constant-memory idle-start strawman: relay for K rounds
//                   after first contact, then go quiet.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "dynbcast/core.hpp"
#include "json.hpp"

namespace dynbcast {

// ---------------------------------------------------------------------------
// Countdown

struct CountdownState {
  std::int64_t current = -1;  // rounds remaining in the attempt; -1 means idle
  std::int64_t maximum = -1;  // duration of the attempt; -1 before first contact

  auto operator<=>(const CountdownState&) const = default;
};

struct CountdownMessage {
  std::int64_t current = 0;
  std::int64_t maximum = 0;

  auto operator<=>(const CountdownMessage&) const = default;
};

/// The pair (c_t, m_t) shared by every non-idle Countdown node at time t.
struct AttemptValues {
  std::int64_t c = 0;
  std::int64_t m = 1;

  auto operator<=>(const AttemptValues&) const = default;
};

/// Iterates (c, m) <- (2m, 2m) if c == 0 else (c - 1, m), t times from (0, 1).
AttemptValues expected_attempt_values(std::size_t t);

class Countdown {
 public:
  using State = CountdownState;
  using Message = CountdownMessage;

  [[nodiscard]] State init(Role role) const {
    return role == Role::Broadcaster ? State{0, 1} : State{-1, -1};
  }

  [[nodiscard]] std::optional<Message> emit(const State& s) const {
    if (s.current != -1) return Message{s.current, s.maximum};
    return std::nullopt;
  }

  // Non-idle nodes only decrement. An idle node that hears anything picks the
  // lexicographically greatest message; in reachable executions every
  // received message is identical, so the choice never matters.
  [[nodiscard]] State step(const State& s, const MessageBag<Message>& bag) const {
    if (s.current != -1) return State{s.current - 1, s.maximum};
    if (bag.empty()) return s;
    const Message& msg = bag.max();
    if (msg.current == 0) return State{2 * msg.maximum, 2 * msg.maximum};
    if (msg.current > 0) return State{msg.current - 1, msg.maximum};
    return s;
  }

  /// Sign bit plus magnitude bits for each of the two counters.
  [[nodiscard]] int bits(const State& s) const;

  [[nodiscard]] long long peak_counter(const State& s) const { return s.maximum; }

  /// Checks the synchronization property at time t: every non-idle node holds
  /// exactly expected_attempt_values(t), with current <= maximum <= 2n.
  [[nodiscard]] std::optional<std::string> audit(std::span<const State> states,
                                                 std::size_t t) const;

  [[nodiscard]] std::string name() const { return "countdown"; }

  [[nodiscard]] nlohmann::json state_json(const State& s) const {
    return {{"current", s.current}, {"maximum", s.maximum}};
  }
};

// ---------------------------------------------------------------------------
// FloodForever

enum class FloodState : std::uint8_t { Uninformed, Informed };

struct Token {
  auto operator<=>(const Token&) const = default;
};

class FloodForever {
 public:
  using State = FloodState;
  using Message = Token;

  [[nodiscard]] State init(Role role) const {
    return role == Role::Broadcaster ? State::Informed : State::Uninformed;
  }
  [[nodiscard]] std::optional<Message> emit(const State& s) const {
    if (s == State::Informed) return Token{};
    return std::nullopt;
  }
  [[nodiscard]] State step(const State& s, const MessageBag<Message>& bag) const {
    return bag.empty() ? s : State::Informed;
  }
  [[nodiscard]] int bits(const State&) const { return 1; }
  [[nodiscard]] std::string name() const { return "flood-forever"; }
  [[nodiscard]] nlohmann::json state_json(const State& s) const {
    return s == State::Informed ? "informed" : "uninformed";
  }
};

FloodForever flood_forever_spec();

// ---------------------------------------------------------------------------
// BoundedFlood

struct BoundedFloodState {
  std::int64_t counter = -1;  // -1 idle, otherwise rounds of relaying left

  auto operator<=>(const BoundedFloodState&) const = default;
};

class BoundedFlood {
 public:
  using State = BoundedFloodState;
  using Message = Token;

  /// Throws std::invalid_argument when k < 1.
  explicit BoundedFlood(std::int64_t k);

  [[nodiscard]] std::int64_t k() const noexcept { return k_; }

  [[nodiscard]] State init(Role role) const {
    return role == Role::Broadcaster ? State{k_} : State{-1};
  }
  [[nodiscard]] std::optional<Message> emit(const State& s) const {
    if (s.counter >= 1) return Token{};
    return std::nullopt;
  }
  [[nodiscard]] State step(const State& s, const MessageBag<Message>& bag) const {
    if (s.counter >= 1) return State{s.counter - 1};
    if (s.counter == 0) return State{-1};
    return bag.empty() ? s : State{k_};
  }
  /// ceil(log2(K + 2)): the K + 2 counter values -1..K.
  [[nodiscard]] int bits(const State&) const { return bits_; }
  [[nodiscard]] std::string name() const { return "bounded-flood:" + std::to_string(k_); }
  [[nodiscard]] nlohmann::json state_json(const State& s) const {
    return {{"counter", s.counter}};
  }

 private:
  std::int64_t k_;
  int bits_;
};

BoundedFlood bounded_flood_spec(std::int64_t k);

}  // namespace dynbcast
