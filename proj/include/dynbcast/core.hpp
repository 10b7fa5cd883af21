// Execution-model contracts shared by every algorithm, adversary and checker.
//
// A node is anonymous: it sees only its own state and the multiset of
// messages delivered to it. Algorithms therefore expose exactly three pure
// functions (init, emit, step) plus a state-size accountant (bits).

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dynbcast {

enum class Role { Broadcaster, Ordinary };

/// Raised when an execution breaks the model (disconnected snapshot, node
/// count mismatch, counter overflow guard).
class ModelViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical multiset of messages: (message, count) pairs sorted by message.
template <std::totally_ordered Message>
class MessageBag {
 public:
  using Entry = std::pair<Message, std::size_t>;

  MessageBag() = default;

  void insert(const Message& m, std::size_t count = 1) {
    if (count == 0) return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), m,
                               [](const Entry& e, const Message& v) { return e.first < v; });
    if (it != entries_.end() && it->first == m) {
      it->second += count;
    } else {
      entries_.insert(it, Entry{m, count});
    }
    total_ += count;
  }

  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::size_t total() const noexcept { return total_; }
  [[nodiscard]] std::size_t distinct() const noexcept { return entries_.size(); }
  [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }

  [[nodiscard]] std::size_t count(const Message& m) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), m,
                               [](const Entry& e, const Message& v) { return e.first < v; });
    return (it != entries_.end() && it->first == m) ? it->second : 0;
  }

  /// Greatest message in the bag; the bag must be nonempty.
  [[nodiscard]] const Message& max() const { return entries_.back().first; }

  void clear() noexcept {
    entries_.clear();
    total_ = 0;
  }

  friend bool operator==(const MessageBag&, const MessageBag&) = default;

 private:
  std::vector<Entry> entries_;
  std::size_t total_ = 0;
};

template <std::totally_ordered Message>
MessageBag<Message> canonical_bag(std::span<const Message> messages) {
  std::vector<Message> sorted(messages.begin(), messages.end());
  std::sort(sorted.begin(), sorted.end());
  MessageBag<Message> bag;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    bag.insert(sorted[i], j - i);
    i = j;
  }
  return bag;
}

template <std::totally_ordered Message>
MessageBag<Message> canonical_bag(std::initializer_list<Message> messages) {
  return canonical_bag(std::span<const Message>(messages.begin(), messages.size()));
}

// clang-format off
template <class A>
concept AnonymousAlgorithm =
    std::totally_ordered<typename A::State> &&
    std::totally_ordered<typename A::Message> &&
    requires(const A& alg, const typename A::State& s,
             const MessageBag<typename A::Message>& bag, Role role) {
      { alg.init(role) } -> std::same_as<typename A::State>;
      { alg.emit(s) } -> std::same_as<std::optional<typename A::Message>>;
      { alg.step(s, bag) } -> std::same_as<typename A::State>;
      { alg.bits(s) } -> std::convertible_to<int>;
      { alg.name() } -> std::convertible_to<std::string>;
    };

/// Algorithms whose state carries a round counter (the Countdown family).
template <class A>
concept CounterAlgorithm = AnonymousAlgorithm<A> &&
    requires(const A& alg, const typename A::State& s) {
      { alg.peak_counter(s) } -> std::convertible_to<long long>;
    };

/// Algorithms that can audit a whole configuration at time t.
template <class A>
concept AuditedAlgorithm = AnonymousAlgorithm<A> &&
    requires(const A& alg, std::span<const typename A::State> states, std::size_t t) {
      { alg.audit(states, t) } -> std::same_as<std::optional<std::string>>;
    };
// clang-format on

/// A node is idle when it sends nothing next round and an empty bag leaves
/// its state unchanged.
template <AnonymousAlgorithm A>
bool is_idle(const A& alg, const typename A::State& state) {
  if (alg.emit(state).has_value()) return false;
  return alg.step(state, MessageBag<typename A::Message>{}) == state;
}

}  // namespace dynbcast
