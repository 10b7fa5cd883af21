#include "dynbcast/algorithms.hpp"

#include <bit>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace dynbcast {

namespace {

int signed_bits(std::int64_t v) {
  const auto magnitude = static_cast<std::uint64_t>(v < 0 ? -v : v);
  return 1 + static_cast<int>(std::bit_width(magnitude));
}

}  // namespace

AttemptValues expected_attempt_values(std::size_t t) {
  AttemptValues v{0, 1};
  for (std::size_t i = 0; i < t; ++i) {
    v = (v.c == 0) ? AttemptValues{2 * v.m, 2 * v.m} : AttemptValues{v.c - 1, v.m};
  }
  return v;
}

int Countdown::bits(const State& s) const {
  return signed_bits(s.current) + signed_bits(s.maximum);
}

std::optional<std::string> Countdown::audit(std::span<const State> states, std::size_t t) const {
  const auto n = static_cast<std::int64_t>(states.size());
  std::optional<AttemptValues> expected;
  for (std::size_t v = 0; v < states.size(); ++v) {
    const State& s = states[v];
    std::ostringstream why;
    if (s.current < -1 || s.maximum < -1) {
      why << "node " << v << " has counters below -1";
    } else if (s.maximum > 2 * n) {
      why << "node " << v << " maximum " << s.maximum << " exceeds 2n = " << 2 * n;
    } else if (s.current != -1) {
      if (s.current > s.maximum) {
        why << "node " << v << " current " << s.current << " exceeds maximum " << s.maximum;
      } else {
        if (!expected) expected = expected_attempt_values(t);
        if (s.current != expected->c || s.maximum != expected->m) {
          why << "node " << v << " holds (" << s.current << "," << s.maximum
              << ") but the shared attempt values are (" << expected->c << "," << expected->m
              << ")";
        }
      }
    }
    std::string msg = why.str();
    if (!msg.empty()) return "t=" + std::to_string(t) + ": " + msg;
  }
  return std::nullopt;
}

FloodForever flood_forever_spec() { return FloodForever{}; }

BoundedFlood::BoundedFlood(std::int64_t k) : k_(k), bits_(0) {
  if (k < 1) throw std::invalid_argument("bounded-flood requires K >= 1");
  bits_ = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(k + 1)));
}

BoundedFlood bounded_flood_spec(std::int64_t k) { return BoundedFlood{k}; }

}  // namespace dynbcast
