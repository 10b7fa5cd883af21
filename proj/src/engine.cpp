#include "dynbcast/engine.hpp"

#include <bit>

namespace dynbcast {

std::size_t stabilization_bound(std::size_t n) {
  if (n <= 1) return 1;
  // ceil(log2 n) == bit_width(n - 1) for n >= 2
  const auto ceil_log2 = static_cast<std::size_t>(std::bit_width(n - 1));
  return 4 * n + ceil_log2 + 2;
}

std::size_t auto_horizon(std::size_t n) { return 10 * stabilization_bound(n); }

nlohmann::json metrics_json(const Metrics& m) {
  auto optional_rounds = [](const std::optional<std::size_t>& v) -> nlohmann::json {
    if (v) return *v;
    return "never";
  };
  return {{"n", m.n},
          {"rounds_to_all_informed", optional_rounds(m.rounds_to_all_informed)},
          {"rounds_to_stabilization", optional_rounds(m.rounds_to_stabilization)},
          {"peak_counter_value", m.peak_counter_value},
          {"peak_state_bits", m.peak_state_bits},
          {"total_messages", m.total_messages},
          {"uninformed_at_end", m.uninformed_at_end},
          {"rounds_executed", m.rounds_executed},
          {"broadcast", m.broadcast_failed() ? "FAILED" : (m.uninformed_at_end == 0 ? "complete" : "incomplete")}};
}

}  // namespace dynbcast
