#include "dynbcast/checker.hpp"

namespace dynbcast {

std::optional<std::string> countdown_invariant(const Configuration<CountdownState>& config) {
  const auto n = static_cast<std::int64_t>(config.n());
  const std::int64_t cap = 2 * (n - 1);
  std::optional<CountdownState> shared;
  for (std::size_t v = 0; v < config.n(); ++v) {
    const CountdownState& s = config.states[v];
    std::ostringstream why;
    if (s.current == -1) {
      if (s.maximum < -1 || s.maximum == 0 || s.maximum > cap) {
        why << "idle node " << v << " has maximum " << s.maximum;
      }
    } else if (s.current < 0 || s.current > s.maximum || s.maximum > cap) {
      why << "node " << v << " has (" << s.current << "," << s.maximum << ") outside 0 <= current <= maximum <= "
          << cap;
    } else if (!shared) {
      shared = s;
    } else if (*shared != s) {
      why << "non-idle nodes disagree: (" << shared->current << "," << shared->maximum << ") vs ("
          << s.current << "," << s.maximum << ") at node " << v;
    }
    if (const std::string msg = why.str(); !msg.empty()) return "t=" + std::to_string(config.t) + ": " + msg;
  }
  if (shared) {
    const AttemptValues expected = expected_attempt_values(config.t);
    if (shared->current != expected.c || shared->maximum != expected.m) {
      std::ostringstream why;
      why << "t=" << config.t << ": shared pair (" << shared->current << "," << shared->maximum
          << ") differs from the attempt recurrence (" << expected.c << "," << expected.m << ")";
      return why.str();
    }
  }
  return std::nullopt;
}

nlohmann::json check_report_json(const CheckReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.invariant_violations) {
    violations.push_back({{"depth", v.depth}, {"message", v.message}});
  }
  return {{"algorithm", report.algorithm},
          {"n", report.n},
          {"depth_bound", report.depth_bound},
          {"reachable_count", report.reachable_count},
          {"all_stable_at_bound", report.all_stable_at_bound},
          {"invariant_violations", std::move(violations)},
          {"violation_count", report.violation_count},
          {"worst_stabilization_depth", report.worst_stabilization_depth},
          {"frontier_size", report.frontier_size},
          {"frontier_unfinished", report.frontier_unfinished}};
}

}  // namespace dynbcast
