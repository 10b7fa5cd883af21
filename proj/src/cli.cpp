#include "dynbcast/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "dynbcast/checker.hpp"
#include "dynbcast/registry.hpp"
#include "json.hpp"

namespace dynbcast::cli {

namespace {

using nlohmann::json;

std::optional<std::size_t> parse_horizon(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw std::invalid_argument("max rounds must be a non-negative integer or \"auto\"");
  }
  return static_cast<std::size_t>(value);
}

/// "4,8,16" and "0-19" style lists.
std::vector<std::uint64_t> expand_list(const std::vector<std::string>& items, const char* what) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : items) {
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);
    try {
      std::size_t used = 0;
      if (dash == std::string::npos) {
        out.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        const auto lo = std::stoull(item.substr(0, dash), &used);
        if (used != dash) throw std::invalid_argument(item);
        const auto hi = std::stoull(item.substr(dash + 1), &used);
        if (used != item.size() - dash - 1 || hi < lo) throw std::invalid_argument(item);
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

std::string rounds_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("never");
}

std::string broadcast_text(const Metrics& m) {
  if (m.uninformed_at_end == 0) return "complete";
  return m.broadcast_failed() ? "FAILED" : "incomplete";
}

json outcome_json(const RunOutcome& o) {
  json j = metrics_json(o.metrics);
  j["algorithm"] = o.algorithm;
  j["adversary"] = o.adversary;
  j["seed"] = o.seed;
  j["horizon"] = o.horizon;
  j["audit_violations"] = o.audit_violations;
  return j;
}

const char* kCsvHeader =
    "algorithm,adversary,n,seed,rounds_to_all_informed,rounds_to_stabilization,"
    "peak_counter_value,peak_state_bits,total_messages,uninformed_at_end,audit_violations,"
    "stabilization_bound,within_bounds";

std::string csv_row(const RunOutcome& o) {
  std::ostringstream os;
  const Metrics& m = o.metrics;
  os << o.algorithm << ',' << o.adversary << ',' << m.n << ',' << o.seed << ','
     << rounds_text(m.rounds_to_all_informed) << ',' << rounds_text(m.rounds_to_stabilization) << ','
     << m.peak_counter_value << ',' << m.peak_state_bits << ',' << m.total_messages << ','
     << m.uninformed_at_end << ',' << o.audit_violations << ',' << stabilization_bound(m.n) << ','
     << (o.countdown ? (o.within_countdown_bounds() ? "yes" : "no") : "n/a");
  return os.str();
}

void print_table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
}

void print_outcome(std::ostream& out, const RunOutcome& o, const std::string& format) {
  if (format == "json") {
    out << outcome_json(o).dump(2) << '\n';
  } else if (format == "csv") {
    out << kCsvHeader << '\n' << csv_row(o) << '\n';
  } else {
    const Metrics& m = o.metrics;
    print_table(out, {{"algorithm", o.algorithm},
                      {"adversary", o.adversary},
                      {"n", std::to_string(m.n)},
                      {"seed", std::to_string(o.seed)},
                      {"horizon", std::to_string(o.horizon)},
                      {"rounds_to_all_informed", rounds_text(m.rounds_to_all_informed)},
                      {"rounds_to_stabilization", rounds_text(m.rounds_to_stabilization)},
                      {"peak_counter_value", std::to_string(m.peak_counter_value)},
                      {"peak_state_bits", std::to_string(m.peak_state_bits)},
                      {"total_messages", std::to_string(m.total_messages)},
                      {"uninformed_at_end", std::to_string(m.uninformed_at_end)},
                      {"audit_violations", std::to_string(o.audit_violations)},
                      {"broadcast", broadcast_text(m)}});
  }
}

struct RunFlags {
  std::string algorithm;
  std::string adversary;
  std::string max_rounds;
  std::string trace;
  std::string scenario;
  std::string format = "table";
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

Scenario resolve_scenario(const CLI::App& cmd, const RunFlags& flags) {
  Scenario s;
  if (!flags.scenario.empty()) s = load_scenario(flags.scenario);
  if (cmd.count("--algorithm")) s.algorithm = flags.algorithm;
  if (cmd.count("--adversary")) s.adversary = flags.adversary;
  if (cmd.count("--nodes")) s.n = flags.n;
  if (cmd.count("--seed")) s.seed = flags.seed;
  if (cmd.count("--max-rounds")) s.max_rounds = parse_horizon(flags.max_rounds);
  if (cmd.count("--trace")) s.trace_path = flags.trace;
  if (s.n < 1) throw std::invalid_argument("node count must be given and >= 1");
  return s;
}

int cmd_run(const CLI::App& cmd, const RunFlags& flags, std::ostream& out) {
  const Scenario scenario = resolve_scenario(cmd, flags);
  const RunOutcome outcome = run_scenario(scenario);
  print_outcome(out, outcome, flags.format);
  return outcome.succeeded() ? kSuccess : kExpectationFailed;
}

int cmd_sweep(const RunFlags& flags, const std::vector<std::string>& node_items,
              const std::vector<std::string>& seed_items, unsigned jobs, std::ostream& out) {
  const auto nodes = expand_list(node_items, "node count");
  const auto seeds = seed_items.empty() ? std::vector<std::uint64_t>{0} : expand_list(seed_items, "seed");
  if (nodes.empty() || seeds.empty()) throw std::invalid_argument("sweep needs nonempty node and seed lists");

  std::vector<Scenario> grid;
  for (auto n : nodes) {
    for (auto seed : seeds) {
      Scenario s;
      s.algorithm = flags.algorithm;
      s.adversary = flags.adversary;
      s.n = static_cast<std::size_t>(n);
      s.seed = seed;
      if (!flags.max_rounds.empty()) s.max_rounds = parse_horizon(flags.max_rounds);
      if (s.n < 1) throw std::invalid_argument("node counts must be >= 1");
      grid.push_back(std::move(s));
    }
  }
  // Fail fast on bad names before spawning workers.
  parse_algorithm(flags.algorithm);
  parse_adversary(flags.adversary, grid.front().n, grid.front().seed);

  std::vector<RunOutcome> results(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        results[i] = run_scenario(grid[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  bool ok = true;
  for (const auto& r : results) {
    if (r.countdown && !r.within_countdown_bounds()) ok = false;
  }
  if (flags.format == "json") {
    json rows = json::array();
    for (const auto& r : results) rows.push_back(outcome_json(r));
    out << rows.dump(2) << '\n';
  } else {
    out << kCsvHeader << '\n';
    for (const auto& r : results) out << csv_row(r) << '\n';
  }
  return ok ? kSuccess : kExpectationFailed;
}

int cmd_check(std::size_t n, std::optional<std::size_t> depth, const CheckOptions& options,
              const std::string& witness_path, const std::string& format, std::ostream& out) {
  if (n < 2 || n > 5) throw std::invalid_argument("check supports 2 <= n <= 5");
  if (n == 5 && !options.allow_n5) throw std::invalid_argument("n = 5 requires --allow-n5");
  const std::size_t bound = depth.value_or(stabilization_bound(n));
  const Countdown alg;
  const CheckReport stabilization = verify_universal_stabilization(alg, n, bound, options);
  const CheckReport invariants = verify_invariants(alg, n, bound, options);
  const bool passed = stabilization.all_stable_at_bound && invariants.all_stable_at_bound &&
                      invariants.violation_count == 0;

  if (!witness_path.empty() && !invariants.invariant_violations.empty()) {
    std::ofstream w(witness_path);
    if (!w) throw std::invalid_argument("cannot write witness file " + witness_path);
    w << invariants.invariant_violations.front().witness_jsonl;
  }
  if (format == "json") {
    json doc = {{"stabilization", check_report_json(stabilization)},
                {"invariants", check_report_json(invariants)},
                {"passed", passed}};
    out << doc.dump(2) << '\n';
  } else {
    print_table(out, {{"n", std::to_string(n)},
                      {"depth_bound", std::to_string(bound)},
                      {"reachable_count", std::to_string(stabilization.reachable_count)},
                      {"all_stable_at_bound", stabilization.all_stable_at_bound ? "true" : "false"},
                      {"worst_stabilization_depth", std::to_string(stabilization.worst_stabilization_depth)},
                      {"invariant_violations", std::to_string(invariants.violation_count)},
                      {"passed", passed ? "true" : "false"}});
  }
  return passed ? kSuccess : kExpectationFailed;
}

void add_common(CLI::App& cmd, RunFlags& flags) {
  cmd.add_option("--algorithm", flags.algorithm, "countdown | flood-forever | bounded-flood:K");
  cmd.add_option("--adversary", flags.adversary,
                 "static:FILE | complete | random:SEED:P | spooling | sequester:M:L");
  cmd.add_option("--max-rounds", flags.max_rounds, "round horizon or \"auto\" (10x the stabilization bound)");
}

}  // namespace

bool RunOutcome::succeeded() const {
  return metrics.rounds_to_stabilization.has_value() && metrics.uninformed_at_end == 0 &&
         audit_violations == 0;
}

bool RunOutcome::within_countdown_bounds() const {
  if (!succeeded()) return false;
  const std::size_t n = metrics.n;
  if (*metrics.rounds_to_stabilization > stabilization_bound(n)) return false;
  if (n >= 2 && metrics.peak_counter_value > 2 * static_cast<long long>(n - 1)) return false;
  return true;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("scenario " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("scenario " + path + " must be a JSON object");
  Scenario s;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "algorithm") {
        s.algorithm = value.get<std::string>();
      } else if (key == "adversary") {
        s.adversary = value.get<std::string>();
      } else if (key == "n") {
        s.n = value.get<std::size_t>();
      } else if (key == "seed") {
        s.seed = value.get<std::uint64_t>();
      } else if (key == "max_rounds") {
        s.max_rounds = value.is_string() ? parse_horizon(value.get<std::string>())
                                         : std::optional<std::size_t>(value.get<std::size_t>());
      } else if (key == "trace_path") {
        if (!value.is_null()) s.trace_path = value.get<std::string>();
      } else {
        throw std::invalid_argument("unknown scenario key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument("scenario " + path + ": " + e.what());
  }
  return s;
}

RunOutcome run_scenario(const Scenario& scenario) {
  const AnyAlgorithm algorithm = parse_algorithm(scenario.algorithm);
  const AdversaryPtr adversary = parse_adversary(scenario.adversary, scenario.n, scenario.seed);
  const std::size_t horizon = scenario.max_rounds.value_or(auto_horizon(scenario.n));

  return std::visit(
      [&](const auto& alg) {
        auto trace = run(alg, *adversary, scenario.n, horizon, scenario.trace_path.has_value());
        trace.adversary = scenario.adversary;
        trace.seed = scenario.seed;
        if (scenario.trace_path) {
          std::ofstream file(*scenario.trace_path, std::ios::binary);
          if (!file) throw std::invalid_argument("cannot write trace file " + *scenario.trace_path);
          write_trace_jsonl(file, trace, alg);
        }
        RunOutcome o;
        o.metrics = compute_metrics(trace, alg);
        o.algorithm = alg.name();
        o.adversary = scenario.adversary;
        o.seed = scenario.seed;
        o.horizon = horizon;
        o.audit_violations = trace.violations.size();
        o.countdown = std::is_same_v<std::decay_t<decltype(alg)>, Countdown>;
        return o;
      },
      algorithm);
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Broadcast in anonymous 1-interval-connected dynamic networks", "dynbcast"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario and print its metrics");
  add_common(*run_cmd, run_flags);
  run_cmd->add_option("--nodes,-n", run_flags.n, "node count");
  run_cmd->add_option("--seed", run_flags.seed, "scenario seed");
  run_cmd->add_option("--trace", run_flags.trace, "write a JSON Lines trace here");
  run_cmd->add_option("--scenario", run_flags.scenario, "JSON scenario file; flags override it");
  run_cmd->add_option("--format", run_flags.format)->check(CLI::IsMember({"table", "json", "csv"}));

  RunFlags sweep_flags;
  sweep_flags.algorithm = "countdown";
  sweep_flags.adversary = "complete";
  sweep_flags.format = "csv";
  std::vector<std::string> sweep_nodes;
  std::vector<std::string> sweep_seeds;
  unsigned jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the cross product of node counts and seeds");
  add_common(*sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--nodes,-n", sweep_nodes, "node counts, e.g. 4,8,16 or 2-10")->delimiter(',');
  sweep_cmd->add_option("--seeds,--seed", sweep_seeds, "seeds, e.g. 0-19")->delimiter(',');
  sweep_cmd->add_option("--jobs,-j", jobs, "parallel workers");
  sweep_cmd->add_option("--format", sweep_flags.format)->check(CLI::IsMember({"csv", "json"}));

  std::size_t check_n = 0;
  std::size_t check_depth = 0;
  CheckOptions check_options;
  std::string witness_path;
  std::string check_format = "json";
  auto* check_cmd = app.add_subcommand("check", "Exhaustively verify Countdown for small n");
  check_cmd->add_option("--nodes,-n", check_n, "node count (2..4, or 5 with --allow-n5)")->required();
  check_cmd->add_option("--depth", check_depth, "depth bound (default: stabilization bound)");
  check_cmd->add_option("--cap", check_options.config_cap, "abort after this many configurations");
  check_cmd->add_flag("--allow-n5", check_options.allow_n5, "permit n = 5 (728 snapshots per round)");
  check_cmd->add_option("--witness", witness_path, "write the first violation witness as JSONL");
  check_cmd->add_option("--format", check_format)->check(CLI::IsMember({"table", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(*run_cmd, run_flags, out);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, sweep_nodes, sweep_seeds, jobs, out);
    if (*check_cmd) {
      std::optional<std::size_t> depth;
      if (check_cmd->count("--depth")) depth = check_depth;
      return cmd_check(check_n, depth, check_options, witness_path, check_format, out);
    }
  } catch (const ConfigurationCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ModelViolation& e) {
    err << "model violation: " << e.what() << '\n';
    return kExpectationFailed;
  }
  return kUsage;
}

}  // namespace dynbcast::cli
