// Name registry shared by the CLI and scenario files.
//
//   algorithms:  countdown | flood-forever | bounded-flood:K
//   adversaries: static:FILE | complete | random:SEED:P | spooling | sequester:M:L
//
// Unknown names and malformed parameters throw std::invalid_argument.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "dynbcast/adversaries.hpp"
#include "dynbcast/algorithms.hpp"

namespace dynbcast {

using AnyAlgorithm = std::variant<Countdown, FloodForever, BoundedFlood>;

AnyAlgorithm parse_algorithm(std::string_view name);

/// The scenario seed offsets the SEED of random:SEED:P so sweeps over seeds
/// draw distinct schedules; other adversaries ignore it.
AdversaryPtr parse_adversary(std::string_view name, std::size_t n, std::uint64_t seed = 0);

/// Reads {"n": int (optional), "edges": [[u, v], ...]} and returns the edges;
/// n defaults to 1 + the largest endpoint.
EdgeList load_edge_file(const std::string& path, std::size_t& n);

}  // namespace dynbcast
