// Dynamic-topology generators. Each round the adversary fixes a connected
// snapshot; it may read the configuration it is about to act on (informed
// flags and which nodes are about to send).

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dynbcast/snapshot.hpp"

namespace dynbcast {

/// Read-only view of a configuration at the start of round t.
struct AdversaryView {
  std::size_t t = 0;
  const std::vector<bool>& informed;
  const std::vector<bool>& sending;

  [[nodiscard]] std::size_t n() const noexcept { return informed.size(); }
};

class Adversary {
 public:
  virtual ~Adversary() = default;

  /// Snapshot for round t. Implementations are deterministic in (t, view)
  /// and their construction parameters.
  [[nodiscard]] virtual Snapshot next(const AdversaryView& view) const = 0;
  [[nodiscard]] virtual std::size_t n() const noexcept = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

using AdversaryPtr = std::unique_ptr<const Adversary>;

/// Same snapshot every round. Rejects a disconnected edge set.
AdversaryPtr static_adversary(std::size_t n, EdgeList edges);

/// K_n every round.
AdversaryPtr complete_adversary(std::size_t n);

/// Uniform random labeled spanning tree (Prufer decoding) plus each remaining
/// pair independently with probability extra_edge_prob. Deterministic given
/// (seed, t, n).
AdversaryPtr random_connected_adversary(std::size_t n, std::uint64_t seed, double extra_edge_prob);

/// Informed nodes form a clique, uninformed nodes a path in index order, and
/// the lowest uninformed node hangs off one informed node (the lowest-index
/// sender if any informed node is sending, else the lowest informed index).
/// Returns K_n once everybody is informed.
AdversaryPtr spooling_adversary(std::size_t n);

/// Static core on nodes 0..m-1 (broadcaster 0), static path v_0..v_{L-1} on
/// nodes m..m+L-1, and a single moving bridge {0, v_min(t, L-1)}.
AdversaryPtr path_sequester_adversary(std::size_t m, EdgeList core, std::size_t path_len);

/// path_sequester_adversary with core K_m.
AdversaryPtr path_sequester_adversary(std::size_t m, std::size_t path_len);

/// Uniform labeled tree on n >= 2 nodes from a Prufer sequence of length n-2.
EdgeList prufer_decode(std::size_t n, const std::vector<NodeId>& sequence);

}  // namespace dynbcast
