#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace dynbcast {

using NodeId = std::size_t;

struct Edge {
  NodeId u;
  NodeId v;

  auto operator<=>(const Edge&) const = default;
};

using EdgeList = std::vector<Edge>;

bool is_connected(std::size_t n, std::span<const Edge> edges);

/// One round's undirected graph. Edges are normalized to u < v, sorted and
/// deduplicated; self-loops and out-of-range endpoints throw
/// std::invalid_argument. Copies share the immutable edge storage.
class Snapshot {
 public:
  Snapshot(std::size_t n, EdgeList edges);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return *edges_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_->size(); }
  [[nodiscard]] bool connected() const noexcept { return connected_; }
  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;

  friend bool operator==(const Snapshot& a, const Snapshot& b) {
    return a.n_ == b.n_ && (a.edges_ == b.edges_ || *a.edges_ == *b.edges_);
  }

 private:
  std::size_t n_;
  std::shared_ptr<const EdgeList> edges_;
  bool connected_;
};

Snapshot complete_snapshot(std::size_t n);
Snapshot path_snapshot(std::size_t n);

bool is_connected(const Snapshot& s);

/// Every labeled connected graph on n nodes (1 <= n <= 5), each exactly once,
/// ordered by the bitmask of present edges over the lexicographic pair list
/// (0,1), (0,2), ..., (n-2,n-1).
std::vector<Snapshot> enumerate_connected_snapshots(std::size_t n);

}  // namespace dynbcast
