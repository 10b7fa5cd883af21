#include "dynbcast/snapshot.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dynbcast {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool is_connected(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) return false;
  DisjointSets sets(n);
  std::size_t components = n;
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) continue;
    if (sets.unite(e.u, e.v) && --components == 1) return true;
  }
  return components == 1;
}

Snapshot::Snapshot(std::size_t n, EdgeList edges) : n_(n), connected_(false) {
  for (Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range for n=" + std::to_string(n));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  if (!std::is_sorted(edges.begin(), edges.end())) std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  connected_ = dynbcast::is_connected(n, edges);
  edges_ = std::make_shared<const EdgeList>(std::move(edges));
}

bool Snapshot::has_edge(NodeId a, NodeId b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_->begin(), edges_->end(), Edge{a, b});
}

bool is_connected(const Snapshot& s) { return s.connected(); }

Snapshot complete_snapshot(std::size_t n) {
  EdgeList edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Snapshot(n, std::move(edges));
}

Snapshot path_snapshot(std::size_t n) {
  EdgeList edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Snapshot(n, std::move(edges));
}

std::vector<Snapshot> enumerate_connected_snapshots(std::size_t n) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("connected snapshot enumeration supports 1 <= n <= 5");
  }
  EdgeList pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  std::vector<Snapshot> out;
  const std::size_t subsets = std::size_t{1} << pairs.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    EdgeList edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask & (std::size_t{1} << i)) edges.push_back(pairs[i]);
    }
    if (is_connected(n, edges)) out.emplace_back(n, std::move(edges));
  }
  return out;
}

}  // namespace dynbcast
