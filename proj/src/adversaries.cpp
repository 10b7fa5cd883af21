#include "dynbcast/adversaries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dynbcast/rng.hpp"

namespace dynbcast {

namespace {

class StaticAdversary final : public Adversary {
 public:
  StaticAdversary(Snapshot snapshot, std::string name)
      : snapshot_(std::move(snapshot)), name_(std::move(name)) {}

  Snapshot next(const AdversaryView&) const override { return snapshot_; }
  std::size_t n() const noexcept override { return snapshot_.n(); }
  std::string name() const override { return name_; }

 private:
  Snapshot snapshot_;
  std::string name_;
};

class RandomConnectedAdversary final : public Adversary {
 public:
  RandomConnectedAdversary(std::size_t n, std::uint64_t seed, double p)
      : n_(n), seed_(seed), p_(p), all_pairs_(n > 1 && p >= 1.0 ? complete_snapshot(n) : Snapshot(n, {})) {}

  Snapshot next(const AdversaryView& view) const override {
    if (n_ > 1 && p_ >= 1.0) return all_pairs_;
    SplitMix64 rng = keyed_stream(seed_, 0x72616e646f6dULL, view.t, n_);
    EdgeList edges;
    if (n_ == 2) {
      edges.push_back({0, 1});
    } else if (n_ >= 3) {
      std::vector<NodeId> code(n_ - 2);
      for (auto& x : code) x = static_cast<NodeId>(rng.below(n_));
      edges = prufer_decode(n_, code);
    }
    if (p_ > 0.0 && n_ >= 3) {
      Snapshot tree(n_, edges);
      for (NodeId u = 0; u < n_; ++u) {
        for (NodeId v = u + 1; v < n_; ++v) {
          if (tree.has_edge(u, v)) continue;
          if (rng.bernoulli(p_)) edges.push_back({u, v});
        }
      }
    }
    return Snapshot(n_, std::move(edges));
  }
  std::size_t n() const noexcept override { return n_; }
  std::string name() const override {
    std::ostringstream os;
    os << "random:" << seed_ << ":" << p_;
    return os.str();
  }

 private:
  std::size_t n_;
  std::uint64_t seed_;
  double p_;
  Snapshot all_pairs_;
};

class SpoolingAdversary final : public Adversary {
 public:
  explicit SpoolingAdversary(std::size_t n) : n_(n), all_pairs_(complete_snapshot(n)) {}

  Snapshot next(const AdversaryView& view) const override {
    std::vector<NodeId> informed;
    std::vector<NodeId> uninformed;
    for (NodeId v = 0; v < view.n(); ++v) {
      (view.informed[v] ? informed : uninformed).push_back(v);
    }
    if (uninformed.empty()) return all_pairs_;

    NodeId anchor = informed.front();
    for (NodeId v : informed) {
      if (view.sending[v]) {
        anchor = v;
        break;
      }
    }
    const NodeId head = uninformed.front();

    // emitted in sorted order so the snapshot skips its sort
    EdgeList edges;
    edges.reserve(informed.size() * (informed.size() - 1) / 2 + uninformed.size());
    std::vector<NodeId> up;
    std::size_t next_uninformed = 0;
    for (NodeId u = 0; u < n_; ++u) {
      up.clear();
      if (view.informed[u]) {
        for (auto it = std::upper_bound(informed.begin(), informed.end(), u); it != informed.end(); ++it) {
          up.push_back(*it);
        }
        if (u == anchor && head > u) up.insert(std::lower_bound(up.begin(), up.end(), head), head);
      } else {
        ++next_uninformed;
        if (next_uninformed < uninformed.size()) up.push_back(uninformed[next_uninformed]);
        if (u == head && anchor > u) up.insert(std::lower_bound(up.begin(), up.end(), anchor), anchor);
      }
      for (NodeId v : up) edges.push_back({u, v});
    }
    return Snapshot(n_, std::move(edges));
  }
  std::size_t n() const noexcept override { return n_; }
  std::string name() const override { return "spooling"; }

 private:
  std::size_t n_;
  Snapshot all_pairs_;
};

class PathSequesterAdversary final : public Adversary {
 public:
  PathSequesterAdversary(std::size_t m, EdgeList core, std::size_t path_len, std::string name)
      : m_(m), path_len_(path_len), name_(std::move(name)) {
    if (path_len < 1) throw std::invalid_argument("sequester path length must be >= 1");
    if (m < 1) throw std::invalid_argument("sequester core needs at least one node");
    if (!is_connected(Snapshot(m, core))) {
      throw std::invalid_argument("sequester core graph is disconnected");
    }
    base_ = std::move(core);
    for (std::size_t i = 0; i + 1 < path_len; ++i) base_.push_back({m + i, m + i + 1});
  }

  Snapshot next(const AdversaryView& view) const override {
    EdgeList edges = base_;
    const std::size_t hop = view.t < path_len_ - 1 ? view.t : path_len_ - 1;
    edges.push_back({0, m_ + hop});
    return Snapshot(n(), std::move(edges));
  }
  std::size_t n() const noexcept override { return m_ + path_len_; }
  std::string name() const override { return name_; }

 private:
  std::size_t m_;
  std::size_t path_len_;
  EdgeList base_;
  std::string name_;
};

}  // namespace

EdgeList prufer_decode(std::size_t n, const std::vector<NodeId>& sequence) {
  if (n < 2 || sequence.size() != n - 2) {
    throw std::invalid_argument("Prufer sequence must have length n - 2");
  }
  std::vector<std::size_t> degree(n, 1);
  for (NodeId x : sequence) {
    if (x >= n) throw std::invalid_argument("Prufer entry out of range");
    ++degree[x];
  }
  EdgeList edges;
  edges.reserve(n - 1);
  NodeId ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  NodeId leaf = ptr;
  for (NodeId x : sequence) {
    edges.push_back({leaf, x});
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, n - 1});
  return edges;
}

AdversaryPtr static_adversary(std::size_t n, EdgeList edges) {
  Snapshot snapshot(n, std::move(edges));
  if (!snapshot.connected()) throw std::invalid_argument("static graph is disconnected");
  return std::make_unique<StaticAdversary>(std::move(snapshot), "static");
}

AdversaryPtr complete_adversary(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete adversary needs n >= 1");
  return std::make_unique<StaticAdversary>(complete_snapshot(n), "complete");
}

AdversaryPtr random_connected_adversary(std::size_t n, std::uint64_t seed, double extra_edge_prob) {
  if (n < 1) throw std::invalid_argument("random adversary needs n >= 1");
  if (!(extra_edge_prob >= 0.0 && extra_edge_prob <= 1.0)) {
    throw std::invalid_argument("extra edge probability must lie in [0, 1]");
  }
  return std::make_unique<RandomConnectedAdversary>(n, seed, extra_edge_prob);
}

AdversaryPtr spooling_adversary(std::size_t n) {
  if (n < 1) throw std::invalid_argument("spooling adversary needs n >= 1");
  return std::make_unique<SpoolingAdversary>(n);
}

AdversaryPtr path_sequester_adversary(std::size_t m, EdgeList core, std::size_t path_len) {
  std::string name = "sequester:" + std::to_string(m) + ":" + std::to_string(path_len);
  return std::make_unique<PathSequesterAdversary>(m, std::move(core), path_len, std::move(name));
}

AdversaryPtr path_sequester_adversary(std::size_t m, std::size_t path_len) {
  const Snapshot core = complete_snapshot(m);
  return path_sequester_adversary(m, EdgeList(core.edges().begin(), core.edges().end()),
                                  path_len);
}

}  // namespace dynbcast
