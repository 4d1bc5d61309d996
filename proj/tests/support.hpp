// Shared fixtures and graph generators for the test suites.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ecne/graph.hpp"
#include "ecne/rng.hpp"

namespace ecne_test {

using ecne::EdgeId;
using ecne::Graph;
using ecne::NodeId;
using Pairs = std::vector<std::pair<NodeId, NodeId>>;

inline Graph make_path(NodeId n) {
  Pairs p;
  for (NodeId i = 0; i + 1 < n; ++i) p.push_back({i, i + 1});
  return Graph(n, p);
}

inline Graph make_cycle(NodeId n) {
  Pairs p;
  for (NodeId i = 0; i < n; ++i) p.push_back({i, (i + 1) % n});
  return Graph(n, p);
}

inline Graph make_complete(NodeId n) {
  Pairs p;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) p.push_back({i, j});
  return Graph(n, p);
}

// Star with `leaves` leaves; node 0 is the center.
inline Graph make_star(NodeId leaves) {
  Pairs p;
  for (NodeId i = 1; i <= leaves; ++i) p.push_back({0, i});
  return Graph(leaves + 1, p);
}

// Two K_k cliques joined by a single bridge edge.
inline Graph make_barbell(NodeId k) {
  Pairs p;
  for (NodeId i = 0; i < k; ++i)
    for (NodeId j = i + 1; j < k; ++j) {
      p.push_back({i, j});
      p.push_back({k + i, k + j});
    }
  p.push_back({k - 1, k});
  return Graph(2 * k, p);
}

// Uniform spanning-tree-ish connected graph: random tree plus `extra`
// distinct chords.
inline Graph random_connected(NodeId n, std::size_t extra, std::uint64_t seed) {
  auto rng = ecne::make_stream(seed, 0xc0);
  Pairs p;
  std::set<std::pair<NodeId, NodeId>> used;
  for (NodeId v = 1; v < n; ++v) {
    NodeId u = static_cast<NodeId>(ecne::next_index(rng, v));
    p.push_back({u, v});
    used.insert({std::min(u, v), std::max(u, v)});
  }
  std::size_t max_extra = static_cast<std::size_t>(n) * (n - 1) / 2 - used.size();
  extra = std::min(extra, max_extra);
  while (extra > 0) {
    NodeId a = static_cast<NodeId>(ecne::next_index(rng, n));
    NodeId b = static_cast<NodeId>(ecne::next_index(rng, n));
    if (a == b) continue;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (used.count(key)) continue;
    used.insert(key);
    p.push_back(key);
    --extra;
  }
  return Graph(n, p);
}

// Erdos-Renyi G(n, p); may be disconnected.
inline Graph gnp(NodeId n, double prob, std::uint64_t seed) {
  auto rng = ecne::make_stream(seed, 0xe2);
  Pairs p;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (ecne::next_double(rng) < prob) p.push_back({i, j});
  return Graph(n, p);
}

// Planted-partition graph: `blocks` blocks of `size` nodes, edge
// probabilities p_in within a block and p_out across.
inline Graph sbm(NodeId blocks, NodeId size, double p_in, double p_out,
                 std::uint64_t seed) {
  auto rng = ecne::make_stream(seed, 0x5b);
  NodeId n = blocks * size;
  Pairs p;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) {
      double prob = (i / size == j / size) ? p_in : p_out;
      if (ecne::next_double(rng) < prob) p.push_back({i, j});
    }
  return Graph(n, p);
}

// Hub-and-spoke benchmark graph: preferential attachment with `attach`
// links per new node, then triangle-closing edges until exactly
// `target_edges` edges exist. Mirrors the degree structure of small
// transport networks.
inline Graph hub_network(NodeId n, NodeId attach, std::size_t target_edges,
                         std::uint64_t seed) {
  auto rng = ecne::make_stream(seed, 0xba);
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<NodeId> slots;  // nodes repeated by degree
  auto add_edge = [&](NodeId a, NodeId b) {
    if (a == b) return false;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (!used.insert(key).second) return false;
    slots.push_back(a);
    slots.push_back(b);
    return true;
  };

  for (NodeId v = 1; v <= attach; ++v) add_edge(v - 1, v);
  for (NodeId v = attach + 1; v < n; ++v) {
    std::size_t added = 0;
    while (added < attach) {
      NodeId target = slots[ecne::next_index(rng, slots.size())];
      if (add_edge(v, target)) ++added;
    }
  }
  while (used.size() < target_edges) {
    // close a triangle around a random endpoint of a random edge
    NodeId w = slots[ecne::next_index(rng, slots.size())];
    NodeId a = slots[ecne::next_index(rng, slots.size())];
    add_edge(w, a);
  }
  Pairs p(used.begin(), used.end());
  return Graph(n, p);
}

inline std::string data_file(const std::string& name) {
  return std::string(ECNE_TEST_DATA_DIR) + "/" + name;
}

inline Graph load_karate() { return ecne::load_edge_list(data_file("karate.edges")); }

}  // namespace ecne_test
