#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ecne/graph.hpp"
#include "ecne/rng.hpp"

namespace ecne {

/// Simple path of exact length l between a candidate pair: l edge ids and
/// the l+1 visited nodes, first u, last v, no node repeated.
struct PathSample {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
};

/// All simple u-v paths of exact length l, depth-first with a
/// distance-to-target bound. The direct edge (u,v) never participates, so a
/// candidate pair cannot leak its own link. When more than max_paths paths
/// exist, a seeded uniform reservoir sample of max_paths is kept. The result
/// is sorted by node sequence.
inline std::vector<PathSample> find_paths(const Graph& g, NodeId u, NodeId v,
                                          std::size_t l,
                                          std::size_t max_paths,
                                          std::uint64_t seed) {
  if (l < 1) throw std::invalid_argument("find_paths: length must be >= 1");
  if (u == v) throw std::invalid_argument("find_paths: endpoints must differ");

  // Distance from v ignoring the direct edge; unreachable stays large.
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.node_count(), kInf);
  {
    std::queue<NodeId> q;
    dist[v] = 0;
    q.push(v);
    while (!q.empty()) {
      NodeId x = q.front();
      q.pop();
      for (const auto& nb : g.neighbors(x)) {
        if ((x == u && nb.node == v) || (x == v && nb.node == u)) continue;
        if (dist[nb.node] == kInf) {
          dist[nb.node] = dist[x] + 1;
          q.push(nb.node);
        }
      }
    }
  }

  auto rng = make_stream(seed, 0x70617468, u, (static_cast<std::uint64_t>(v) << 8) ^ l);
  std::vector<PathSample> reservoir;
  std::size_t seen = 0;

  std::vector<NodeId> nodes{u};
  std::vector<EdgeId> edges;
  std::vector<char> visited(g.node_count(), 0);
  visited[u] = 1;

  auto emit = [&]() {
    ++seen;
    if (reservoir.size() < max_paths) {
      reservoir.push_back({nodes, edges});
    } else {
      std::size_t j = next_index(rng, seen);
      if (j < max_paths) reservoir[j] = {nodes, edges};
    }
  };

  auto dfs = [&](auto&& self, NodeId cur, std::size_t remaining) -> void {
    for (const auto& nb : g.neighbors(cur)) {
      NodeId next = nb.node;
      // never traverse the candidate edge itself
      if ((cur == u && next == v) || (cur == v && next == u)) continue;
      if (remaining == 1) {
        if (next != v) continue;
        nodes.push_back(next);
        edges.push_back(nb.edge);
        emit();
        nodes.pop_back();
        edges.pop_back();
        continue;
      }
      if (visited[next] || next == v) continue;
      if (dist[next] == kInf || dist[next] > remaining - 1) continue;
      visited[next] = 1;
      nodes.push_back(next);
      edges.push_back(nb.edge);
      self(self, next, remaining - 1);
      nodes.pop_back();
      edges.pop_back();
      visited[next] = 0;
    }
  };
  dfs(dfs, u, l);

  std::sort(reservoir.begin(), reservoir.end(),
            [](const PathSample& a, const PathSample& b) {
              return a.nodes < b.nodes;
            });
  return reservoir;
}

}  // namespace ecne
