#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "ecne/centrality.hpp"
#include "ecne/graph.hpp"

namespace ecne {

/// Line graph of an input graph: one node per original edge, one edge per
/// pair of original edges sharing an endpoint. Line-edges remember the
/// shared node and carry a positive weight (1.0 until weight_edges runs).
class WeightedLineGraph {
 public:
  struct LineEdge {
    EdgeId a, b;         // line-node ids = original edge ids, a < b
    NodeId shared_node;  // the endpoint the two original edges have in common
    double weight;
  };

  WeightedLineGraph(EdgeId node_count, std::vector<LineEdge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    offsets_.assign(node_count_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.a + 1];
      ++offsets_[e.b + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i)
      offsets_[i] += offsets_[i - 1];
    targets_.resize(2 * edges_.size());
    edge_of_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      targets_[cursor[e.a]] = e.b;
      edge_of_[cursor[e.a]++] = i;
      targets_[cursor[e.b]] = e.a;
      edge_of_[cursor[e.b]++] = i;
    }
  }

  EdgeId node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<LineEdge>& edges() const { return edges_; }

  std::size_t degree(EdgeId line_node) const {
    return offsets_[line_node + 1] - offsets_[line_node];
  }

  // Neighbor line-nodes of `line_node` with the connecting line-edge weight.
  template <typename Fn>
  void for_neighbors(EdgeId line_node, Fn&& fn) const {
    for (std::size_t i = offsets_[line_node]; i < offsets_[line_node + 1]; ++i)
      fn(targets_[i], edges_[edge_of_[i]].weight);
  }

  void set_weight(std::size_t line_edge_index, double w) {
    edges_[line_edge_index].weight = w;
  }

 private:
  EdgeId node_count_;
  std::vector<LineEdge> edges_;
  std::vector<std::size_t> offsets_;  // CSR over line-nodes
  std::vector<EdgeId> targets_;
  std::vector<std::size_t> edge_of_;
};

/// Expected line-graph size without building it:
/// (|E|, (1/2) * sum_v deg(v)^2 - |E|).
inline std::pair<std::size_t, std::size_t> size_estimate(const Graph& g) {
  std::size_t sum_sq = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::size_t d = g.degree(v);
    sum_sq += d * d;
  }
  return {g.edge_count(), sum_sq / 2 - g.edge_count()};
}

/// Builds the line graph. Each original node of degree k contributes a
/// k(k-1)/2 clique over its incident edges; in a simple graph two edges
/// share at most one endpoint, so no pair is emitted twice.
inline WeightedLineGraph build_line_graph(const Graph& g) {
  std::vector<WeightedLineGraph::LineEdge> edges;
  edges.reserve(size_estimate(g).second);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        EdgeId a = nb[i].edge, b = nb[j].edge;
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, v, 1.0});
      }
  }
  std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return WeightedLineGraph(g.edge_count(), std::move(edges));
}

/// Sets every line-edge weight to 1/cb(i) + 1/cb(j) + 1/cb(k), where j is
/// the node the two original edges share and i, k the outer endpoints.
/// Requires a clamped centrality vector (all values positive).
inline void weight_edges(WeightedLineGraph& lg, const Graph& g,
                         const CentralityVector& cb) {
  for (double v : cb.values)
    if (!(v > 0.0))
      throw std::invalid_argument(
          "weight_edges: centrality must be clamped positive");

  for (std::size_t idx = 0; idx < lg.edge_count(); ++idx) {
    const auto& le = lg.edges()[idx];
    const auto& [a1, a2] = g.endpoints(le.a);
    const auto& [b1, b2] = g.endpoints(le.b);
    NodeId j = le.shared_node;
    NodeId i = (a1 == j) ? a2 : a1;
    NodeId k = (b1 == j) ? b2 : b1;
    lg.set_weight(idx,
                  1.0 / cb.values[i] + 1.0 / cb.values[j] + 1.0 / cb.values[k]);
  }
}

}  // namespace ecne
