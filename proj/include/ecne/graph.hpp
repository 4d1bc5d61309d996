#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ecne {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected simple graph over dense node ids.
///
/// Nodes are remapped from raw text labels to contiguous ids at load time;
/// the label table is kept so outputs can be joined back to the input.
/// Edges are stored canonically (min endpoint first), deduplicated, without
/// self-loops, and get dense ids in lexicographic endpoint order.
class Graph {
 public:
  struct Neighbor {
    NodeId node;
    EdgeId edge;
    bool operator<(const Neighbor& o) const { return node < o.node; }
  };

  Graph() = default;

  // Builds from canonical deduplicated edges; endpoints may be in any order.
  Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edge_pairs,
        std::vector<std::string> labels = {})
      : labels_(std::move(labels)) {
    node_count_ = node_count;
    for (auto& [a, b] : edge_pairs) {
      if (a == b) throw std::invalid_argument("graph: self-loop in edge list");
      if (a > b) std::swap(a, b);
      if (b >= node_count_)
        throw std::invalid_argument("graph: endpoint out of range");
    }
    std::sort(edge_pairs.begin(), edge_pairs.end());
    auto last = std::unique(edge_pairs.begin(), edge_pairs.end());
    edge_pairs.erase(last, edge_pairs.end());
    edges_ = std::move(edge_pairs);
    build_adjacency();
  }

  NodeId node_count() const { return node_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }

  const std::pair<NodeId, NodeId>& endpoints(EdgeId e) const {
    return edges_.at(e);
  }
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

  std::size_t degree(NodeId v) const {
    check_node(v);
    return adj_[v].size();
  }

  const std::vector<Neighbor>& neighbors(NodeId v) const {
    check_node(v);
    return adj_[v];
  }

  // O(log deg) membership test; returns the edge id or -1.
  long long find_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto& nb = adj_[u];
    auto it = std::lower_bound(nb.begin(), nb.end(), Neighbor{v, 0});
    if (it != nb.end() && it->node == v) return it->edge;
    return -1;
  }
  bool has_edge(NodeId u, NodeId v) const { return find_edge(u, v) >= 0; }

  // Raw label of a node ("<id>" when the graph was built without labels).
  std::string label(NodeId v) const {
    check_node(v);
    if (v < labels_.size()) return labels_[v];
    return std::to_string(v);
  }
  const std::vector<std::string>& labels() const { return labels_; }

  // Canonical line-node name for an edge: "<label(u)>_<label(v)>".
  std::string edge_name(EdgeId e) const {
    const auto& [u, v] = endpoints(e);
    return label(u) + "_" + label(v);
  }

  std::size_t dropped_self_loops() const { return dropped_self_loops_; }
  std::size_t collapsed_duplicates() const { return collapsed_duplicates_; }

  friend Graph load_edge_list(const std::string& path);
  friend Graph parse_edge_list(std::istream& in, const std::string& origin);

 private:
  void check_node(NodeId v) const {
    if (v >= node_count_) throw std::out_of_range("graph: node id out of range");
  }

  void build_adjacency() {
    adj_.assign(node_count_, {});
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      auto [u, v] = edges_[e];
      adj_[u].push_back({v, e});
      adj_[v].push_back({u, e});
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  NodeId node_count_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<std::string> labels_;
  std::size_t dropped_self_loops_ = 0;
  std::size_t collapsed_duplicates_ = 0;
};

/// Parses an edge list: one edge per line, two whitespace-separated labels,
/// '#' starts a comment, blank lines ignored. Labels may be arbitrary
/// strings and are remapped to dense ids in order of first appearance.
inline Graph parse_edge_list(std::istream& in, const std::string& origin) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::size_t self_loops = 0;

  auto intern = [&](const std::string& s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<NodeId>(labels.size()));
    if (fresh) labels.push_back(s);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank
    if (!(ls >> b) || (ls >> extra))
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected two node labels");
    NodeId u = intern(a), v = intern(b);
    if (u == v) {
      ++self_loops;
      continue;
    }
    pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (labels.empty()) throw std::runtime_error(origin + ": empty graph");

  std::sort(pairs.begin(), pairs.end());
  std::size_t before = pairs.size();
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  Graph g(static_cast<NodeId>(labels.size()), std::move(pairs),
          std::move(labels));
  g.dropped_self_loops_ = self_loops;
  g.collapsed_duplicates_ = before - g.edge_count();
  return g;
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return parse_edge_list(in, path);
}

inline void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.endpoints(e);
    out << g.label(u) << ' ' << g.label(v) << '\n';
  }
}

// Remap table: "raw_label\tnode_id", one row per node.
inline void save_remap_table(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write remap table: " + path);
  for (NodeId v = 0; v < g.node_count(); ++v)
    out << g.label(v) << '\t' << v << '\n';
}

/// Component label per node; two nodes share a label iff connected.
/// Labels are dense, assigned in order of the smallest node in the component.
struct ComponentPartition {
  std::vector<NodeId> label;
  NodeId count = 0;
};

inline ComponentPartition connected_components(const Graph& g) {
  constexpr NodeId kUnset = static_cast<NodeId>(-1);
  ComponentPartition out;
  out.label.assign(g.node_count(), kUnset);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (out.label[s] != kUnset) continue;
    NodeId c = out.count++;
    out.label[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(v)) {
        if (out.label[nb.node] == kUnset) {
          out.label[nb.node] = c;
          stack.push_back(nb.node);
        }
      }
    }
  }
  return out;
}

}  // namespace ecne
