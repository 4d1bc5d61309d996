#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "ecne/graph.hpp"

namespace ecne {

/// Node partition with its modularity score.
struct CommunityPartition {
  std::vector<NodeId> label;  // per node, dense 0..count-1
  NodeId count = 0;
  double modularity = 0.0;
};

/// Modularity of an arbitrary labeling: sum over communities of
/// (intra-edge fraction) - (degree fraction / 2)^2.
inline double modularity_of(const Graph& g, const std::vector<NodeId>& label) {
  const double m = static_cast<double>(g.edge_count());
  if (m == 0.0) return 0.0;
  std::map<NodeId, double> intra, deg;
  for (const auto& [u, v] : g.edges()) {
    deg[label[u]] += 1.0;
    deg[label[v]] += 1.0;
    if (label[u] == label[v]) intra[label[u]] += 1.0;
  }
  double q = 0.0;
  for (const auto& [c, d] : deg) {
    double lc = intra.count(c) ? intra[c] : 0.0;
    q += lc / m - (d / (2.0 * m)) * (d / (2.0 * m));
  }
  return q;
}

/// Greedy modularity agglomeration: start from singletons, repeatedly merge
/// the community pair with the largest positive modularity gain
/// (ties broken by the smallest id pair), stop when no merge helps.
inline CommunityPartition detect_communities(const Graph& g) {
  if (g.node_count() == 0)
    throw std::invalid_argument("detect_communities: empty graph");
  const std::size_t n = g.node_count();
  const double m = static_cast<double>(g.edge_count());

  std::vector<NodeId> comm(n);
  for (NodeId v = 0; v < n; ++v) comm[v] = v;

  if (m > 0.0) {
    // between[c] maps neighbor community -> #edges; deg[c] = total degree.
    std::vector<std::map<NodeId, double>> between(n);
    std::vector<double> deg(n, 0.0);
    std::vector<char> alive(n, 1);
    for (const auto& [u, v] : g.edges()) {
      between[u][v] += 1.0;
      between[v][u] += 1.0;
      deg[u] += 1.0;
      deg[v] += 1.0;
    }

    while (true) {
      double best_gain = 0.0;
      NodeId best_a = 0, best_b = 0;
      bool found = false;
      // Scanning in ascending (a, b) order makes the first maximal pair the
      // smallest-id pair, which is the tie-break.
      for (NodeId a = 0; a < n; ++a) {
        if (!alive[a]) continue;
        for (const auto& [b, e_ab] : between[a]) {
          if (b <= a) continue;
          double gain = e_ab / m - 2.0 * (deg[a] / (2.0 * m)) *
                                       (deg[b] / (2.0 * m));
          if (gain > best_gain + 1e-15) {
            best_gain = gain;
            best_a = a;
            best_b = b;
            found = true;
          }
        }
      }
      if (!found || best_gain <= 0.0) break;

      // Merge b into a.
      for (NodeId v = 0; v < n; ++v)
        if (comm[v] == best_b) comm[v] = best_a;
      deg[best_a] += deg[best_b];
      between[best_a].erase(best_b);
      between[best_b].erase(best_a);
      for (const auto& [c, e_bc] : between[best_b]) {
        between[best_a][c] += e_bc;
        between[c].erase(best_b);
        between[c][best_a] = between[best_a][c];
      }
      between[best_b].clear();
      alive[best_b] = 0;
    }
  }

  // Renumber communities densely by smallest member node.
  CommunityPartition out;
  out.label.assign(n, 0);
  std::map<NodeId, NodeId> renum;
  for (NodeId v = 0; v < n; ++v) {
    auto [it, fresh] = renum.try_emplace(comm[v], out.count);
    if (fresh) ++out.count;
    out.label[v] = it->second;
  }
  out.modularity = modularity_of(g, out.label);
  return out;
}

/// Edge labeling induced by a node partition: an edge gets its community id
/// when both endpoints agree, otherwise it is excluded.
struct EdgeLabeling {
  std::vector<long long> label;  // per edge id; -1 = inter-community
  std::size_t labeled = 0, excluded = 0;
};

inline EdgeLabeling label_edges(const Graph& g,
                                const CommunityPartition& part) {
  EdgeLabeling out;
  out.label.assign(g.edge_count(), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.endpoints(e);
    if (part.label[u] == part.label[v]) {
      out.label[e] = part.label[u];
      ++out.labeled;
    } else {
      ++out.excluded;
    }
  }
  return out;
}

}  // namespace ecne
