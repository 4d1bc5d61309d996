// Brute-force reference implementations, independent of the library's
// algorithmic paths. Only suitable for small inputs.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ecne/graph.hpp"

namespace ecne_test {

// Plain Gauss-Jordan solve; no pivot cleverness needed for the tiny SPD
// systems the oracle builds.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    if (std::abs(a[col][col]) < 1e-12)
      throw std::runtime_error("oracle: singular system");
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Current-flow betweenness by definition: for every source-sink pair solve
// the grounded Laplacian, take unit-resistance edge currents, and credit
// each non-endpoint node half the absolute current through it.
inline std::vector<double> oracle_current_flow(const ecne::Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> cb(n, 0.0);
  auto comps = ecne::connected_components(g);

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (comps.label[s] != comps.label[t]) continue;
      // potentials with node t grounded (removed from the system)
      std::vector<std::size_t> idx(n, SIZE_MAX);
      std::vector<std::size_t> rev;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == t || comps.label[v] != comps.label[s]) continue;
        idx[v] = rev.size();
        rev.push_back(v);
      }
      std::vector<std::vector<double>> lap(rev.size(),
                                           std::vector<double>(rev.size(), 0.0));
      for (std::size_t r = 0; r < rev.size(); ++r) {
        auto v = static_cast<ecne::NodeId>(rev[r]);
        lap[r][r] = static_cast<double>(g.degree(v));
        for (const auto& nb : g.neighbors(v))
          if (idx[nb.node] != SIZE_MAX) lap[r][idx[nb.node]] -= 1.0;
      }
      std::vector<double> rhs(rev.size(), 0.0);
      rhs[idx[s]] = 1.0;
      auto sol = gauss_solve(lap, rhs);
      std::vector<double> pot(n, 0.0);
      for (std::size_t r = 0; r < rev.size(); ++r) pot[rev[r]] = sol[r];

      for (std::size_t x = 0; x < n; ++x) {
        if (x == s || x == t || comps.label[x] != comps.label[s]) continue;
        double through = 0.0;
        for (const auto& nb : g.neighbors(static_cast<ecne::NodeId>(x)))
          through += std::abs(pot[x] - pot[nb.node]);
        cb[x] += 0.5 * through;
      }
    }
  }
  return cb;
}

// Exhaustive simple-path enumeration of exact length l between u and v,
// never using the direct (u,v) edge. Returns the node sequences.
inline void enumerate_paths(const ecne::Graph& g, ecne::NodeId u,
                            ecne::NodeId v, std::size_t l,
                            std::vector<std::vector<ecne::NodeId>>& out) {
  std::vector<ecne::NodeId> cur{u};
  std::vector<char> visited(g.node_count(), 0);
  visited[u] = 1;
  auto rec = [&](auto&& self, ecne::NodeId at, std::size_t remaining) -> void {
    for (const auto& nb : g.neighbors(at)) {
      if ((at == u && nb.node == v) || (at == v && nb.node == u)) continue;
      if (remaining == 1) {
        if (nb.node == v) {
          cur.push_back(v);
          out.push_back(cur);
          cur.pop_back();
        }
        continue;
      }
      if (visited[nb.node] || nb.node == v) continue;
      visited[nb.node] = 1;
      cur.push_back(nb.node);
      self(self, nb.node, remaining - 1);
      cur.pop_back();
      visited[nb.node] = 0;
    }
  };
  rec(rec, u, l);
}

inline std::size_t count_paths(const ecne::Graph& g, ecne::NodeId u,
                               ecne::NodeId v, std::size_t l) {
  std::vector<std::vector<ecne::NodeId>> all;
  enumerate_paths(g, u, v, l, all);
  return all.size();
}

// Disjoint-set forest for cross-checking component labels.
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace ecne_test
