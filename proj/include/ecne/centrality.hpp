#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecne/graph.hpp"
#include "ecne/parallel.hpp"

namespace ecne {

/// Per-node current-flow betweenness. `values` may be clamped away from
/// zero (see clamp()); `raw` keeps the pre-clamp values for reporting.
struct CentralityVector {
  std::vector<double> values;
  std::vector<double> raw;
  double epsilon = 0.0;

  bool clamped() const { return epsilon > 0.0; }
};

struct CfbOptions {
  std::size_t dense_threshold = 2000;  // component size; above it use CG
  double cg_tolerance = 1e-10;
  std::size_t cg_max_iterations = 100000;
  std::size_t ground_offset = 0;  // which component node to ground
  int threads = 1;
};

namespace detail {

// Solves L_r x = b on a component Laplacian with one grounded node held at
// zero, by conjugate gradients with Jacobi preconditioning. `adj` is the
// component-local adjacency, `ground` the grounded local index. Vectors are
// component-sized; the ground coordinate is pinned to zero throughout.
inline void grounded_cg_solve(const std::vector<std::vector<std::size_t>>& adj,
                              std::size_t ground, const std::vector<double>& b,
                              std::vector<double>& x, double tol,
                              std::size_t max_iter) {
  const std::size_t k = adj.size();
  std::vector<double> r(b), z(k, 0.0), p(k, 0.0), ap(k, 0.0);
  x.assign(k, 0.0);
  r[ground] = 0.0;

  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (std::size_t i = 0; i < k; ++i) {
      if (i == ground) {
        out[i] = 0.0;
        continue;
      }
      double acc = static_cast<double>(adj[i].size()) * v[i];
      for (std::size_t j : adj[i]) acc -= v[j];
      out[i] = acc;
    }
  };

  auto precond = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (std::size_t i = 0; i < k; ++i)
      out[i] = (i == ground || adj[i].empty())
                   ? 0.0
                   : v[i] / static_cast<double>(adj[i].size());
  };

  precond(r, z);
  p = z;
  double rz = 0.0;
  for (std::size_t i = 0; i < k; ++i) rz += r[i] * z[i];

  double rnorm = 0.0;
  for (std::size_t i = 0; i < k; ++i) rnorm += r[i] * r[i];
  rnorm = std::sqrt(rnorm);
  if (rnorm <= tol) return;

  for (std::size_t it = 0; it < max_iter; ++it) {
    apply(p, ap);
    double pap = 0.0;
    for (std::size_t i = 0; i < k; ++i) pap += p[i] * ap[i];
    double alpha = rz / pap;
    rnorm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      rnorm += r[i] * r[i];
    }
    rnorm = std::sqrt(rnorm);
    if (rnorm <= tol) return;
    precond(r, z);
    double rz_next = 0.0;
    for (std::size_t i = 0; i < k; ++i) rz_next += r[i] * z[i];
    double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < k; ++i) p[i] = z[i] + beta * p[i];
  }
  throw std::runtime_error(
      "current_flow_betweenness: CG did not converge, residual " +
      std::to_string(rnorm));
}

}  // namespace detail

/// Total electrical throughput of each node over all source-sink pairs of
/// its connected component (unit current per pair, endpoints excluded,
/// unnormalized). Pairs spanning components contribute nothing; singleton
/// components get zero.
inline CentralityVector current_flow_betweenness(const Graph& g,
                                                 const CfbOptions& opt = {}) {
  if (g.node_count() == 0)
    throw std::invalid_argument("current_flow_betweenness: empty graph");

  CentralityVector out;
  out.values.assign(g.node_count(), 0.0);

  const ComponentPartition comps = connected_components(g);
  std::vector<std::vector<NodeId>> members(comps.count);
  for (NodeId v = 0; v < g.node_count(); ++v)
    members[comps.label[v]].push_back(v);

  for (const auto& comp : members) {
    const std::size_t k = comp.size();
    if (k < 3) continue;  // every pair consists of endpoints only

    std::vector<std::size_t> local(g.node_count(), 0);
    for (std::size_t i = 0; i < k; ++i) local[comp[i]] = i;
    const std::size_t ground = opt.ground_offset % k;

    // Component-local adjacency and edge list.
    std::vector<std::vector<std::size_t>> adj(k);
    std::vector<std::pair<std::size_t, std::size_t>> comp_edges;
    std::vector<EdgeId> comp_edge_ids;
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& nb : g.neighbors(comp[i])) {
        adj[i].push_back(local[nb.node]);
        if (comp[i] < nb.node) {
          comp_edges.emplace_back(i, local[nb.node]);
          comp_edge_ids.push_back(nb.edge);
        }
      }

    // R = grounded inverse of the component Laplacian (k x k, zero row and
    // column at the ground). R[a][s] - R[b][s] is the potential drop across
    // edge (a,b) when one unit of current enters at s and leaves at ground.
    std::vector<double> R(k * k, 0.0);
    if (k <= opt.dense_threshold) {
      Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k - 1, k - 1);
      auto red = [&](std::size_t i) { return i < ground ? i : i - 1; };
      for (std::size_t i = 0; i < k; ++i) {
        if (i == ground) continue;
        lap(red(i), red(i)) = static_cast<double>(adj[i].size());
        for (std::size_t j : adj[i])
          if (j != ground) lap(red(i), red(j)) -= 1.0;
      }
      Eigen::MatrixXd inv =
          lap.ldlt().solve(Eigen::MatrixXd::Identity(k - 1, k - 1));
      for (std::size_t i = 0; i < k; ++i) {
        if (i == ground) continue;
        for (std::size_t j = 0; j < k; ++j)
          if (j != ground) R[i * k + j] = inv(red(i), red(j));
      }
    } else {
      parallel_for(0, k, opt.threads, [&](std::size_t c) {
        if (c == ground) return;
        std::vector<double> b(k, 0.0), x;
        b[c] = 1.0;
        detail::grounded_cg_solve(adj, ground, b, x, opt.cg_tolerance,
                                  opt.cg_max_iterations);
        for (std::size_t i = 0; i < k; ++i) R[i * k + c] = x[i];
      });
    }

    // Per-edge pair sums. For edge e with drop vector M over sources,
    // sum_{s<t} |M[s]-M[t]| comes from one sort; the pairs touching an
    // endpoint x are removed via sum_t |M[x]-M[t]| from prefix sums.
    struct EdgeShare {
      double half_total, corr_a, corr_b;
    };
    std::vector<EdgeShare> shares(comp_edges.size());
    parallel_for(0, comp_edges.size(), opt.threads, [&](std::size_t ei) {
      auto [la, lb] = comp_edges[ei];
      std::vector<double> m(k);
      for (std::size_t s = 0; s < k; ++s) m[s] = R[la * k + s] - R[lb * k + s];
      std::vector<double> sorted(m);
      std::sort(sorted.begin(), sorted.end());
      std::vector<double> prefix(k + 1, 0.0);
      for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + sorted[i];
      double total = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        total += (2.0 * static_cast<double>(i) - static_cast<double>(k - 1)) *
                 sorted[i];
      auto abs_sum_to = [&](double val) {
        std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), val) -
            sorted.begin());
        double below = val * static_cast<double>(idx) - prefix[idx];
        double above = (prefix[k] - prefix[idx]) -
                       val * static_cast<double>(k - idx);
        return below + above;
      };
      shares[ei] = {0.5 * total, abs_sum_to(m[la]), abs_sum_to(m[lb])};
    });

    // Deterministic accumulation in canonical edge order.
    for (std::size_t ei = 0; ei < comp_edges.size(); ++ei) {
      auto [la, lb] = comp_edges[ei];
      const auto& sh = shares[ei];
      out.values[comp[la]] += sh.half_total - 0.5 * sh.corr_a;
      out.values[comp[lb]] += sh.half_total - 0.5 * sh.corr_b;
    }
  }
  return out;
}

/// Floors every value at epsilon so downstream 1/cb terms stay finite.
inline CentralityVector clamp(const CentralityVector& cv, double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("clamp: epsilon must be positive");
  CentralityVector out;
  out.raw = cv.raw.empty() ? cv.values : cv.raw;
  out.epsilon = epsilon;
  out.values.resize(cv.values.size());
  for (std::size_t i = 0; i < cv.values.size(); ++i)
    out.values[i] = std::max(cv.values[i], epsilon);
  return out;
}

}  // namespace ecne
