#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ecne/graph.hpp"

namespace ecne {

/// Dense |items| x dim embedding matrix, row i = vector of item id i.
struct EmbeddingMatrix {
  std::size_t dim = 0;
  std::vector<double> data;  // row-major

  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t rows, std::size_t d)
      : dim(d), data(rows * d, 0.0) {}

  std::size_t rows() const { return dim ? data.size() / dim : 0; }

  double* row(std::size_t i) { return data.data() + i * dim; }
  const double* row(std::size_t i) const { return data.data() + i * dim; }
};

enum class DimensionMode { kFixed, kMatched };

/// Embedding width for a graph. Fixed mode returns d_fixed. Matched mode
/// sizes the edge-embedding parameter budget |E|*d to the node-embedding
/// budget |V|*d_fixed: the smallest multiple of 8 covering
/// ceil(|V|*d_fixed/|E|), capped at d_fixed.
inline std::size_t choose_dimension(std::size_t node_count,
                                    std::size_t edge_count, DimensionMode mode,
                                    std::size_t d_fixed = 128) {
  if (edge_count == 0)
    throw std::invalid_argument("choose_dimension: graph has no edges");
  if (mode == DimensionMode::kFixed) return d_fixed;
  std::size_t needed = (node_count * d_fixed + edge_count - 1) / edge_count;
  std::size_t d = ((needed + 7) / 8) * 8;
  if (d < 8) d = 8;
  return std::min(d, d_fixed);
}

inline std::size_t choose_dimension(const Graph& g, DimensionMode mode,
                                    std::size_t d_fixed = 128) {
  return choose_dimension(g.node_count(), g.edge_count(), mode, d_fixed);
}

}  // namespace ecne
