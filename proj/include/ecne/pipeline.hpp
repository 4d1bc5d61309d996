#pragma once

#include <cstddef>

#include "ecne/centrality.hpp"
#include "ecne/embedding.hpp"
#include "ecne/graph.hpp"
#include "ecne/linegraph.hpp"
#include "ecne/skipgram.hpp"
#include "ecne/walks.hpp"

namespace ecne {

struct PipelineOptions {
  DimensionMode mode = DimensionMode::kFixed;
  std::size_t d_fixed = 128;
  double clamp_epsilon = 1e-6;
  WalkConfig walk;
  CfbOptions centrality;
};

struct PipelineResult {
  EmbeddingMatrix embeddings;  // one row per original edge id
  CentralityVector centrality; // clamped; raw values kept inside
  std::size_t line_nodes = 0;
  std::size_t line_edges = 0;
  std::size_t dim = 0;
  SkipgramStats stats;
};

/// Full edge-embedding pipeline: current-flow betweenness -> clamp ->
/// line graph -> centrality weights -> walks -> skip-gram.
inline PipelineResult ecne_pipeline(const Graph& g, PipelineOptions opt = {}) {
  PipelineResult out;
  opt.centrality.threads = opt.walk.threads;
  out.centrality = clamp(current_flow_betweenness(g, opt.centrality),
                         opt.clamp_epsilon);
  WeightedLineGraph lg = build_line_graph(g);
  weight_edges(lg, g, out.centrality);
  out.line_nodes = lg.node_count();
  out.line_edges = lg.edge_count();
  out.dim = choose_dimension(g, opt.mode, opt.d_fixed);
  auto walks = generate_walks(lg, opt.walk);
  out.embeddings =
      train_skipgram(walks, out.dim, opt.walk, lg.node_count(), &out.stats);
  return out;
}

}  // namespace ecne
