#include "ecne/embedding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "ecne/pipeline.hpp"
#include "ecne/skipgram.hpp"
#include "ecne/walks.hpp"
#include "support.hpp"

using namespace ecne;
using namespace ecne_test;

namespace {

WalkConfig small_walk_config() {
  WalkConfig cfg;
  cfg.walks_per_node = 10;
  cfg.max_walk_length = 40;
  cfg.window = 5;
  cfg.negative_samples = 5;
  cfg.epochs = 5;
  cfg.seed = 1;
  return cfg;
}

WeightedLineGraph weighted_line_graph_of(const Graph& g, double eps = 1e-6) {
  auto lg = build_line_graph(g);
  weight_edges(lg, g, clamp(current_flow_betweenness(g), eps));
  return lg;
}

double cosine(const double* a, const double* b, std::size_t d) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < d; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb) + 1e-300);
}

// Mean cosine separation between the two edge-cliques of a barbell graph's
// line graph. The bridge edge belongs to neither clique.
double barbell_separation(const EmbeddingMatrix& emb, const Graph& g,
                          NodeId clique_size) {
  std::vector<EdgeId> left, right;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (v < clique_size) left.push_back(e);
    else if (u >= clique_size) right.push_back(e);
  }
  double intra = 0, cross = 0;
  std::size_t ni = 0, nc = 0;
  for (const auto& side : {left, right})
    for (std::size_t i = 0; i < side.size(); ++i)
      for (std::size_t j = i + 1; j < side.size(); ++j) {
        intra += cosine(emb.row(side[i]), emb.row(side[j]), emb.dim);
        ++ni;
      }
  for (EdgeId a : left)
    for (EdgeId b : right) {
      cross += cosine(emb.row(a), emb.row(b), emb.dim);
      ++nc;
    }
  return intra / static_cast<double>(ni) - cross / static_cast<double>(nc);
}

}  // namespace

// --------------------------------------------------------------------------
// dimension policy
// --------------------------------------------------------------------------

TEST(ChooseDimension, FixedModeReturnsDefault) {
  EXPECT_EQ(choose_dimension(1000, 5000, DimensionMode::kFixed), 128u);
  EXPECT_EQ(choose_dimension(10, 20, DimensionMode::kFixed, 64), 64u);
}

TEST(ChooseDimension, MatchedBudgetCases) {
  // 6100 * 128 / 9939 = 78.56... -> 80 after rounding to a multiple of 8
  EXPECT_EQ(choose_dimension(6100, 9939, DimensionMode::kMatched), 80u);
  EXPECT_EQ(choose_dimension(100, 200, DimensionMode::kMatched), 64u);
  // many more edges than nodes: floor at 8
  EXPECT_EQ(choose_dimension(10, 100000, DimensionMode::kMatched), 8u);
  // fewer edges than nodes: cap at the fixed width
  EXPECT_EQ(choose_dimension(1000, 500, DimensionMode::kMatched), 128u);
}

TEST(ChooseDimension, MatchedBudgetInvariant) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto rng = make_stream(seed);
    std::size_t nodes = 10 + next_index(rng, 5000);
    std::size_t edges = 10 + next_index(rng, 20000);
    std::size_t d = choose_dimension(nodes, edges, DimensionMode::kMatched);
    EXPECT_EQ(d % 8, 0u);
    EXPECT_LE(d, 128u);
    // budget covered unless capped
    if (d < 128) EXPECT_GE(edges * d, nodes * 128u);
  }
}

// --------------------------------------------------------------------------
// walks
// --------------------------------------------------------------------------

TEST(Walks, IsolatedLineNodeGivesLengthOneWalks) {
  // two disjoint edges: line graph has two isolated nodes
  Graph g(4, {{0, 1}, {2, 3}});
  auto lg = build_line_graph(g);
  WalkConfig cfg = small_walk_config();
  auto walks = generate_walks(lg, cfg);
  EXPECT_EQ(walks.size(), cfg.walks_per_node * 2);
  for (const auto& w : walks) EXPECT_EQ(w.size(), 1u);
}

TEST(Walks, TwoNodeLineGraphAlternates) {
  Graph g = make_path(3);  // line graph: 2 nodes, 1 edge
  auto lg = weighted_line_graph_of(g);
  WalkConfig cfg = small_walk_config();
  cfg.max_walk_length = 5;
  auto walks = generate_walks(lg, cfg);
  for (const auto& w : walks) {
    ASSERT_EQ(w.size(), 5u);
    for (std::size_t i = 1; i < w.size(); ++i) EXPECT_NE(w[i], w[i - 1]);
  }
}

TEST(Walks, CountAndValidityOnKarate) {
  Graph g = load_karate();
  auto lg = weighted_line_graph_of(g);
  WalkConfig cfg = small_walk_config();
  cfg.max_walk_length = 20;
  auto walks = generate_walks(lg, cfg);
  EXPECT_EQ(walks.size(), 780u);  // 10 walks x 78 line-nodes

  std::set<std::pair<EdgeId, EdgeId>> line_edges;
  for (const auto& le : lg.edges()) {
    line_edges.insert({le.a, le.b});
    line_edges.insert({le.b, le.a});
  }
  for (const auto& w : walks)
    for (std::size_t i = 1; i < w.size(); ++i)
      ASSERT_TRUE(line_edges.count({w[i - 1], w[i]}))
          << "walk step is not a line edge";
}

TEST(Walks, DeterministicAcrossThreadCounts) {
  Graph g = load_karate();
  auto lg = weighted_line_graph_of(g);
  WalkConfig cfg = small_walk_config();
  cfg.max_walk_length = 15;
  auto one = generate_walks(lg, cfg);
  cfg.threads = 4;
  auto four = generate_walks(lg, cfg);
  EXPECT_EQ(one, four);
}

TEST(Walks, TransitionFrequenciesFollowWeights) {
  // weighted triangle line graph: start node 0 has two neighbors with
  // different weights; check first-step frequencies over 1e5 walks.
  Graph g = make_path(4);  // line nodes 0,1,2; node 1 adjacent to 0 and 2
  auto lg = build_line_graph(g);
  // hand-set weights: edge {0,1} -> 3.0, edge {1,2} -> 1.0
  for (std::size_t i = 0; i < lg.edge_count(); ++i) {
    const auto& le = lg.edges()[i];
    lg.set_weight(i, (le.a == 0 && le.b == 1) ? 3.0 : 1.0);
  }
  WalkConfig cfg;
  cfg.walks_per_node = 100000;
  cfg.max_walk_length = 2;
  cfg.seed = 7;
  auto walks = generate_walks(lg, cfg);
  std::map<EdgeId, double> counts;
  double total = 0;
  for (const auto& w : walks) {
    if (w.front() != 1 || w.size() < 2) continue;
    counts[w[1]] += 1.0;
    total += 1.0;
  }
  ASSERT_EQ(total, 100000.0);
  double tv = 0.5 * (std::abs(counts[0] / total - 0.75) +
                     std::abs(counts[2] / total - 0.25));
  EXPECT_LT(tv, 0.02);
}

TEST(Walks, ConfigValidation) {
  WalkConfig cfg;
  cfg.walks_per_node = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = WalkConfig{};
  cfg.lr_end = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

// --------------------------------------------------------------------------
// skip-gram
// --------------------------------------------------------------------------

TEST(Skipgram, SinglePairDrivesScoreUp) {
  // one two-node walk repeated; after many passes the positive pair's
  // logistic score should be confidently high
  std::vector<Walk> walks(50, Walk{0, 1});
  WalkConfig cfg;
  cfg.window = 1;
  cfg.negative_samples = 1;
  cfg.epochs = 40;
  cfg.lr_start = 0.1;
  cfg.lr_end = 0.05;
  cfg.seed = 3;
  SkipgramStats stats;
  auto emb = train_skipgram(walks, 16, cfg, 2, &stats);
  ASSERT_EQ(emb.rows(), 2u);
  ASSERT_EQ(stats.context.rows(), 2u);
  auto score = [&](std::size_t center, std::size_t ctx) {
    double dot = 0;
    for (std::size_t i = 0; i < emb.dim; ++i)
      dot += emb.row(center)[i] * stats.context.row(ctx)[i];
    return 1.0 / (1.0 + std::exp(-dot));
  };
  EXPECT_GT(score(0, 1), 0.9);
  EXPECT_GT(score(1, 0), 0.9);
  EXPECT_GT(score(0, 1), 0.0);
  EXPECT_LT(score(0, 1), 1.0);
}

TEST(Skipgram, RejectsDegenerateInputs) {
  std::vector<Walk> only_singletons(5, Walk{0});
  WalkConfig cfg = small_walk_config();
  EXPECT_THROW(train_skipgram(only_singletons, 8, cfg, 1),
               std::invalid_argument);
  std::vector<Walk> ok(1, Walk{0, 1});
  EXPECT_THROW(train_skipgram(ok, 0, cfg, 2), std::invalid_argument);
  EXPECT_THROW(train_skipgram({}, 8, cfg, 2), std::invalid_argument);
}

TEST(Skipgram, DeterministicSingleWorker) {
  Graph g = make_barbell(4);
  auto lg = weighted_line_graph_of(g);
  WalkConfig cfg = small_walk_config();
  cfg.epochs = 2;
  auto walks = generate_walks(lg, cfg);
  auto a = train_skipgram(walks, 16, cfg, lg.node_count());
  auto b = train_skipgram(walks, 16, cfg, lg.node_count());
  EXPECT_EQ(a.data, b.data);
}

TEST(Skipgram, BarbellSeparatesCliques) {
  Graph g = make_barbell(5);
  PipelineOptions opt;
  opt.d_fixed = 32;
  opt.walk = small_walk_config();
  auto res = ecne_pipeline(g, opt);
  EXPECT_GT(barbell_separation(res.embeddings, g, 5), 0.2);
}

TEST(Skipgram, EpochLossTrendsDown) {
  Graph g = make_barbell(5);
  auto lg = weighted_line_graph_of(g);
  WalkConfig cfg = small_walk_config();
  auto walks = generate_walks(lg, cfg);
  SkipgramStats stats;
  train_skipgram(walks, 32, cfg, lg.node_count(), &stats);
  ASSERT_EQ(stats.epoch_loss.size(), 5u);
  for (std::size_t e = 1; e < stats.epoch_loss.size(); ++e)
    EXPECT_LT(stats.epoch_loss[e], stats.epoch_loss[e - 1] * 1.05)
        << "epoch " << e;
}

// --------------------------------------------------------------------------
// pipeline
// --------------------------------------------------------------------------

TEST(Pipeline, ShapesFollowGraphAndMode) {
  PipelineOptions opt;
  opt.d_fixed = 16;
  opt.walk = small_walk_config();
  auto res = ecne_pipeline(make_path(3), opt);
  EXPECT_EQ(res.embeddings.rows(), 2u);
  EXPECT_EQ(res.embeddings.dim, 16u);
  EXPECT_EQ(res.line_nodes, 2u);
  EXPECT_EQ(res.line_edges, 1u);
}

TEST(Pipeline, KarateFixedMode) {
  PipelineOptions opt;
  opt.walk = small_walk_config();
  opt.walk.max_walk_length = 15;
  opt.walk.epochs = 1;
  auto res = ecne_pipeline(load_karate(), opt);
  EXPECT_EQ(res.embeddings.rows(), 78u);
  EXPECT_EQ(res.embeddings.dim, 128u);
  for (double x : res.embeddings.data) ASSERT_TRUE(std::isfinite(x));
}

TEST(Pipeline, HandlesDisconnectedInput) {
  Graph g(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  PipelineOptions opt;
  opt.d_fixed = 8;
  opt.walk = small_walk_config();
  auto res = ecne_pipeline(g, opt);
  EXPECT_EQ(res.embeddings.rows(), 6u);
}
