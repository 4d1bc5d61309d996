#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ecne/alias.hpp"
#include "ecne/linegraph.hpp"
#include "ecne/parallel.hpp"
#include "ecne/rng.hpp"

namespace ecne {

/// Walk and skip-gram hyperparameters.
struct WalkConfig {
  std::size_t walks_per_node = 10;   // n
  std::size_t max_walk_length = 100; // L, counted in visited nodes
  std::size_t window = 10;           // w
  std::size_t negative_samples = 100; // Gamma
  std::size_t epochs = 5;
  double lr_start = 0.025;
  double lr_end = 0.0001;
  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const {
    if (walks_per_node < 1 || max_walk_length < 1 || window < 1 ||
        negative_samples < 1)
      throw std::invalid_argument("walk config: counts must be >= 1");
    if (!(lr_start >= lr_end && lr_end > 0.0))
      throw std::invalid_argument("walk config: need lr_start >= lr_end > 0");
  }
};

using Walk = std::vector<EdgeId>;

/// Per-line-node alias tables for weight-proportional neighbor draws.
/// Built once; walk generation is the hot loop.
class WalkSampler {
 public:
  explicit WalkSampler(const WeightedLineGraph& lg) : lg_(&lg) {
    tables_.resize(lg.node_count());
    neighbors_.resize(lg.node_count());
    for (EdgeId v = 0; v < lg.node_count(); ++v) {
      std::vector<double> w;
      lg.for_neighbors(v, [&](EdgeId to, double weight) {
        neighbors_[v].push_back(to);
        w.push_back(weight);
      });
      if (!w.empty()) tables_[v] = AliasTable(w);
    }
  }

  bool isolated(EdgeId v) const { return neighbors_[v].empty(); }

  EdgeId step(EdgeId from, std::mt19937_64& rng) const {
    return neighbors_[from][tables_[from].sample(rng)];
  }

 private:
  const WeightedLineGraph* lg_;
  std::vector<AliasTable> tables_;
  std::vector<std::vector<EdgeId>> neighbors_;
};

/// n truncated random walks from every line-node. Pass p visits the nodes
/// in a seed-shuffled order; each walk's randomness comes from its own
/// (seed, pass, start) stream, so the corpus is identical for any thread
/// count.
inline std::vector<Walk> generate_walks(const WeightedLineGraph& lg,
                                        const WalkConfig& cfg) {
  cfg.validate();
  const EdgeId n = lg.node_count();
  WalkSampler sampler(lg);
  std::vector<Walk> corpus(static_cast<std::size_t>(cfg.walks_per_node) * n);

  for (std::size_t pass = 0; pass < cfg.walks_per_node; ++pass) {
    std::vector<EdgeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto shuffle_rng = make_stream(cfg.seed, 0x73687566, pass);
    shuffle_inplace(order, shuffle_rng);

    parallel_for(0, n, cfg.threads, [&](std::size_t slot) {
      EdgeId start = order[slot];
      auto rng = make_stream(cfg.seed, 0x77616c6b, pass, start);
      Walk walk;
      walk.reserve(cfg.max_walk_length);
      walk.push_back(start);
      EdgeId cur = start;
      while (walk.size() < cfg.max_walk_length && !sampler.isolated(cur)) {
        cur = sampler.step(cur, rng);
        walk.push_back(cur);
      }
      corpus[pass * n + slot] = std::move(walk);
    });
  }
  return corpus;
}

}  // namespace ecne
