#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecne/graph.hpp"
#include "ecne/linkmodel.hpp"
#include "ecne/parallel.hpp"
#include "ecne/paths.hpp"
#include "ecne/rng.hpp"

namespace ecne {

struct LinkExample {
  NodeId u = 0, v = 0;
  int label = 0;
  PathBundle bundle;
};

/// Supervised link-prediction split. Test positives are removed from
/// `train_graph`, which is the only graph paths (and embeddings) ever see.
struct LinkDataset {
  Graph train_graph;
  std::vector<LinkExample> train, test;
  double split_ratio = 0.9;
  std::uint64_t seed = 1;
  std::vector<std::pair<NodeId, NodeId>> test_positive_pairs;
};

struct DatasetOptions {
  std::vector<std::size_t> lengths{3, 4};
  std::size_t max_paths = 100;
  double split_ratio = 0.0;  // 0 = pick by node count (0.9 up to 4000, else 0.5)
  std::uint64_t seed = 1;
  int threads = 1;
};

inline PathBundle build_bundle(const Graph& g, NodeId u, NodeId v,
                               const std::vector<std::size_t>& lengths,
                               std::size_t max_paths, std::uint64_t seed) {
  PathBundle b;
  b.u = u;
  b.v = v;
  for (std::size_t l : lengths)
    b.per_length.emplace_back(l, find_paths(g, u, v, l, max_paths, seed));
  return b;
}

/// Labeled pairs with path bundles. Positives are the graph's edges, split
/// by ratio; an equal number of negatives is sampled uniformly from
/// non-edges, disjoint between train and test. All bundles are extracted
/// from the train graph.
inline LinkDataset build_dataset(const Graph& g, const DatasetOptions& opt) {
  const std::size_t m = g.edge_count();
  const std::size_t n = g.node_count();
  if (m < 2) throw std::invalid_argument("build_dataset: too few edges");

  LinkDataset ds;
  ds.seed = opt.seed;
  ds.split_ratio =
      opt.split_ratio > 0.0 ? opt.split_ratio : (n <= 4000 ? 0.9 : 0.5);

  // Positive split.
  std::vector<EdgeId> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto rng = make_stream(opt.seed, 0x73706c6974);
  shuffle_inplace(order, rng);
  const std::size_t train_pos =
      static_cast<std::size_t>(std::llround(ds.split_ratio * static_cast<double>(m)));
  if (train_pos == 0 || train_pos == m)
    throw std::invalid_argument("build_dataset: degenerate split");

  std::vector<char> is_test_edge(m, 0);
  for (std::size_t i = train_pos; i < m; ++i) is_test_edge[order[i]] = 1;

  std::vector<std::pair<NodeId, NodeId>> train_edges;
  for (EdgeId e = 0; e < m; ++e) {
    if (is_test_edge[e])
      ds.test_positive_pairs.push_back(g.endpoints(e));
    else
      train_edges.push_back(g.endpoints(e));
  }
  ds.train_graph = Graph(n, train_edges, g.labels());

  // Negative sampling: uniform non-edges of the full graph, no duplicates.
  const std::size_t wanted = m;  // one negative per positive
  const std::size_t possible = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (possible - m < wanted)
    throw std::invalid_argument(
        "build_dataset: graph too dense to sample negatives");
  std::set<std::pair<NodeId, NodeId>> negatives;
  auto neg_rng = make_stream(opt.seed, 0x6e656773);
  while (negatives.size() < wanted) {
    NodeId a = static_cast<NodeId>(next_index(neg_rng, n));
    NodeId b = static_cast<NodeId>(next_index(neg_rng, n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (g.has_edge(a, b)) continue;
    negatives.insert({a, b});
  }

  std::vector<std::pair<NodeId, NodeId>> neg_list(negatives.begin(),
                                                  negatives.end());
  shuffle_inplace(neg_list, neg_rng);

  auto add = [&](std::vector<LinkExample>& dst, NodeId u, NodeId v,
                 int label) {
    dst.push_back({u, v, label, {}});
  };
  for (std::size_t i = 0; i < train_pos; ++i) {
    auto [u, v] = g.endpoints(order[i]);
    add(ds.train, u, v, 1);
  }
  for (std::size_t i = train_pos; i < m; ++i) {
    auto [u, v] = g.endpoints(order[i]);
    add(ds.test, u, v, 1);
  }
  for (std::size_t i = 0; i < wanted; ++i) {
    auto [u, v] = neg_list[i];
    if (i < train_pos)
      add(ds.train, u, v, 0);
    else
      add(ds.test, u, v, 0);
  }

  auto extract = [&](std::vector<LinkExample>& xs) {
    parallel_for(0, xs.size(), opt.threads, [&](std::size_t i) {
      xs[i].bundle =
          build_bundle(ds.train_graph, xs[i].u, xs[i].v, opt.lengths,
                       opt.max_paths, mix64(opt.seed ^ mix64(xs[i].u) ^
                                            mix64(static_cast<std::uint64_t>(xs[i].v) << 20)));
    });
  };
  extract(ds.train);
  extract(ds.test);
  return ds;
}

struct TrainOptions {
  double lr = 0.001;
  std::size_t max_epochs = 50;
  std::size_t patience = 5;
  double val_fraction = 0.1;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
};

struct EpochStats {
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
  std::size_t best_epoch = 0;  // 1-based; 0 = never trained
};

namespace detail {

template <typename Real>
double mean_loss(LinkModel<Real>& model,
                 const std::vector<const LinkExample*>& xs,
                 const EmbeddingMatrix& emb) {
  std::vector<Real> preds;
  std::vector<int> labels;
  preds.reserve(xs.size());
  labels.reserve(xs.size());
  typename LinkModel<Real>::Cache cache;
  for (const auto* ex : xs) {
    preds.push_back(model.forward(ex->bundle, emb, cache));
    labels.push_back(ex->label);
  }
  return bce_loss(preds, labels);
}

}  // namespace detail

/// Adam-trained binary classifier over path bundles with early stopping on
/// a held-out slice of the training examples. Returns per-epoch history;
/// the model keeps the parameters of the best validation epoch.
template <typename Real>
TrainHistory train_link_model(LinkModel<Real>& model, const LinkDataset& ds,
                              const EmbeddingMatrix& emb,
                              const TrainOptions& opt = {}) {
  TrainHistory history;
  if (opt.max_epochs == 0) return history;
  if (ds.train.empty())
    throw std::invalid_argument("train_link_model: no training examples");

  std::vector<const LinkExample*> pool;
  for (const auto& ex : ds.train) pool.push_back(&ex);
  auto rng = make_stream(opt.seed, 0x6c70747261696e);
  shuffle_inplace(pool, rng);
  std::size_t val_count =
      static_cast<std::size_t>(std::floor(opt.val_fraction *
                                          static_cast<double>(pool.size())));
  if (pool.size() > 1 && val_count == 0 && opt.val_fraction > 0.0)
    val_count = 1;
  std::vector<const LinkExample*> val(pool.begin(), pool.begin() + val_count);
  std::vector<const LinkExample*> train(pool.begin() + val_count, pool.end());
  if (train.empty())
    throw std::invalid_argument("train_link_model: empty train split");

  AdamOptimizer<Real> adam(opt.lr);
  auto tensors = model.tensors();

  double best_val = std::numeric_limits<double>::infinity();
  std::vector<std::vector<Real>> best_params;
  std::size_t since_best = 0;

  auto snapshot = [&] {
    best_params.clear();
    for (auto* t : tensors) best_params.push_back(t->value);
  };
  auto restore = [&] {
    for (std::size_t i = 0; i < tensors.size(); ++i)
      tensors[i]->value = best_params[i];
  };

  typename LinkModel<Real>::Cache cache;
  for (std::size_t epoch = 1; epoch <= opt.max_epochs; ++epoch) {
    shuffle_inplace(train, rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < train.size();
         start += opt.batch_size) {
      std::size_t stop = std::min(train.size(), start + opt.batch_size);
      model.zero_grads();
      double batch_loss = 0.0;
      for (std::size_t i = start; i < stop; ++i) {
        const LinkExample* ex = train[i];
        Real eta = model.forward(ex->bundle, emb, cache);
        double p = std::clamp(static_cast<double>(eta), 1e-7, 1.0 - 1e-7);
        batch_loss += ex->label ? -std::log(p) : -std::log(1.0 - p);
        Real dlogit = (eta - static_cast<Real>(ex->label)) /
                      static_cast<Real>(stop - start);
        model.backward(cache, dlogit);
      }
      batch_loss /= static_cast<double>(stop - start);
      if (!std::isfinite(batch_loss))
        throw std::runtime_error(
            "train_link_model: non-finite loss at epoch " +
            std::to_string(epoch));
      adam.step(tensors);
      epoch_loss += batch_loss * static_cast<double>(stop - start);
    }
    epoch_loss /= static_cast<double>(train.size());

    double val_loss = val.empty() ? epoch_loss
                                  : detail::mean_loss(model, val, emb);
    history.epochs.push_back({epoch_loss, val_loss});

    if (val_loss < best_val - 1e-9) {
      best_val = val_loss;
      history.best_epoch = epoch;
      since_best = 0;
      snapshot();
    } else if (++since_best >= opt.patience) {
      break;
    }
  }
  if (!best_params.empty()) restore();
  return history;
}

/// Mann-Whitney AUC over (score, label) pairs appears in metrics.hpp; this
/// helper scores a whole example set.
template <typename Real>
std::vector<std::pair<double, int>> score_examples(
    const LinkModel<Real>& model, const std::vector<LinkExample>& xs,
    const EmbeddingMatrix& emb) {
  std::vector<std::pair<double, int>> out;
  out.reserve(xs.size());
  for (const auto& ex : xs)
    out.emplace_back(static_cast<double>(model.predict(ex.bundle, emb)),
                     ex.label);
  return out;
}

}  // namespace ecne
