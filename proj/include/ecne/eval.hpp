#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecne/communities.hpp"
#include "ecne/embedding.hpp"
#include "ecne/graph.hpp"
#include "ecne/kmeans.hpp"
#include "ecne/metrics.hpp"
#include "ecne/rng.hpp"

namespace ecne {

// ---------------------------------------------------------------------------
// One-vs-rest logistic regression over embedding rows
// ---------------------------------------------------------------------------

struct LogRegOptions {
  double lr = 0.5;
  double l2 = 1e-4;
  std::size_t max_iterations = 300;
};

/// Full-batch gradient-descent logistic regression, one binary model per
/// class, prediction by highest score.
class OneVsRestLogReg {
 public:
  void fit(const std::vector<const double*>& x, std::size_t dim,
           const std::vector<long long>& y, const LogRegOptions& opt = {}) {
    dim_ = dim;
    classes_.clear();
    for (long long c : y)
      if (std::find(classes_.begin(), classes_.end(), c) == classes_.end())
        classes_.push_back(c);
    std::sort(classes_.begin(), classes_.end());
    weights_.assign(classes_.size(), std::vector<double>(dim + 1, 0.0));

    const double n = static_cast<double>(x.size());
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      auto& w = weights_[ci];
      std::vector<double> grad(dim + 1);
      for (std::size_t it = 0; it < opt.max_iterations; ++it) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
          double z = w[dim];
          for (std::size_t j = 0; j < dim; ++j) z += w[j] * x[i][j];
          double p = 1.0 / (1.0 + std::exp(-z));
          double err = p - (y[i] == classes_[ci] ? 1.0 : 0.0);
          for (std::size_t j = 0; j < dim; ++j) grad[j] += err * x[i][j];
          grad[dim] += err;
        }
        for (std::size_t j = 0; j < dim; ++j)
          w[j] -= opt.lr * (grad[j] / n + opt.l2 * w[j]);
        w[dim] -= opt.lr * grad[dim] / n;
      }
    }
  }

  long long predict(const double* x) const {
    double best = -std::numeric_limits<double>::infinity();
    long long label = classes_.front();
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      double z = weights_[ci][dim_];
      for (std::size_t j = 0; j < dim_; ++j) z += weights_[ci][j] * x[j];
      if (z > best) {
        best = z;
        label = classes_[ci];
      }
    }
    return label;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<long long> classes_;
  std::vector<std::vector<double>> weights_;
};

// ---------------------------------------------------------------------------
// Edge classification and clustering protocols
// ---------------------------------------------------------------------------

struct ClassifyResult {
  F1Scores f1;
  std::size_t train_count = 0, test_count = 0;
  std::size_t dropped_classes = 0;  // classes too small to stratify
};

/// Stratified train/test split of labeled edges at `train_fraction`, then
/// one-vs-rest logistic regression on the embedding rows; F1 on the rest.
inline ClassifyResult classify_edges(const EmbeddingMatrix& emb,
                                     const EdgeLabeling& labels,
                                     double train_fraction, std::uint64_t seed,
                                     const LogRegOptions& opt = {}) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("classify_edges: train fraction in (0,1)");

  std::map<long long, std::vector<std::size_t>> by_class;
  for (std::size_t e = 0; e < labels.label.size(); ++e)
    if (labels.label[e] >= 0) by_class[labels.label[e]].push_back(e);
  if (by_class.size() < 2)
    throw std::invalid_argument("classify_edges: need at least two classes");

  ClassifyResult res;
  auto rng = make_stream(seed, 0x636c6673);
  std::vector<std::size_t> train_idx, test_idx;
  for (auto& [c, idx] : by_class) {
    if (idx.size() < 2) {
      ++res.dropped_classes;
      continue;
    }
    shuffle_inplace(idx, rng);
    std::size_t take = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(idx.size())));
    take = std::clamp<std::size_t>(take, 1, idx.size() - 1);
    train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + take);
    test_idx.insert(test_idx.end(), idx.begin() + take, idx.end());
  }

  std::vector<const double*> xtr;
  std::vector<long long> ytr;
  for (std::size_t e : train_idx) {
    xtr.push_back(emb.row(e));
    ytr.push_back(labels.label[e]);
  }
  OneVsRestLogReg model;
  model.fit(xtr, emb.dim, ytr, opt);

  std::vector<long long> truth, pred;
  for (std::size_t e : test_idx) {
    truth.push_back(labels.label[e]);
    pred.push_back(model.predict(emb.row(e)));
  }
  res.f1 = f1_scores(truth, pred);
  res.train_count = train_idx.size();
  res.test_count = test_idx.size();
  return res;
}

/// K-means over the labeled edges' embedding rows; returns the assignment
/// aligned with `edge_ids`.
struct ClusterResult {
  std::vector<std::size_t> edge_ids;
  std::vector<std::size_t> assignment;
};

inline ClusterResult cluster_edges(const EmbeddingMatrix& emb,
                                   const std::vector<std::size_t>& edge_ids,
                                   std::size_t k, std::uint64_t seed) {
  std::vector<std::vector<double>> points;
  points.reserve(edge_ids.size());
  for (std::size_t e : edge_ids)
    points.emplace_back(emb.row(e), emb.row(e) + emb.dim);
  auto km = kmeans(points, k, seed);
  return {edge_ids, std::move(km.assignment)};
}

// ---------------------------------------------------------------------------
// Node-embedding combination baselines
// ---------------------------------------------------------------------------

enum class CombineOp { kAverage, kHadamard, kWeightedL1, kWeightedL2 };

inline CombineOp combine_op_from_name(const std::string& name) {
  if (name == "average") return CombineOp::kAverage;
  if (name == "hadamard") return CombineOp::kHadamard;
  if (name == "weighted-l1") return CombineOp::kWeightedL1;
  if (name == "weighted-l2") return CombineOp::kWeightedL2;
  throw std::invalid_argument("unknown combine op: " + name);
}

/// Edge vector from its endpoints' node vectors.
inline std::vector<double> combine_node_embeddings(const EmbeddingMatrix& nodes,
                                                   NodeId u, NodeId v,
                                                   CombineOp op) {
  if (u >= nodes.rows() || v >= nodes.rows())
    throw std::out_of_range("combine_node_embeddings: missing node row");
  const double* a = nodes.row(u);
  const double* b = nodes.row(v);
  std::vector<double> out(nodes.dim);
  for (std::size_t i = 0; i < nodes.dim; ++i) {
    switch (op) {
      case CombineOp::kAverage: out[i] = 0.5 * (a[i] + b[i]); break;
      case CombineOp::kHadamard: out[i] = a[i] * b[i]; break;
      case CombineOp::kWeightedL1: out[i] = std::abs(a[i] - b[i]); break;
      case CombineOp::kWeightedL2:
        out[i] = (a[i] - b[i]) * (a[i] - b[i]);
        break;
    }
  }
  return out;
}

}  // namespace ecne
