#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecne/embedding.hpp"
#include "ecne/nn.hpp"
#include "ecne/paths.hpp"

namespace ecne {

/// Candidate pair with its per-length path evidence. Lengths are kept
/// sorted; path lists are deduplicated, canonically ordered, capped.
struct PathBundle {
  NodeId u = 0, v = 0;
  std::vector<std::pair<std::size_t, std::vector<PathSample>>> per_length;

  const std::vector<PathSample>* paths_of(std::size_t l) const {
    for (const auto& [len, ps] : per_length)
      if (len == l) return &ps;
    return nullptr;
  }
};

/// Path as a sequence of its edges' embedding vectors.
inline std::vector<std::vector<double>> embed_path(const PathSample& p,
                                                   const EmbeddingMatrix& e) {
  std::vector<std::vector<double>> seq;
  seq.reserve(p.edges.size());
  for (EdgeId id : p.edges) {
    if (id >= e.rows())
      throw std::out_of_range(
          "embed_path: edge " + std::to_string(id) +
          " has no embedding row (path graph and embedding graph differ)");
    seq.emplace_back(e.row(id), e.row(id) + e.dim);
  }
  return seq;
}

enum class AggregatorKind { kAvg, kMax, kLstm };

inline AggregatorKind aggregator_from_name(const std::string& name) {
  if (name == "avg") return AggregatorKind::kAvg;
  if (name == "max") return AggregatorKind::kMax;
  if (name == "lstm") return AggregatorKind::kLstm;
  throw std::invalid_argument("unknown aggregator: " + name);
}

inline const char* aggregator_name(AggregatorKind k) {
  switch (k) {
    case AggregatorKind::kAvg: return "avg";
    case AggregatorKind::kMax: return "max";
    default: return "lstm";
  }
}

// ---------------------------------------------------------------------------
// Standalone aggregation primitives (forward only). The trainable model
// below uses the same kernels with caching for backpropagation.
// ---------------------------------------------------------------------------

/// Element-wise mean of concatenated path vectors (all of one length).
template <typename Real>
std::vector<Real> aggregate_avg(const std::vector<std::vector<Real>>& concats) {
  if (concats.empty())
    throw std::invalid_argument("aggregate_avg: empty path set");
  std::vector<Real> out(concats.front().size(), Real(0));
  for (const auto& c : concats) {
    if (c.size() != out.size())
      throw std::invalid_argument("aggregate_avg: ragged inputs");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i];
  }
  for (auto& x : out) x /= static_cast<Real>(concats.size());
  return out;
}

/// relu(W * concat + b) per path, then element-wise max across paths.
template <typename Real>
std::vector<Real> aggregate_max(const std::vector<std::vector<Real>>& concats,
                                const Tensor<Real>& w, const Tensor<Real>& b) {
  if (concats.empty())
    throw std::invalid_argument("aggregate_max: empty path set");
  const std::size_t h = b.size(), in = concats.front().size();
  if (w.size() != h * in)
    throw std::invalid_argument("aggregate_max: weight shape mismatch");
  std::vector<Real> out(h, std::numeric_limits<Real>::lowest());
  for (const auto& c : concats) {
    if (c.size() != in)
      throw std::invalid_argument("aggregate_max: ragged inputs");
    for (std::size_t r = 0; r < h; ++r) {
      Real acc = b.value[r];
      for (std::size_t j = 0; j < in; ++j) acc += w.value[r * in + j] * c[j];
      out[r] = std::max(out[r], std::max(acc, Real(0)));
    }
  }
  return out;
}

/// Two-level LSTM: the edge cell consumes each path's edge vectors and its
/// final hidden state represents the path; the path cell consumes those
/// representations in the given order and its per-step hidden states are
/// max-pooled.
template <typename Real>
std::vector<Real> aggregate_lstm(
    const std::vector<std::vector<std::vector<Real>>>& paths,
    const nn::LstmCell<Real>& edge_cell, const nn::LstmCell<Real>& path_cell) {
  if (paths.empty())
    throw std::invalid_argument("aggregate_lstm: empty path set");
  const std::size_t h = edge_cell.hidden;
  std::vector<Real> reps;
  reps.reserve(paths.size() * h);
  typename nn::LstmCell<Real>::Cache cache;
  for (const auto& seq : paths) {
    const std::size_t steps = seq.size();
    std::vector<Real> x(steps * edge_cell.in);
    for (std::size_t t = 0; t < steps; ++t) {
      if (seq[t].size() != edge_cell.in)
        throw std::invalid_argument("aggregate_lstm: input width mismatch");
      std::copy(seq[t].begin(), seq[t].end(), x.begin() + t * edge_cell.in);
    }
    edge_cell.forward(x.data(), steps, 1, cache);
    const Real* last = cache.hiddens.data() + (steps - 1) * h;
    reps.insert(reps.end(), last, last + h);
  }
  path_cell.forward(reps.data(), paths.size(), 1, cache);
  std::vector<Real> out(path_cell.hidden,
                        std::numeric_limits<Real>::lowest());
  for (std::size_t t = 0; t < paths.size(); ++t)
    for (std::size_t r = 0; r < path_cell.hidden; ++r)
      out[r] = std::max(out[r], cache.hiddens[t * path_cell.hidden + r]);
  return out;
}

// ---------------------------------------------------------------------------
// Trainable link scorer
// ---------------------------------------------------------------------------

/// Scores a candidate pair from its path bundle: per-length aggregation,
/// concatenation (plus a presence flag per length, zero representation when
/// a length has no paths), dense layer, logistic squash.
template <typename Real>
class LinkModel {
 public:
  struct Config {
    AggregatorKind kind = AggregatorKind::kLstm;
    std::vector<std::size_t> lengths{3, 4};
    std::size_t embed_dim = 128;
    std::size_t hidden = 64;
    std::uint64_t seed = 1;
  };

  explicit LinkModel(const Config& cfg) : cfg_(cfg) {
    std::sort(cfg_.lengths.begin(), cfg_.lengths.end());
    auto rng = make_stream(cfg_.seed, 0x6d6f64656c);
    std::size_t feat = 0;
    switch (cfg_.kind) {
      case AggregatorKind::kAvg:
        for (std::size_t l : cfg_.lengths) feat += l * cfg_.embed_dim;
        break;
      case AggregatorKind::kMax:
        for (std::size_t l : cfg_.lengths) {
          dense_w_.emplace_back("max.W.l" + std::to_string(l),
                                std::vector<std::size_t>{cfg_.hidden,
                                                         l * cfg_.embed_dim});
          dense_w_.back().init_uniform(
              rng, 1.0 / std::sqrt(static_cast<double>(l * cfg_.embed_dim)));
          dense_b_.emplace_back("max.b.l" + std::to_string(l),
                                std::vector<std::size_t>{cfg_.hidden});
        }
        feat = cfg_.lengths.size() * cfg_.hidden;
        break;
      case AggregatorKind::kLstm:
        edge_cell_ = nn::LstmCell<Real>("lstm.edge", cfg_.embed_dim,
                                        cfg_.hidden, rng);
        path_cell_ =
            nn::LstmCell<Real>("lstm.path", cfg_.hidden, cfg_.hidden, rng);
        feat = cfg_.lengths.size() * cfg_.hidden;
        break;
    }
    feat += cfg_.lengths.size();  // presence flags
    out_w_ = Tensor<Real>("out.w", {feat});
    out_w_.init_uniform(rng, 1.0 / std::sqrt(static_cast<double>(feat)));
    out_b_ = Tensor<Real>("out.b", {1});
  }

  const Config& config() const { return cfg_; }

  std::vector<Tensor<Real>*> tensors() {
    std::vector<Tensor<Real>*> out;
    for (auto& t : dense_w_) out.push_back(&t);
    for (auto& t : dense_b_) out.push_back(&t);
    if (cfg_.kind == AggregatorKind::kLstm) {
      out.push_back(&edge_cell_.w);
      out.push_back(&edge_cell_.u);
      out.push_back(&edge_cell_.b);
      out.push_back(&path_cell_.w);
      out.push_back(&path_cell_.u);
      out.push_back(&path_cell_.b);
    }
    out.push_back(&out_w_);
    out.push_back(&out_b_);
    return out;
  }

  void zero_grads() {
    for (auto* t : tensors()) t->zero_grad();
  }

  struct LengthCache {
    std::size_t batch = 0, steps = 0;
    std::vector<Real> x;  // steps x d x batch
    std::vector<Real> act;  // max: h x batch after relu
    std::vector<std::size_t> argmax_col;
    typename nn::LstmCell<Real>::Cache lstm1, lstm2;
    std::vector<Real> x2;  // level-2 inputs, batch steps x h
    std::vector<std::size_t> argmax_step;
    std::vector<Real> rep;
  };
  struct Cache {
    std::vector<LengthCache> per_length;
    std::vector<Real> features;
    Real logit = 0, eta = 0;
  };

  /// Plausibility score in (0,1); fills `cache` for a later backward pass.
  Real forward(const PathBundle& bundle, const EmbeddingMatrix& emb,
               Cache& cache) const {
    if (emb.dim != cfg_.embed_dim)
      throw std::invalid_argument("link model: embedding width mismatch");
    cache.per_length.assign(cfg_.lengths.size(), {});
    cache.features.clear();

    for (std::size_t li = 0; li < cfg_.lengths.size(); ++li) {
      const std::size_t l = cfg_.lengths[li];
      LengthCache& lc = cache.per_length[li];
      const std::vector<PathSample>* paths = bundle.paths_of(l);
      const std::size_t batch = paths ? paths->size() : 0;
      lc.batch = batch;
      lc.steps = l;
      forward_length(li, paths, emb, lc);
      cache.features.insert(cache.features.end(), lc.rep.begin(),
                            lc.rep.end());
    }
    for (const auto& lc : cache.per_length)
      cache.features.push_back(lc.batch > 0 ? Real(1) : Real(0));

    Real logit = out_b_.value[0];
    for (std::size_t i = 0; i < cache.features.size(); ++i)
      logit += out_w_.value[i] * cache.features[i];
    cache.logit = logit;
    cache.eta = nn::sigmoid(logit);
    return cache.eta;
  }

  Real predict(const PathBundle& bundle, const EmbeddingMatrix& emb) const {
    Cache cache;
    return forward(bundle, emb, cache);
  }

  /// Accumulates parameter gradients for d(loss)/d(logit) = dlogit.
  void backward(const Cache& cache, Real dlogit) {
    out_b_.grad[0] += dlogit;
    for (std::size_t i = 0; i < cache.features.size(); ++i)
      out_w_.grad[i] += dlogit * cache.features[i];

    std::size_t offset = 0;
    for (std::size_t li = 0; li < cfg_.lengths.size(); ++li) {
      const LengthCache& lc = cache.per_length[li];
      const std::size_t rep_size = lc.rep.size();
      if (lc.batch > 0 && cfg_.kind != AggregatorKind::kAvg) {
        std::vector<Real> drep(rep_size);
        for (std::size_t r = 0; r < rep_size; ++r)
          drep[r] = dlogit * out_w_.value[offset + r];
        backward_length(li, lc, drep);
      }
      offset += rep_size;
    }
  }

 private:
  void forward_length(std::size_t li, const std::vector<PathSample>* paths,
                      const EmbeddingMatrix& emb, LengthCache& lc) const {
    const std::size_t d = cfg_.embed_dim, h = cfg_.hidden, l = lc.steps,
                      batch = lc.batch;
    if (batch == 0) {
      lc.rep.assign(cfg_.kind == AggregatorKind::kAvg ? l * d : h, Real(0));
      return;
    }

    // Canonical path order keeps the sequence-level aggregator (and float
    // summation) independent of input ordering.
    std::vector<std::size_t> order(batch);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return (*paths)[a].nodes < (*paths)[b].nodes;
    });

    lc.x.assign(l * d * batch, Real(0));
    for (std::size_t c = 0; c < batch; ++c) {
      const PathSample& p = (*paths)[order[c]];
      if (p.edges.size() != l)
        throw std::invalid_argument("link model: path length mismatch");
      for (std::size_t t = 0; t < l; ++t) {
        if (p.edges[t] >= emb.rows())
          throw std::out_of_range("link model: path edge has no embedding");
        const double* row = emb.row(p.edges[t]);
        for (std::size_t r = 0; r < d; ++r)
          lc.x[(t * d + r) * batch + c] = static_cast<Real>(row[r]);
      }
    }

    switch (cfg_.kind) {
      case AggregatorKind::kAvg: {
        lc.rep.assign(l * d, Real(0));
        for (std::size_t r = 0; r < l * d; ++r) {
          Real acc = 0;
          for (std::size_t c = 0; c < batch; ++c) acc += lc.x[r * batch + c];
          lc.rep[r] = acc / static_cast<Real>(batch);
        }
        break;
      }
      case AggregatorKind::kMax: {
        const Tensor<Real>& w = dense_w_[li];
        const Tensor<Real>& b = dense_b_[li];
        lc.act.assign(h * batch, Real(0));
        for (std::size_t r = 0; r < h; ++r)
          for (std::size_t c = 0; c < batch; ++c)
            lc.act[r * batch + c] = b.value[r];
        nn::gemm(w.value.data(), lc.x.data(), lc.act.data(), h, l * d, batch);
        for (auto& a : lc.act) a = std::max(a, Real(0));
        lc.rep.assign(h, Real(0));
        lc.argmax_col.assign(h, 0);
        for (std::size_t r = 0; r < h; ++r) {
          Real best = lc.act[r * batch];
          std::size_t bc = 0;
          for (std::size_t c = 1; c < batch; ++c)
            if (lc.act[r * batch + c] > best) {
              best = lc.act[r * batch + c];
              bc = c;
            }
          lc.rep[r] = best;
          lc.argmax_col[r] = bc;
        }
        break;
      }
      case AggregatorKind::kLstm: {
        edge_cell_.forward(lc.x.data(), l, batch, lc.lstm1);
        const Real* final_h = lc.lstm1.hiddens.data() + (l - 1) * h * batch;
        lc.x2.assign(batch * h, Real(0));
        for (std::size_t c = 0; c < batch; ++c)
          for (std::size_t r = 0; r < h; ++r)
            lc.x2[c * h + r] = final_h[r * batch + c];
        path_cell_.forward(lc.x2.data(), batch, 1, lc.lstm2);
        lc.rep.assign(h, Real(0));
        lc.argmax_step.assign(h, 0);
        for (std::size_t r = 0; r < h; ++r) {
          Real best = lc.lstm2.hiddens[r];
          std::size_t bt = 0;
          for (std::size_t t = 1; t < batch; ++t)
            if (lc.lstm2.hiddens[t * h + r] > best) {
              best = lc.lstm2.hiddens[t * h + r];
              bt = t;
            }
          lc.rep[r] = best;
          lc.argmax_step[r] = bt;
        }
        break;
      }
    }
  }

  void backward_length(std::size_t li, const LengthCache& lc,
                       const std::vector<Real>& drep) {
    const std::size_t d = cfg_.embed_dim, h = cfg_.hidden, l = lc.steps,
                      batch = lc.batch;
    switch (cfg_.kind) {
      case AggregatorKind::kAvg:
        break;  // no trainable parameters
      case AggregatorKind::kMax: {
        std::vector<Real> dpre(h * batch, Real(0));
        for (std::size_t r = 0; r < h; ++r) {
          std::size_t c = lc.argmax_col[r];
          if (lc.act[r * batch + c] > Real(0)) dpre[r * batch + c] = drep[r];
        }
        nn::gemm_a_bt(dpre.data(), lc.x.data(), dense_w_[li].grad.data(), h,
                      batch, l * d);
        for (std::size_t r = 0; r < h; ++r) {
          Real acc = 0;
          for (std::size_t c = 0; c < batch; ++c) acc += dpre[r * batch + c];
          dense_b_[li].grad[r] += acc;
        }
        break;
      }
      case AggregatorKind::kLstm: {
        std::vector<Real> dh2(batch * h, Real(0));
        for (std::size_t r = 0; r < h; ++r)
          dh2[lc.argmax_step[r] * h + r] += drep[r];
        std::vector<Real> dx2(batch * h, Real(0));
        path_cell_.backward(lc.lstm2, dh2, dx2.data());
        std::vector<Real> dh1(l * h * batch, Real(0));
        Real* final_slice = dh1.data() + (l - 1) * h * batch;
        for (std::size_t c = 0; c < batch; ++c)
          for (std::size_t r = 0; r < h; ++r)
            final_slice[r * batch + c] = dx2[c * h + r];
        edge_cell_.backward(lc.lstm1, dh1, nullptr);
        break;
      }
    }
  }

  Config cfg_;
  std::vector<Tensor<Real>> dense_w_, dense_b_;  // max variant, per length
  nn::LstmCell<Real> edge_cell_, path_cell_;     // lstm variant
  Tensor<Real> out_w_, out_b_;
};

/// Mean binary cross-entropy; predictions are clamped to [1e-7, 1-1e-7].
template <typename Real>
double bce_loss(const std::vector<Real>& predictions,
                const std::vector<int>& labels) {
  if (predictions.size() != labels.size() || predictions.empty())
    throw std::invalid_argument("bce_loss: size mismatch or empty batch");
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    double p = std::clamp(static_cast<double>(predictions[i]), 1e-7,
                          1.0 - 1e-7);
    total += labels[i] ? -std::log(p) : -std::log(1.0 - p);
  }
  return total / static_cast<double>(predictions.size());
}

}  // namespace ecne
