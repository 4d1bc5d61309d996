#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ecne/alias.hpp"
#include "ecne/embedding.hpp"
#include "ecne/rng.hpp"
#include "ecne/walks.hpp"

namespace ecne {

struct SkipgramStats {
  std::vector<double> epoch_loss;  // mean per-pair loss, one entry per epoch
  EmbeddingMatrix context;         // training-time context matrix
};

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct SgnsState {
  std::size_t vocab;
  std::size_t dim;
  EmbeddingMatrix center;
  EmbeddingMatrix context;
  AliasTable negatives;
  std::size_t max_negative_id = 0;
};

// Negative-sampling distribution: walk occurrence counts ^ 0.75.
inline AliasTable build_negative_table(const std::vector<Walk>& walks,
                                       std::size_t vocab) {
  std::vector<double> counts(vocab, 0.0);
  for (const auto& w : walks)
    for (EdgeId id : w) counts[id] += 1.0;
  for (double& c : counts) c = std::pow(c, 0.75);
  return AliasTable(counts);
}

// One positive pair plus Gamma negatives, updating center row u and the
// touched context rows. Returns the pair loss when `want_loss` is set.
inline double sgns_pair(SgnsState& st, EdgeId u, EdgeId pos, double lr,
                        std::size_t gamma, std::mt19937_64& rng,
                        bool want_loss) {
  const std::size_t d = st.dim;
  double* eu = st.center.row(u);
  thread_local std::vector<double> grad;
  grad.assign(d, 0.0);
  double loss = 0.0;

  for (std::size_t s = 0; s <= gamma; ++s) {
    EdgeId target;
    double label;
    if (s == 0) {
      target = pos;
      label = 1.0;
    } else {
      target = static_cast<EdgeId>(st.negatives.sample(rng));
      if (target == pos) continue;  // would contradict the positive update
      label = 0.0;
    }
    double* ct = st.context.row(target);
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) dot += eu[i] * ct[i];
    double pred = sigmoid(dot);
    if (want_loss)
      loss += label > 0.5 ? -std::log(std::max(pred, 1e-12))
                          : -std::log(std::max(1.0 - pred, 1e-12));
    double g = (label - pred) * lr;
    for (std::size_t i = 0; i < d; ++i) {
      grad[i] += g * ct[i];
      ct[i] += g * eu[i];
    }
  }
  for (std::size_t i = 0; i < d; ++i) eu[i] += grad[i];
  return loss;
}

}  // namespace detail

/// Skip-gram with negative sampling over a walk corpus. Every in-window
/// (center, context) pair is a positive example against Gamma sampled
/// negatives; plain SGD with a linearly decayed learning rate. Returns the
/// center matrix. Single-threaded runs are bit-reproducible for a given
/// seed; with threads > 1 workers update the shared matrices lock-free and
/// only statistical behavior is guaranteed.
inline EmbeddingMatrix train_skipgram(const std::vector<Walk>& walks,
                                      std::size_t dim, const WalkConfig& cfg,
                                      std::size_t vocab,
                                      SkipgramStats* stats = nullptr) {
  if (dim == 0) throw std::invalid_argument("train_skipgram: dim must be > 0");
  if (walks.empty())
    throw std::invalid_argument("train_skipgram: no walks given");

  std::size_t positions = 0;
  bool any_pair = false;
  for (const auto& w : walks) {
    positions += w.size();
    any_pair = any_pair || w.size() > 1;
  }
  if (!any_pair)
    throw std::invalid_argument(
        "train_skipgram: all walks have length 1, no training pairs");

  detail::SgnsState st;
  st.vocab = vocab;
  st.dim = dim;
  st.center = EmbeddingMatrix(vocab, dim);
  st.context = EmbeddingMatrix(vocab, dim);
  st.negatives = detail::build_negative_table(walks, vocab);

  auto init_rng = make_stream(cfg.seed, 0x696e6974);
  const double half = 0.5 / static_cast<double>(dim);
  for (double& x : st.center.data)
    x = (next_double(init_rng) * 2.0 - 1.0) * half;

  const double total =
      static_cast<double>(positions) * static_cast<double>(cfg.epochs);
  const std::size_t w = cfg.window;

  auto run_range = [&](std::size_t first_walk, std::size_t last_walk,
                       std::size_t epoch, std::size_t pos_offset,
                       std::mt19937_64& rng, double& loss_acc,
                       std::size_t& pair_count) {
    std::size_t done =
        epoch * positions + pos_offset;  // positions before this range
    for (std::size_t wi = first_walk; wi < last_walk; ++wi) {
      const Walk& walk = walks[wi];
      for (std::size_t i = 0; i < walk.size(); ++i, ++done) {
        double lr = cfg.lr_start -
                    (cfg.lr_start - cfg.lr_end) * (static_cast<double>(done) / total);
        if (lr < cfg.lr_end) lr = cfg.lr_end;
        std::size_t lo = i >= w ? i - w : 0;
        std::size_t hi = std::min(walk.size() - 1, i + w);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          loss_acc += detail::sgns_pair(st, walk[i], walk[j], lr,
                                        cfg.negative_samples, rng,
                                        stats != nullptr);
          ++pair_count;
        }
      }
    }
  };

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    double loss = 0.0;
    std::size_t pairs = 0;
    if (cfg.threads <= 1) {
      auto rng = make_stream(cfg.seed, 0x747261696e, epoch);
      run_range(0, walks.size(), epoch, 0, rng, loss, pairs);
    } else {
      // Hogwild over contiguous walk ranges.
      std::size_t workers = std::min<std::size_t>(cfg.threads, walks.size());
      std::vector<std::thread> pool;
      std::vector<double> losses(workers, 0.0);
      std::vector<std::size_t> counts(workers, 0);
      std::vector<std::size_t> bounds(workers + 1, 0);
      std::vector<std::size_t> offsets(workers, 0);
      for (std::size_t t = 0; t <= workers; ++t)
        bounds[t] = walks.size() * t / workers;
      std::size_t acc = 0;
      for (std::size_t t = 0; t < workers; ++t) {
        offsets[t] = acc;
        for (std::size_t wi = bounds[t]; wi < bounds[t + 1]; ++wi)
          acc += walks[wi].size();
      }
      for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
          auto rng = make_stream(cfg.seed, 0x747261696e, epoch, t + 1);
          run_range(bounds[t], bounds[t + 1], epoch, offsets[t], rng,
                    losses[t], counts[t]);
        });
      for (auto& th : pool) th.join();
      for (std::size_t t = 0; t < workers; ++t) {
        loss += losses[t];
        pairs += counts[t];
      }
    }
    if (stats)
      stats->epoch_loss.push_back(pairs ? loss / static_cast<double>(pairs)
                                        : 0.0);
  }
  if (stats) stats->context = std::move(st.context);
  return std::move(st.center);
}

}  // namespace ecne
