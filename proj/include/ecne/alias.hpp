#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ecne/rng.hpp"

namespace ecne {

/// Walker's alias table: O(n) build, O(1) draws from a fixed discrete
/// distribution proportional to the given non-negative weights.
class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    if (n == 0) return;
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("alias table: negative weight");
      total += w;
    }
    if (!(total > 0.0))
      throw std::invalid_argument("alias table: all weights zero");

    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i)
      scaled[i] = weights[i] * static_cast<double>(n) / total;

    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < n; ++i)
      (scaled[i] < 1.0 ? small : large).push_back(i);
    while (!small.empty() && !large.empty()) {
      std::size_t s = small.back();
      small.pop_back();
      std::size_t l = large.back();
      large.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (std::size_t i : large) prob_[i] = 1.0;
    for (std::size_t i : small) prob_[i] = 1.0;  // rounding leftovers
  }

  bool empty() const { return prob_.empty(); }
  std::size_t size() const { return prob_.size(); }

  // One uniform draw picks both the slot and the coin.
  std::size_t sample(std::mt19937_64& rng) const {
    double u = next_double(rng) * static_cast<double>(prob_.size());
    auto slot = static_cast<std::size_t>(u);
    double coin = u - static_cast<double>(slot);
    return coin < prob_[slot] ? slot : alias_[slot];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace ecne
