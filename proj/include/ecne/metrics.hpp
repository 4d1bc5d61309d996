#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecne {

/// One evaluation result, optionally aggregated over several runs.
struct MetricReport {
  std::string task;
  std::string metric;  // micro-F1 | macro-F1 | NMI | AUC
  double value = 0.0;
  double stddev = 0.0;
  std::size_t runs = 1;
};

inline MetricReport aggregate_runs(const std::string& task,
                                   const std::string& metric,
                                   const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate_runs: no values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {task, metric, mean, std::sqrt(var), values.size()};
}

/// Micro and macro F1 for single-label multi-class predictions. Classes are
/// the labels present in either vector; micro-F1 reduces to accuracy.
struct F1Scores {
  double micro = 0.0;
  double macro = 0.0;
};

template <typename Label>
F1Scores f1_scores(const std::vector<Label>& truth,
                   const std::vector<Label>& pred) {
  if (truth.size() != pred.size() || truth.empty())
    throw std::invalid_argument("f1_scores: size mismatch or empty");
  std::map<Label, std::size_t> tp, fp, fn;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == pred[i]) {
      ++tp[truth[i]];
      ++correct;
    } else {
      ++fp[pred[i]];
      ++fn[truth[i]];
    }
  }
  std::map<Label, char> classes;
  for (const auto& t : truth) classes[t] = 1;
  for (const auto& p : pred) classes[p] = 1;

  double macro = 0.0;
  for (const auto& [c, unused] : classes) {
    (void)unused;
    double tpc = tp.count(c) ? static_cast<double>(tp[c]) : 0.0;
    double fpc = fp.count(c) ? static_cast<double>(fp[c]) : 0.0;
    double fnc = fn.count(c) ? static_cast<double>(fn[c]) : 0.0;
    double denom = 2.0 * tpc + fpc + fnc;
    macro += denom > 0.0 ? 2.0 * tpc / denom : 0.0;
  }
  macro /= static_cast<double>(classes.size());
  return {static_cast<double>(correct) / static_cast<double>(truth.size()),
          macro};
}

/// Normalized mutual information with arithmetic-mean normalization and
/// natural logs. Identical partitions give 1; if either side has zero
/// entropy and the partitions differ, the score is 0.
template <typename A, typename B>
double nmi(const std::vector<A>& x, const std::vector<B>& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("nmi: size mismatch or empty");
  const double n = static_cast<double>(x.size());
  std::map<A, double> px;
  std::map<B, double> py;
  std::map<std::pair<A, B>, double> pxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1.0;
    py[y[i]] += 1.0;
    pxy[{x[i], y[i]}] += 1.0;
  }
  double hx = 0.0, hy = 0.0, mi = 0.0;
  for (auto& [k, c] : px) {
    c /= n;
    hx -= c * std::log(c);
  }
  for (auto& [k, c] : py) {
    c /= n;
    hy -= c * std::log(c);
  }
  for (const auto& [k, c] : pxy) {
    double p = c / n;
    mi += p * std::log(p / (px[k.first] * py[k.second]));
  }
  // Identical-up-to-renaming detection for the degenerate both-constant case.
  if (hx <= 0.0 && hy <= 0.0) return 1.0;
  if (hx <= 0.0 || hy <= 0.0) return 0.0;
  return mi / (0.5 * (hx + hy));
}

/// Mann-Whitney AUC: probability a positive outranks a negative, ties at
/// half credit. Computed from average ranks.
inline double auc(const std::vector<std::pair<double, int>>& scored) {
  std::size_t pos = 0, neg = 0;
  for (const auto& [s, label] : scored) (label ? pos : neg) += 1;
  if (pos == 0 || neg == 0)
    throw std::invalid_argument("auc: needs both classes");

  std::vector<std::pair<double, int>> sorted(scored);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) ++j;
    double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t k = i; k < j; ++k)
      if (sorted[k].second) rank_sum_pos += avg_rank;
    i = j;
  }
  double p = static_cast<double>(pos), q = static_cast<double>(neg);
  return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * q);
}

}  // namespace ecne
