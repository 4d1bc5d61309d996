#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ecne/rng.hpp"

namespace ecne {

struct KMeansResult {
  std::vector<std::size_t> assignment;
  std::vector<std::vector<double>> centers;
  std::size_t iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding; stops when no center moves
/// more than `tol` (Euclidean) or after `max_iter` rounds. An emptied
/// cluster is reseeded with the point farthest from its center.
inline KMeansResult kmeans(const std::vector<std::vector<double>>& points,
                           std::size_t k, std::uint64_t seed,
                           double tol = 1e-6, std::size_t max_iter = 300) {
  const std::size_t n = points.size();
  if (k < 1 || k > n)
    throw std::invalid_argument("kmeans: need 1 <= k <= point count");
  const std::size_t d = points.front().size();

  auto dist2 = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double t = a[i] - b[i];
      s += t * t;
    }
    return s;
  };

  // k-means++ seeding.
  auto rng = make_stream(seed, 0x6b6d6575);
  KMeansResult res;
  res.centers.push_back(points[next_index(rng, n)]);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  while (res.centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = std::min(best[i], dist2(points[i], res.centers.back()));
      total += best[i];
    }
    std::size_t chosen = 0;
    if (total > 0.0) {
      double target = next_double(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += best[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = next_index(rng, n);  // all points coincide with a center
    }
    res.centers.push_back(points[chosen]);
  }

  res.assignment.assign(n, 0);
  std::vector<std::size_t> count(k, 0);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    for (std::size_t i = 0; i < n; ++i) {
      double bd = std::numeric_limits<double>::infinity();
      std::size_t bc = 0;
      for (std::size_t c = 0; c < k; ++c) {
        double t = dist2(points[i], res.centers[c]);
        if (t < bd) {
          bd = t;
          bc = c;
        }
      }
      res.assignment[i] = bc;
    }

    std::vector<std::vector<double>> next(k, std::vector<double>(d, 0.0));
    count.assign(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++count[res.assignment[i]];
      for (std::size_t j = 0; j < d; ++j)
        next[res.assignment[i]][j] += points[i][j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] == 0) {
        // farthest point from its current center
        double far_d = -1.0;
        std::size_t far_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double t = dist2(points[i], res.centers[res.assignment[i]]);
          if (t > far_d) {
            far_d = t;
            far_i = i;
          }
        }
        next[c] = points[far_i];
        count[c] = 1;
      } else {
        for (std::size_t j = 0; j < d; ++j)
          next[c][j] /= static_cast<double>(count[c]);
      }
    }

    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      shift = std::max(shift, std::sqrt(dist2(next[c], res.centers[c])));
    res.centers = std::move(next);
    if (shift < tol) break;
  }

  // Final assignment against the settled centers.
  for (std::size_t i = 0; i < n; ++i) {
    double bd = std::numeric_limits<double>::infinity();
    std::size_t bc = 0;
    for (std::size_t c = 0; c < k; ++c) {
      double t = dist2(points[i], res.centers[c]);
      if (t < bd) {
        bd = t;
        bc = c;
      }
    }
    res.assignment[i] = bc;
  }
  return res;
}

}  // namespace ecne
