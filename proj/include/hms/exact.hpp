// Copyright 2026 The HMS Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Optimal heat map sorting for a small number of clusters.
//
// Under the box predicate a cluster survives an ordering iff it is covered by
// its own color, its points form an interval of the column order and its
// dimensions form an interval of the row order. The two axes are independent,
// so the optimum is the largest family of covered clusters whose point sets
// and dimension sets are both consecutive-ones realizable. Families are tried
// largest first and, within one size, in lexicographic order of cluster
// positions; the first realizable one wins. This covers every (cluster order,
// dimension-block order) pair of the k!^2 block search space.

#ifndef HMS_EXACT_HPP_
#define HMS_EXACT_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hms/consecutive.hpp"
#include "hms/error.hpp"
#include "hms/metrics.hpp"
#include "hms/model.hpp"

namespace hms {

struct ExactLimits {
  std::size_t min_cluster_size = 1;  // in points
  std::size_t max_clusters = 8;
  double time_budget_seconds = 0.0;  // 0 disables the check
  // Bound on (max_clusters!)^2.
  std::uint64_t enumeration_ceiling = 1'625'702'400ULL;  // (8!)^2
  std::size_t max_atoms = interval::kDefaultMaxAtoms;
};

struct ExactResult {
  OrderingSolution solution;
  MetricsReport metrics;
  Clustering kept;  // clusters that passed the size filter
  std::uint64_t search_space = 0;  // (k!)^2 for k kept clusters
  std::uint64_t families_examined = 0;
  bool truncated = false;
};

namespace detail {

inline std::uint64_t factorial_saturating(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > std::numeric_limits<std::uint64_t>::max() / i) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    f *= i;
  }
  return f;
}

inline std::uint64_t square_saturating(std::uint64_t v) {
  if (v != 0 && v > std::numeric_limits<std::uint64_t>::max() / v) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return v * v;
}

// Next k-combination of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Clusters in order of their leftmost displayed point (ties by id).
inline std::vector<ClusterId> cluster_order_of(const Clustering& clustering,
                                               const OrderingSolution& s) {
  const auto cpos = s.col_positions();
  std::vector<std::pair<Index, ClusterId>> keyed;
  for (const Cluster& c : clustering) {
    Index lo = cpos[c.points.front()];
    for (Index p : c.points) lo = std::min(lo, cpos[p]);
    keyed.emplace_back(lo, c.id);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<ClusterId> out;
  for (const auto& [lo, id] : keyed) out.push_back(id);
  return out;
}

inline ExactResult solve_exact(const LabeledMatrix& m,
                               const Clustering& clustering,
                               const ExactLimits& limits,
                               RhoRule rule = RhoRule::kPointCount) {
  clustering.check_bounds(m);
  if (detail::square_saturating(detail::factorial_saturating(
          limits.max_clusters)) > limits.enumeration_ceiling) {
    throw Error(ErrorKind::kParameter,
                "max_clusters! squared exceeds the enumeration ceiling");
  }
  std::vector<Cluster> kept;
  for (const Cluster& c : clustering) {
    if (c.points.size() >= limits.min_cluster_size) kept.push_back(c);
  }
  if (kept.empty()) {
    throw Error(ErrorKind::kEmptyAfterFilter,
                "no cluster has at least " +
                    std::to_string(limits.min_cluster_size) + " points");
  }
  if (kept.size() > limits.max_clusters) {
    throw Error(ErrorKind::kTooManyClusters,
                std::to_string(kept.size()) + " clusters survive the filter, " +
                    "limit is " + std::to_string(limits.max_clusters));
  }

  ExactResult result;
  result.kept = Clustering(std::move(kept));
  const Clustering& ks = result.kept;
  const std::size_t k = ks.size();
  result.search_space =
      detail::square_saturating(detail::factorial_saturating(k));

  std::vector<std::size_t> covered;
  for (std::size_t i = 0; i < k; ++i) {
    if (cluster_covered(m, ks[i])) covered.push_back(i);
  }

  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (limits.time_budget_seconds <= 0.0) return false;
    const std::chrono::duration<double> spent =
        std::chrono::steady_clock::now() - start;
    return spent.count() > limits.time_budget_seconds;
  };

  interval::ConsecutiveOnes engine(limits.max_atoms);
  std::optional<std::vector<Index>> best_cols, best_rows;
  const std::size_t c = covered.size();
  for (std::size_t size = c; size > 0 && !best_cols; --size) {
    std::vector<std::size_t> comb(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    do {
      if (out_of_time()) {
        result.truncated = true;
        break;
      }
      ++result.families_examined;
      std::vector<const std::vector<Index>*> points, dims;
      for (std::size_t i : comb) {
        points.push_back(&ks[covered[i]].points);
        dims.push_back(&ks[covered[i]].dims);
      }
      auto cols = interval::arrange(m.cols(), points, engine);
      if (!cols) continue;
      auto rows = interval::arrange(m.rows(), dims, engine);
      if (!rows) continue;
      best_cols = std::move(cols);
      best_rows = std::move(rows);
      break;
    } while (detail::next_combination(comb, c));
    if (result.truncated) break;
  }

  result.solution = OrderingSolution::identity(m.rows(), m.cols());
  if (best_cols) {
    result.solution.col_perm = std::move(*best_cols);
    result.solution.row_perm = std::move(*best_rows);
  }
  result.solution.cluster_order = cluster_order_of(ks, result.solution);
  result.metrics = compute_metrics(m, ks, result.solution, rule);
  return result;
}

// Smallest number of clusters whose point sets cover every column that
// belongs to some cluster. Exhaustive over cluster subsets.
inline std::size_t solve_exact_cover(const LabeledMatrix& m,
                                     const Clustering& clustering) {
  clustering.check_bounds(m);
  const std::size_t k = clustering.size();
  if (k > 24) {
    throw Error(ErrorKind::kTooManyClusters, "cover search is limited to 24 clusters");
  }
  std::vector<bool> target(m.cols(), false);
  for (const Cluster& c : clustering) {
    for (Index p : c.points) target[p] = true;
  }
  for (std::size_t size = 1; size <= k; ++size) {
    std::vector<std::size_t> comb(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    do {
      std::vector<bool> hit(m.cols(), false);
      for (std::size_t i : comb) {
        for (Index p : clustering[i].points) hit[p] = true;
      }
      if (hit == target) return size;
    } while (detail::next_combination(comb, k));
  }
  return 0;
}

// Exhaustive search over all column orders of n <= 10 columns. `score` maps
// a column order to a count; the first order reaching the maximum (in
// lexicographic permutation order) is returned. Stops early at `target`.
template <class Score>
std::pair<std::vector<Index>, std::size_t> best_column_order(
    Index n, Score&& score,
    std::size_t target = std::numeric_limits<std::size_t>::max()) {
  if (n > 10) {
    throw Error(ErrorKind::kBudgetExceeded,
                "exhaustive column search is limited to 10 columns");
  }
  std::vector<Index> sigma(n);
  for (Index i = 0; i < n; ++i) sigma[i] = i;
  std::vector<Index> best = sigma;
  std::size_t best_score = 0;
  bool first = true;
  do {
    const std::size_t s = score(sigma);
    if (first || s > best_score) {
      best_score = s;
      best = sigma;
      first = false;
      if (best_score >= target) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return {best, best_score};
}

}  // namespace hms

#endif  // HMS_EXACT_HPP_
