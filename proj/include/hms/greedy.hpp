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

// f1*f2 approximation: make the clustering disjoint by keeping every point
// only in its lowest-id cluster, merge clusters that share a dimension, and
// emit a maximal ordering of the resulting disjoint, dimension-disjoint
// clustering.

#ifndef HMS_GREEDY_HPP_
#define HMS_GREEDY_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "hms/consecutive.hpp"
#include "hms/error.hpp"
#include "hms/metrics.hpp"
#include "hms/model.hpp"
#include "hms/union_find.hpp"

namespace hms {

inline Clustering assign_lexicographic(const Clustering& clustering) {
  std::vector<std::size_t> by_id(clustering.size());
  for (std::size_t i = 0; i < by_id.size(); ++i) by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) {
    return clustering[a].id < clustering[b].id;
  });
  std::map<Index, bool> taken;
  std::vector<Cluster> out(clustering.clusters());
  for (std::size_t i : by_id) {
    std::vector<Index> mine;
    for (Index p : clustering[i].points) {
      if (!taken[p]) {
        taken[p] = true;
        mine.push_back(p);
      }
    }
    out[i].points = std::move(mine);
  }
  std::erase_if(out, [](const Cluster& c) { return c.points.empty(); });
  return Clustering(std::move(out));
}

// Clusters connected through shared dimensions collapse into one cluster
// carrying the smallest id (and that cluster's color).
inline Clustering merge_shared_dimensions(const Clustering& clustering) {
  const std::size_t k = clustering.size();
  DisjointSets sets(k);
  std::map<Index, std::size_t> owner;
  for (std::size_t i = 0; i < k; ++i) {
    for (Index d : clustering[i].dims) {
      auto [it, inserted] = owner.emplace(d, i);
      if (!inserted) sets.unite(it->second, i);
    }
  }
  std::map<std::size_t, std::size_t> lead;  // root -> member with lowest id
  for (std::size_t i = 0; i < k; ++i) {
    auto [it, inserted] = lead.emplace(sets.find(i), i);
    if (!inserted && clustering[i].id < clustering[it->second].id) {
      it->second = i;
    }
  }
  std::map<std::size_t, Cluster> merged;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t root = sets.find(i);
    auto [it, inserted] = merged.emplace(root, Cluster{});
    Cluster& m = it->second;
    if (inserted) {
      const Cluster& head = clustering[lead[root]];
      m.id = head.id;
      m.color = head.color;
    }
    const Cluster& c = clustering[i];
    m.points.insert(m.points.end(), c.points.begin(), c.points.end());
    m.dims.insert(m.dims.end(), c.dims.begin(), c.dims.end());
  }
  std::vector<Cluster> out;
  for (auto& [root, c] : merged) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(),
            [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
  return Clustering(std::move(out));
}

namespace detail {

// Rows on which two columns hold the same value, background included.
inline std::size_t hamming_similarity(const LabeledMatrix& m, Index a,
                                      Index b) {
  auto x = m.column(a);
  auto y = m.column(b);
  std::size_t shared = 0, agree = 0, i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].idx < y[j].idx) {
      ++i;
    } else if (y[j].idx < x[i].idx) {
      ++j;
    } else {
      ++shared;
      if (x[i].color == y[j].color) ++agree;
      ++i;
      ++j;
    }
  }
  const std::size_t differ = x.size() + y.size() - shared - agree;
  return m.rows() - differ;
}

}  // namespace detail


// Maximal ordering for a disjoint, dimension-disjoint clustering. Every
// cluster becomes one contiguous block of rows and of columns.
//
// Blocks: the first is the one holding the point with the most nonzeros
// (lowest index on ties); each next block is the one whose first column is
// most similar to the last column placed. Columns outside every cluster
// follow, each the most similar remaining one to its predecessor.
//
// Inside a block: `refine`, when given, is the overlapping clustering the
// blocks came from. Its covered clusters lying wholly inside the block are
// taken in id order and kept whenever the kept ones can still all be
// intervals on both axes; rows and columns of the block follow that layout,
// and the block's remaining columns are chained by similarity.
inline OrderingSolution maximal_solution(const LabeledMatrix& m,
                                         const Clustering& clustering,
                                         const Clustering* refine = nullptr,
                                         std::size_t max_atoms = 16) {
  clustering.check_bounds(m);
  const auto fs = f_stats(clustering);
  if (!clustering.empty() && (fs.f1 > 1 || fs.f2 > 1)) {
    throw Error(ErrorKind::kInvalidInput,
                "maximal_solution needs a disjoint, dimension-disjoint "
                "clustering");
  }
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t k = clustering.size();
  std::vector<std::size_t> block_of_col(m.cols(), kNone), block_of_row(m.rows(), kNone);
  for (std::size_t b = 0; b < k; ++b) {
    for (Index p : clustering[b].points) block_of_col[p] = b;
    for (Index d : clustering[b].dims) block_of_row[d] = b;
  }

  // Appends to `out` the columns of `pool`, starting from `pool`'s first
  // element unless `prev` is given, each the most similar to the previous.
  auto chain = [&](std::vector<Index> pool, std::optional<Index> prev,
                   std::vector<Index>& out) {
    std::vector<bool> used(pool.size(), false);
    for (std::size_t step = 0; step < pool.size(); ++step) {
      std::size_t pick = kNone, best = 0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        const std::size_t sim = prev ? detail::hamming_similarity(m, *prev, pool[i]) : 0;
        if (pick == kNone || sim > best) {
          pick = i;
          best = sim;
        }
      }
      used[pick] = true;
      out.push_back(pool[pick]);
      prev = pool[pick];
    }
  };

  // Per-block layout: rows and columns in display order.
  std::vector<std::vector<Index>> block_rows(k), block_cols(k);
  interval::ConsecutiveOnes engine(max_atoms);
  for (std::size_t b = 0; b < k; ++b) {
    const Cluster& block = clustering[b];
    std::vector<const Cluster*> kept;
    std::vector<std::vector<Index>> pts, dims;  // block-local indices
    std::optional<std::vector<Index>> col_layout, row_layout;
    auto local = [](const std::vector<Index>& universe,
                    const std::vector<Index>& v) {
      std::vector<Index> out;
      for (Index x : v) {
        out.push_back(static_cast<Index>(
            std::lower_bound(universe.begin(), universe.end(), x) - universe.begin()));
      }
      return out;
    };
    if (refine != nullptr) {
      for (const Cluster& c : *refine) {
        if (kept.size() == 64) break;
        if (!std::includes(block.points.begin(), block.points.end(),
                           c.points.begin(), c.points.end()) ||
            !std::includes(block.dims.begin(), block.dims.end(), c.dims.begin(),
                           c.dims.end()) ||
            !cluster_covered(m, c)) {
          continue;
        }
        pts.push_back(local(block.points, c.points));
        dims.push_back(local(block.dims, c.dims));
        std::vector<const std::vector<Index>*> pp, dp;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          pp.push_back(&pts[i]);
          dp.push_back(&dims[i]);
        }
        std::optional<std::vector<Index>> cols, rows;
        try {
          cols = interval::arrange(static_cast<Index>(block.points.size()), pp, engine);
          if (cols) {
            rows = interval::arrange(static_cast<Index>(block.dims.size()), dp, engine);
          }
        } catch (const Error&) {
          cols.reset();  // over the atom budget: leave this cluster out
        }
        if (cols && rows) {
          kept.push_back(&c);
          col_layout = std::move(cols);
          row_layout = std::move(rows);
        } else {
          pts.pop_back();
          dims.pop_back();
        }
      }
    }
    std::vector<bool> in_kept(block.points.size(), false);
    for (const auto& s : pts) {
      for (Index i : s) in_kept[i] = true;
    }
    std::vector<Index> rest;
    if (col_layout) {
      for (Index i : *col_layout) {
        if (in_kept[i]) {
          block_cols[b].push_back(block.points[i]);
        } else {
          rest.push_back(block.points[i]);
        }
      }
      for (Index i : *row_layout) block_rows[b].push_back(block.dims[i]);
    } else {
      rest = block.points;
      block_rows[b] = block.dims;
    }
    if (!rest.empty()) {
      // Without a layout, start from the block's densest column.
      std::optional<Index> prev;
      if (!block_cols[b].empty()) {
        prev = block_cols[b].back();
      } else {
        std::stable_sort(rest.begin(), rest.end(), [&](Index x, Index y) {
          return m.column(x).size() > m.column(y).size();
        });
      }
      chain(std::move(rest), prev, block_cols[b]);
    }
  }

  OrderingSolution s;
  std::vector<bool> block_used(k, false);
  std::optional<Index> last;
  std::vector<ClusterId> order;
  if (k > 0) {
    Index densest = 0;
    for (Index c = 1; c < m.cols(); ++c) {
      if (m.column(c).size() > m.column(densest).size()) densest = c;
    }
    std::size_t next = block_of_col[densest] == kNone ? 0 : block_of_col[densest];
    for (std::size_t step = 0; step < k; ++step) {
      if (step > 0) {
        std::size_t best = 0;
        next = kNone;
        for (std::size_t b = 0; b < k; ++b) {
          if (block_used[b]) continue;
          const std::size_t sim =
              detail::hamming_similarity(m, *last, block_cols[b].front());
          if (next == kNone || sim > best) {
            next = b;
            best = sim;
          }
        }
      }
      block_used[next] = true;
      order.push_back(clustering[next].id);
      s.col_perm.insert(s.col_perm.end(), block_cols[next].begin(),
                        block_cols[next].end());
      last = s.col_perm.back();
    }
  }
  std::vector<Index> loose;
  for (Index c = 0; c < m.cols(); ++c) {
    if (block_of_col[c] == kNone) loose.push_back(c);
  }
  if (!loose.empty() && !last) {
    std::stable_sort(loose.begin(), loose.end(), [&](Index x, Index y) {
      return m.column(x).size() > m.column(y).size();
    });
  }
  chain(std::move(loose), last, s.col_perm);

  for (std::size_t b = 0; b < k; ++b) {
    s.row_perm.insert(s.row_perm.end(), block_rows[b].begin(), block_rows[b].end());
  }
  for (Index r = 0; r < m.rows(); ++r) {
    if (block_of_row[r] == kNone) s.row_perm.push_back(r);
  }
  s.cluster_order = std::move(order);
  return s;
}

// Covered clusters taken in id order, each kept when the kept ones can
// still all be intervals on both axes at once. Clusters that would exceed
// the atom budget are skipped.
inline OrderingSolution maximal_family_solution(const LabeledMatrix& m,
                                                const Clustering& clustering,
                                                std::size_t max_atoms = 16) {
  clustering.check_bounds(m);
  interval::ConsecutiveOnes engine(max_atoms);
  std::vector<const std::vector<Index>*> pts, dims;
  OrderingSolution best = OrderingSolution::identity(m.rows(), m.cols());
  for (const Cluster& c : clustering) {
    if (pts.size() == 64) break;
    if (!cluster_covered(m, c)) continue;
    pts.push_back(&c.points);
    dims.push_back(&c.dims);
    std::optional<std::vector<Index>> cols, rows;
    try {
      cols = interval::arrange(m.cols(), pts, engine);
      if (cols) rows = interval::arrange(m.rows(), dims, engine);
    } catch (const Error&) {
      cols.reset();
    }
    if (cols && rows) {
      best.col_perm = std::move(*cols);
      best.row_perm = std::move(*rows);
    } else {
      pts.pop_back();
      dims.pop_back();
    }
  }
  return best;
}

struct GreedyResult {
  OrderingSolution solution;
  Clustering transformed;  // disjoint and dimension-disjoint
  MetricsReport metrics;   // against the input clustering
  bool family_layout = false;  // the maximal-family layout won
};

// Runs the disjoint/merge pipeline and the maximal-family layout and keeps
// whichever preserves more input clusters (the pipeline on ties).
inline GreedyResult greedy_approx(const LabeledMatrix& m,
                                  const Clustering& clustering,
                                  RhoRule rule = RhoRule::kPointCount) {
  clustering.check_bounds(m);
  GreedyResult r;
  r.transformed = merge_shared_dimensions(assign_lexicographic(clustering));
  r.solution = maximal_solution(m, r.transformed, &clustering);
  r.metrics = compute_metrics(m, clustering, r.solution, rule);
  auto family = maximal_family_solution(m, clustering);
  if (preserved_clusters(m, clustering, family).size() > r.metrics.preserved.size()) {
    r.solution = std::move(family);
    r.metrics = compute_metrics(m, clustering, r.solution, rule);
    r.family_layout = true;
  }
  return r;
}

}  // namespace hms

#endif  // HMS_GREEDY_HPP_
