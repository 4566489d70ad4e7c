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

// Brute-force reference implementations and random instance generators
// shared by the unit tests and the acceptance binary. None of these call the
// library's search code.

#ifndef HMS_TESTS_ORACLES_HPP_
#define HMS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "hms/hms.hpp"

namespace hms::oracle {

// Whether every member of `set` sits in one block of consecutive positions.
inline bool contiguous(const std::vector<Index>& set,
                       const std::vector<Index>& perm) {
  std::vector<Index> pos(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<Index>(i);
  Index lo = pos[set[0]], hi = lo;
  for (Index v : set) {
    lo = std::min(lo, pos[v]);
    hi = std::max(hi, pos[v]);
  }
  return hi - lo + 1 == set.size();
}

// Bitmasks of clusters made contiguous by some permutation of n elements.
inline std::set<std::uint32_t> achievable_masks(
    Index n, const std::vector<const std::vector<Index>*>& sets) {
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::set<std::uint32_t> out;
  do {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (contiguous(*sets[i], perm)) mask |= 1u << i;
    }
    out.insert(mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Independent coverage test: every point and every dimension of the cluster
// carries a cell of the cluster's color inside the cluster.
inline bool covered(const LabeledMatrix& m, const Cluster& c) {
  std::set<Index> pts(c.points.begin(), c.points.end());
  std::set<Index> dims(c.dims.begin(), c.dims.end());
  std::set<Index> hit_p, hit_d;
  for (const Cell& cell : m.cells()) {
    if (cell.color == c.color && pts.count(cell.col) && dims.count(cell.row)) {
      hit_p.insert(cell.col);
      hit_d.insert(cell.row);
    }
  }
  return hit_p.size() == pts.size() && hit_d.size() == dims.size();
}

// Largest number of clusters preserved by any (row, column) permutation
// pair, found by enumerating all permutations of each axis.
inline std::size_t best_preserved(const LabeledMatrix& m, const Clustering& cl) {
  std::vector<const std::vector<Index>*> pts, dims;
  std::uint32_t cov = 0;
  for (std::size_t i = 0; i < cl.size(); ++i) {
    pts.push_back(&cl[i].points);
    dims.push_back(&cl[i].dims);
    if (covered(m, cl[i])) cov |= 1u << i;
  }
  const auto cols = achievable_masks(m.cols(), pts);
  const auto rows = achievable_masks(m.rows(), dims);
  std::size_t best = 0;
  for (auto a : cols) {
    for (auto b : rows) {
      best = std::max<std::size_t>(best, std::popcount(a & b & cov));
    }
  }
  return best;
}

// Most input sets that one permutation of the elements makes contiguous.
inline std::size_t best_interval_count(Index n,
                                       const std::vector<std::vector<Index>>& sets) {
  std::vector<const std::vector<Index>*> ptrs;
  for (const auto& s : sets) ptrs.push_back(&s);
  std::size_t best = 0;
  for (auto mask : achievable_masks(n, ptrs)) {
    best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

// Union-find written out separately from the library's.
class Forest {
 public:
  explicit Forest(std::size_t n) : up_(n) { std::iota(up_.begin(), up_.end(), 0); }
  std::size_t root(std::size_t x) {
    while (up_[x] != x) x = up_[x];
    return x;
  }
  void join(std::size_t a, std::size_t b) {
    a = root(a);
    b = root(b);
    if (a != b) up_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> up_;
};

// Runs of the displayed column order where neighbors share a row holding the
// same nonzero color.
inline std::vector<std::vector<Index>> components(const LabeledMatrix& m,
                                                  const OrderingSolution& s) {
  const Index n = m.cols();
  Forest f(n);
  for (Index i = 1; i < n; ++i) {
    bool shared = false;
    for (Index r = 0; r < m.rows() && !shared; ++r) {
      const Color a = m.at(r, s.col_perm[i - 1]);
      shared = a != kBackground && a == m.at(r, s.col_perm[i]);
    }
    if (shared) f.join(i - 1, i);
  }
  std::map<std::size_t, std::vector<Index>> by_root;
  for (Index i = 0; i < n; ++i) by_root[f.root(i)].push_back(s.col_perm[i]);
  std::vector<std::vector<Index>> out;
  for (auto& [r, v] : by_root) out.push_back(std::move(v));
  return out;
}

// Quadratic DBSCAN with the library's documented semantics. Returns the
// clusters as sorted sets of input indices plus the outliers.
struct DbscanPartition {
  std::set<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> outliers;
  friend bool operator==(const DbscanPartition&, const DbscanPartition&) = default;
};

inline DbscanPartition dbscan(const std::vector<Point>& pts, double r,
                              std::size_t f, Metric metric) {
  const std::size_t n = pts.size();
  auto dist = [&](std::size_t a, std::size_t b) {
    double acc = 0;
    for (std::size_t k = 0; k < pts[a].size(); ++k) {
      const double d = std::abs(pts[a][k] - pts[b][k]);
      acc = metric == Metric::kLinf ? std::max(acc, d) : acc + d * d;
    }
    return metric == Metric::kLinf ? acc : std::sqrt(acc);
  };
  // Canonical order: by coordinates, then input index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cnt = 0;
    for (std::size_t j = 0; j < n; ++j) cnt += dist(i, j) <= r;
    core[i] = cnt >= f;
  }
  std::vector<long> comp(n, -1);
  long next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i] || comp[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    comp[i] = next;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (core[v] && comp[v] < 0 && dist(u, v) <= r) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (core[j] && dist(i, j) <= r && (best == n || rank[j] < rank[best])) best = j;
    }
    if (best < n) comp[i] = comp[best];
  }
  std::map<long, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] >= 0) groups[comp[i]].push_back(i);
  }
  DbscanPartition out;
  for (auto& [c, g] : groups) {
    if (g.size() > 1) {
      out.clusters.insert(g);
    } else {
      out.outliers.push_back(g[0]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] < 0) out.outliers.push_back(i);
  }
  std::sort(out.outliers.begin(), out.outliers.end());
  return out;
}

inline DbscanPartition partition_of(const DbscanResult& r) {
  std::map<std::int64_t, std::vector<std::size_t>> groups;
  DbscanPartition out;
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    if (r.labels[i] < 0) {
      out.outliers.push_back(i);
    } else {
      groups[r.labels[i]].push_back(i);
    }
  }
  for (auto& [l, g] : groups) out.clusters.insert(g);
  return out;
}

// Hamiltonian path by dynamic programming over vertex subsets.
inline bool has_hamiltonian_path(const GraphInstance& g) {
  const Index n = g.vertices;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : g.edges) {
    adj[u][v] = true;
    if (!g.directed) adj[v][u] = true;
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::vector<bool>> reach(1u << n, std::vector<bool>(n, false));
  for (Index v = 0; v < n; ++v) reach[1u << v][v] = true;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (Index v = 0; v < n; ++v) {
      if (!reach[s][v]) continue;
      for (Index w = 0; w < n; ++w) {
        if (!(s >> w & 1) && adj[v][w]) reach[s | 1u << w][w] = true;
      }
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (reach[full][v]) return true;
  }
  return false;
}

// Fewest sets whose union equals the union of all sets.
inline std::size_t min_set_cover(const SetCoverInstance& sc) {
  const std::size_t k = sc.sets.size();
  std::uint64_t target = 0;
  std::vector<std::uint64_t> masks(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (Index e : sc.sets[i]) masks[i] |= std::uint64_t{1} << e;
    target |= masks[i];
  }
  std::size_t best = k;
  for (std::uint32_t pick = 0; pick < (1u << k); ++pick) {
    std::uint64_t u = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (pick >> i & 1) u |= masks[i];
    }
    if (u == target) best = std::min<std::size_t>(best, std::popcount(pick));
  }
  return best;
}

// Random instance: clusters are random point/dimension subsets whose boxes
// are filled (with probability `fill`) by the cluster color; later clusters
// overwrite earlier ones; a few noise cells are sprinkled on top.
struct RandomSpec {
  Index max_rows = 8;
  Index max_cols = 8;
  std::size_t max_clusters = 4;
  Color colors = 2;
  double fill = 1.0;
  double noise = 0.05;
  bool disjoint = false;
};

inline std::vector<Index> random_subset(Index n, std::mt19937_64& rng,
                                        std::size_t max_size) {
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  std::shuffle(all.begin(), all.end(), rng);
  const std::size_t size =
      1 + rng() % std::min<std::size_t>(max_size, n);
  std::vector<Index> out(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
  std::sort(out.begin(), out.end());
  return out;
}

inline io::Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  const Index rows = 2 + static_cast<Index>(rng() % (spec.max_rows - 1));
  const Index cols = 2 + static_cast<Index>(rng() % (spec.max_cols - 1));
  const std::size_t k = 1 + rng() % spec.max_clusters;
  std::map<std::pair<Index, Index>, Color> grid;
  std::vector<Cluster> clusters;
  std::vector<bool> used_col(cols, false);
  for (std::size_t i = 0; i < k; ++i) {
    Cluster c;
    c.id = static_cast<ClusterId>(i + 1);
    c.color = 1 + static_cast<Color>(rng() % spec.colors);
    c.dims = random_subset(rows, rng, rows);
    c.points = random_subset(cols, rng, cols);
    if (spec.disjoint) {
      std::erase_if(c.points, [&](Index p) { return used_col[p]; });
      if (c.points.empty()) continue;
      for (Index p : c.points) used_col[p] = true;
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Index d : c.dims) {
      for (Index p : c.points) {
        if (u(rng) < spec.fill) grid[{d, p}] = c.color;
      }
    }
    clusters.push_back(std::move(c));
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      if (u(rng) < spec.noise) grid[{r, c}] = 1 + static_cast<Color>(rng() % spec.colors);
    }
  }
  std::vector<Cell> cells;
  for (const auto& [rc, color] : grid) cells.push_back({rc.first, rc.second, color});
  return {LabeledMatrix(rows, cols, spec.colors, std::move(cells)),
          Clustering(std::move(clusters))};
}

inline GraphInstance random_graph(std::mt19937_64& rng, Index n, double p) {
  GraphInstance g;
  g.vertices = n;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      if (u(rng) < p) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

}  // namespace hms::oracle

#endif  // HMS_TESTS_ORACLES_HPP_
