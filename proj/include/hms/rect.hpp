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

// Disjoint rectangular clusters with outliers: DBSCAN, single-linkage radius
// selection, cosine k-means, k-medoids and the median-window interval
// extractor.

#ifndef HMS_RECT_HPP_
#define HMS_RECT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hms/error.hpp"
#include "hms/model.hpp"
#include "hms/union_find.hpp"

namespace hms {

using Point = std::vector<double>;

enum class Metric { kEuclidean, kLinf };

inline double distance(const Point& a, const Point& b, Metric metric) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    acc = metric == Metric::kLinf ? std::max(acc, d) : acc + d * d;
  }
  return metric == Metric::kLinf ? acc : std::sqrt(acc);
}

// Nonzero cells as (column, row) points.
inline std::vector<Point> cell_points(const LabeledMatrix& m) {
  std::vector<Point> out;
  out.reserve(m.nnz());
  for (const Cell& c : m.cells()) {
    out.push_back({static_cast<double>(c.col), static_cast<double>(c.row)});
  }
  return out;
}

// Smallest radius at which single linkage leaves exactly k components: the
// k-th largest edge of a minimum spanning tree, 0 when k equals the point
// count.
inline double single_linkage_radius(const std::vector<Point>& points,
                                    std::size_t k,
                                    Metric metric = Metric::kEuclidean) {
  const std::size_t n = points.size();
  if (k == 0 || n == 0 || k > n) {
    throw Error(ErrorKind::kParameter,
                "single linkage needs 1 <= k <= number of points");
  }
  if (k == n) return 0.0;
  // Prim on the complete graph.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  std::vector<double> edges;
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
    }
    in_tree[u] = true;
    if (step > 0) edges.push_back(best[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v]) best[v] = std::min(best[v], distance(points[u], points[v], metric));
    }
  }
  std::sort(edges.begin(), edges.end(), std::greater<>());
  return edges[k - 1];
}

struct DbscanConfig {
  double radius = 10.0;
  std::size_t min_points = 1;  // neighbors within radius, the point included
  Metric metric = Metric::kLinf;

  void validate() const {
    if (!(radius > 0.0)) throw Error(ErrorKind::kParameter, "radius must be positive");
    if (min_points < 1) throw Error(ErrorKind::kParameter, "min_points must be >= 1");
  }
};

struct DbscanResult {
  std::vector<std::int64_t> labels;  // per input point, -1 for outliers
  std::size_t num_clusters = 0;
  std::size_t outliers = 0;
};

namespace detail {

// Neighbor lists (self included) for points sorted into canonical order.
inline std::vector<std::vector<std::size_t>> neighbor_lists(
    const std::vector<Point>& pts, const DbscanConfig& cfg) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> nbr(n);
  if (n > 0 && pts[0].size() == 2) {
    // Uniform grid with cell side = radius; neighbors sit in adjacent cells.
    auto key = [&](double x, double y) {
      const auto gx = static_cast<std::int64_t>(std::floor(x / cfg.radius));
      const auto gy = static_cast<std::int64_t>(std::floor(y / cfg.radius));
      return std::pair(gx, gy);
    };
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < n; ++i) grid[key(pts[i][0], pts[i][1])].push_back(i);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [gx, gy] = key(pts[i][0], pts[i][1]);
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          auto it = grid.find({gx + dx, gy + dy});
          if (it == grid.end()) continue;
          for (std::size_t j : it->second) {
            if (distance(pts[i], pts[j], cfg.metric) <= cfg.radius) nbr[i].push_back(j);
          }
        }
      }
      std::sort(nbr[i].begin(), nbr[i].end());
    }
    return nbr;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (distance(pts[i], pts[j], cfg.metric) <= cfg.radius) nbr[i].push_back(j);
    }
  }
  return nbr;
}

}  // namespace detail

// Core points have at least min_points neighbors within the radius. Clusters
// are connected components of core points; a border point joins the cluster
// of its first core neighbor in canonical (lexicographic coordinate) order.
// Clusters with a single member are reported as outliers. Cluster ids follow
// the canonical order of each cluster's first member, so the result does not
// depend on input order.
inline DbscanResult dbscan(const std::vector<Point>& input,
                           const DbscanConfig& cfg) {
  cfg.validate();
  const std::size_t n = input.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return input[a] < input[b];
  });
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = input[order[i]];

  const auto nbr = detail::neighbor_lists(pts, cfg);
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = nbr[i].size() >= cfg.min_points;
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    for (std::size_t j : nbr[i]) {
      if (core[j]) sets.unite(i, j);
    }
  }
  std::vector<std::int64_t> root(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) {
      root[i] = static_cast<std::int64_t>(sets.find(i));
      continue;
    }
    for (std::size_t j : nbr[i]) {
      if (core[j]) {
        root[i] = static_cast<std::int64_t>(sets.find(j));
        break;
      }
    }
  }
  std::map<std::int64_t, std::size_t> size;
  for (auto r : root) {
    if (r >= 0) ++size[r];
  }
  std::map<std::int64_t, std::int64_t> label_of;
  DbscanResult res;
  res.labels.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t label = -1;
    if (root[i] >= 0 && size[root[i]] > 1) {
      auto [it, inserted] = label_of.emplace(
          root[i], static_cast<std::int64_t>(label_of.size()));
      label = it->second;
    }
    res.labels[order[i]] = label;
    if (label < 0) ++res.outliers;
  }
  res.num_clusters = label_of.size();
  return res;
}

struct KMeansResult {
  std::vector<std::size_t> assignment;
  std::vector<double> objective;  // total cosine distance after each assignment
  std::size_t iterations = 0;
};

namespace detail {

inline double norm(const Point& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double cosine_distance(const Point& a, double na, const Point& b,
                              double nb) {
  if (na == 0.0 || nb == 0.0) return 1.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return 1.0 - dot / (na * nb);
}

}  // namespace detail

// Spherical k-means. Centers start from a seeded farthest-first traversal of
// the nonzero vectors; each center is then the normalized mean of its members'
// unit vectors. Zero vectors join the lowest-numbered nonempty group and do
// not contribute to the objective.
inline KMeansResult kmeans_merge(const std::vector<Point>& vectors,
                                 std::size_t k, std::uint64_t seed,
                                 std::size_t max_iterations = 100) {
  const std::size_t n = vectors.size();
  if (k == 0 || k > n) {
    throw Error(ErrorKind::kParameter, "k-means needs 1 <= k <= number of vectors");
  }
  std::vector<double> norms(n);
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = detail::norm(vectors[i]);
    if (norms[i] > 0.0) nonzero.push_back(i);
  }
  KMeansResult res;
  res.assignment.assign(n, 0);
  if (nonzero.empty()) return res;

  std::mt19937_64 rng(seed);
  std::vector<Point> centers;
  std::vector<double> cnorm;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t next = nonzero[rng() % nonzero.size()];
  while (centers.size() < k) {
    centers.push_back(vectors[next]);
    cnorm.push_back(norms[next]);
    std::optional<std::size_t> far;
    for (std::size_t i : nonzero) {
      nearest[i] = std::min(
          nearest[i], detail::cosine_distance(vectors[i], norms[i],
                                              centers.back(), cnorm.back()));
      if (!far || nearest[i] > nearest[*far]) far = i;
    }
    if (centers.size() == std::min(k, nonzero.size())) break;
    next = *far;
  }

  const std::size_t dim = vectors[0].size();
  for (std::size_t it = 0; it < max_iterations; ++it) {
    bool changed = it == 0;
    double total = 0.0;
    for (std::size_t i : nonzero) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d =
            detail::cosine_distance(vectors[i], norms[i], centers[c], cnorm[c]);
        if (d < bd) {
          bd = d;
          best = c;
        }
      }
      if (res.assignment[i] != best) changed = true;
      res.assignment[i] = best;
      total += bd;
    }
    res.objective.push_back(total);
    res.iterations = it + 1;
    if (!changed) break;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      Point mean(dim, 0.0);
      bool any = false;
      for (std::size_t i : nonzero) {
        if (res.assignment[i] != c) continue;
        any = true;
        for (std::size_t d = 0; d < dim; ++d) mean[d] += vectors[i][d] / norms[i];
      }
      const double nm = detail::norm(mean);
      if (!any || nm == 0.0) continue;
      centers[c] = std::move(mean);
      cnorm[c] = nm;
    }
  }
  std::size_t lowest = centers.size();
  for (std::size_t i : nonzero) lowest = std::min(lowest, res.assignment[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (norms[i] == 0.0) res.assignment[i] = lowest;
  }
  return res;
}

struct KMedoidsResult {
  std::vector<std::size_t> medoids;       // point indices
  std::vector<std::int64_t> assignment;   // medoid slot, -1 for outliers
  double cost = 0.0;                      // sum of nearest-medoid distances
  std::size_t outliers = 0;
};

// PAM: seeded random initial medoids, then best-improvement swaps until no
// swap lowers the cost. Points farther than `radius` from every medoid are
// outliers (they still count towards the cost).
inline KMedoidsResult kmedoids(const std::vector<Point>& pts, std::size_t k,
                               double radius, std::uint64_t seed,
                               Metric metric = Metric::kEuclidean,
                               std::size_t max_iterations = 100) {
  const std::size_t n = pts.size();
  if (k == 0 || k > n) {
    throw Error(ErrorKind::kParameter, "k-medoids needs 1 <= k <= number of points");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<std::size_t> med(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<bool> is_med(n, false);
  for (auto m : med) is_med[m] = true;

  std::vector<double> d1(n), d2(n);
  std::vector<std::size_t> near(n);
  auto refresh = [&] {
    for (std::size_t j = 0; j < n; ++j) {
      d1[j] = d2[j] = std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < k; ++s) {
        const double d = distance(pts[j], pts[med[s]], metric);
        if (d < d1[j]) {
          d2[j] = d1[j];
          d1[j] = d;
          near[j] = s;
        } else if (d < d2[j]) {
          d2[j] = d;
        }
      }
    }
  };
  refresh();
  for (std::size_t it = 0; it < max_iterations; ++it) {
    double best_delta = -1e-12;
    std::optional<std::pair<std::size_t, std::size_t>> swap;
    for (std::size_t h = 0; h < n; ++h) {
      if (is_med[h]) continue;
      std::vector<double> delta(k, 0.0);
      double shared = 0.0;  // gain for points that move to h regardless of slot
      for (std::size_t j = 0; j < n; ++j) {
        const double dh = distance(pts[j], pts[h], metric);
        shared += std::min(dh, d1[j]) - d1[j];
        // Removing the nearest medoid of j changes j's cost differently.
        delta[near[j]] += std::min(dh, d2[j]) - std::min(dh, d1[j]);
      }
      for (std::size_t s = 0; s < k; ++s) {
        const double total = shared + delta[s];
        if (total < best_delta) {
          best_delta = total;
          swap = std::pair(s, h);
        }
      }
    }
    if (!swap) break;
    is_med[med[swap->first]] = false;
    med[swap->first] = swap->second;
    is_med[swap->second] = true;
    refresh();
  }

  KMedoidsResult res;
  res.medoids = med;
  res.assignment.assign(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    res.cost += d1[j];
    if (d1[j] <= radius) {
      res.assignment[j] = static_cast<std::int64_t>(near[j]);
    } else {
      ++res.outliers;
    }
  }
  return res;
}

// Lower median of each window of `window` consecutive values centered on the
// position; windows are truncated at both ends.
inline std::vector<std::int64_t> sliding_median(
    const std::vector<std::int64_t>& seq, std::size_t window) {
  std::vector<std::int64_t> out(seq.size());
  const std::size_t half = window / 2;
  std::vector<std::int64_t> buf;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(seq.size(), i + (window - half));
    buf.assign(seq.begin() + static_cast<std::ptrdiff_t>(lo),
               seq.begin() + static_cast<std::ptrdiff_t>(hi));
    const std::size_t mid = (buf.size() - 1) / 2;
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid),
                     buf.end());
    out[i] = buf[mid];
  }
  return out;
}

struct Interval {
  Index lo = 0;
  Index hi = 0;  // inclusive

  bool contains(Index v) const { return v >= lo && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct IntervalModel {
  std::size_t window = 11;
  double dominance = 0.9;
  std::size_t min_cluster_size = 5;
  std::map<ClusterId, Interval> x;  // column intervals
  std::map<ClusterId, Interval> y;  // row intervals
};

struct IntervalFit {
  IntervalModel model;
  std::vector<bool> outlier;  // aligned with matrix.cells()
  std::size_t outliers = 0;
  std::size_t kept = 0;
  double rho = 0.0;
};

namespace detail {

struct AxisFit {
  std::map<ClusterId, Interval> intervals;
  std::vector<bool> dominant;  // per cell
};

inline AxisFit fit_axis(const LabeledMatrix& m,
                        const std::vector<ClusterId>& labels, bool columns,
                        const IntervalModel& model) {
  const Index len = columns ? m.cols() : m.rows();
  if (model.window > len) {
    throw Error(ErrorKind::kParameter,
                "median window " + std::to_string(model.window) +
                    " is longer than the axis (" + std::to_string(len) + ")");
  }
  const auto cells = m.cells();
  std::vector<std::map<ClusterId, std::size_t>> counts(len);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ++counts[columns ? cells[i].col : cells[i].row][labels[i]];
  }
  std::vector<Index> coords;
  std::vector<std::int64_t> majority;
  std::vector<std::size_t> max_count(len, 0);
  for (Index v = 0; v < len; ++v) {
    if (counts[v].empty()) continue;
    ClusterId best = 0;
    for (const auto& [label, c] : counts[v]) {
      if (c > max_count[v]) {
        max_count[v] = c;
        best = label;
      }
    }
    coords.push_back(v);
    majority.push_back(best);
  }
  const auto smooth = sliding_median(majority, model.window);

  AxisFit fit;
  std::map<ClusterId, std::pair<std::size_t, std::size_t>> longest;  // start, length
  for (std::size_t i = 0; i < smooth.size();) {
    std::size_t j = i;
    while (j < smooth.size() && smooth[j] == smooth[i]) ++j;
    auto& cur = longest[smooth[i]];
    if (j - i > cur.second) cur = {i, j - i};
    i = j;
  }
  for (const auto& [label, run] : longest) {
    if (run.second < model.min_cluster_size) continue;
    fit.intervals[label] = {coords[run.first], coords[run.first + run.second - 1]};
  }
  fit.dominant.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Index v = columns ? cells[i].col : cells[i].row;
    fit.dominant[i] = static_cast<double>(counts[v][labels[i]]) >=
                      model.dominance * static_cast<double>(max_count[v]);
  }
  return fit;
}

}  // namespace detail

// Per axis: majority label per coordinate (counting cells), sliding median
// over the non-empty coordinates, and each label's longest constant run as
// its interval. A cell is kept when it lies in its own label's box and its
// label holds at least `dominance` of the top count at both of its
// coordinates. rho = kept / nonzeros.
inline IntervalFit extract_intervals(const LabeledMatrix& m,
                                     const std::vector<ClusterId>& labels,
                                     IntervalModel model = {}) {
  if (labels.size() != m.nnz()) {
    throw Error(ErrorKind::kInvalidInput, "one label per nonzero cell is required");
  }
  if (model.window == 0 || model.dominance < 0.0 || model.dominance > 1.0) {
    throw Error(ErrorKind::kParameter, "invalid interval model");
  }
  const auto fx = detail::fit_axis(m, labels, true, model);
  const auto fy = detail::fit_axis(m, labels, false, model);
  IntervalFit out;
  model.x = fx.intervals;
  model.y = fy.intervals;
  out.model = std::move(model);
  const auto cells = m.cells();
  out.outlier.assign(cells.size(), true);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto ix = fx.intervals.find(labels[i]);
    auto iy = fy.intervals.find(labels[i]);
    if (ix == fx.intervals.end() || iy == fy.intervals.end()) continue;
    if (!ix->second.contains(cells[i].col) || !iy->second.contains(cells[i].row)) continue;
    if (!fx.dominant[i] || !fy.dominant[i]) continue;
    out.outlier[i] = false;
    ++out.kept;
  }
  out.outliers = cells.size() - out.kept;
  if (cells.empty()) {
    throw Error(ErrorKind::kUndefinedRatio, "matrix has no nonzero cells");
  }
  out.rho = static_cast<double>(out.kept) / static_cast<double>(cells.size());
  return out;
}

inline std::vector<ClusterId> color_labels(const LabeledMatrix& m) {
  std::vector<ClusterId> out;
  out.reserve(m.nnz());
  for (const Cell& c : m.cells()) out.push_back(c.color);
  return out;
}

struct RectConfig {
  std::size_t k = 2;                  // groups per axis
  std::optional<double> radius;       // DBSCAN radius; single linkage if absent
  std::size_t min_points = 1;
  std::uint64_t seed = 0;
  IntervalModel intervals;
};

struct RectResult {
  OrderingSolution solution;
  IntervalFit fit;  // on the reordered matrix, labels = colors
  double row_radius = 0.0;
  double col_radius = 0.0;
};

namespace detail {

// Single linkage -> DBSCAN -> cosine k-means over the 0/1 vectors of one axis.
// Groups are laid out by their smallest member; DBSCAN outliers go last.
inline std::vector<Index> order_rect_axis(const LabeledMatrix& m, bool columns,
                                          const RectConfig& cfg,
                                          double& radius_used) {
  const Index n = columns ? m.cols() : m.rows();
  const Index d = columns ? m.rows() : m.cols();
  std::vector<Point> vecs(n, Point(d, 0.0));
  for (const Cell& c : m.cells()) {
    if (columns) {
      vecs[c.col][c.row] = 1.0;
    } else {
      vecs[c.row][c.col] = 1.0;
    }
  }
  std::vector<Index> out;
  if (n == 0) return out;
  const std::size_t k = std::min<std::size_t>(cfg.k, n);
  radius_used = cfg.radius ? *cfg.radius
                           : single_linkage_radius(vecs, k, Metric::kEuclidean);
  DbscanConfig dc{std::max(radius_used, 1e-9), cfg.min_points, Metric::kEuclidean};
  const auto db = dbscan(vecs, dc);
  std::vector<Index> inliers, outliers;
  for (Index i = 0; i < n; ++i) (db.labels[i] >= 0 ? inliers : outliers).push_back(i);
  if (!inliers.empty()) {
    std::vector<Point> sub;
    for (Index i : inliers) sub.push_back(vecs[i]);
    const auto km = kmeans_merge(sub, std::min(k, sub.size()), cfg.seed);
    std::map<std::size_t, std::vector<Index>> groups;
    for (std::size_t i = 0; i < inliers.size(); ++i) {
      groups[km.assignment[i]].push_back(inliers[i]);
    }
    std::vector<std::vector<Index>> ordered;
    for (auto& [g, members] : groups) ordered.push_back(std::move(members));
    std::sort(ordered.begin(), ordered.end());
    for (const auto& g : ordered) out.insert(out.end(), g.begin(), g.end());
  }
  out.insert(out.end(), outliers.begin(), outliers.end());
  return out;
}

}  // namespace detail

inline RectResult rect_sort(const LabeledMatrix& m, const RectConfig& cfg) {
  RectResult r;
  r.solution.row_perm = detail::order_rect_axis(m, false, cfg, r.row_radius);
  r.solution.col_perm = detail::order_rect_axis(m, true, cfg, r.col_radius);
  const auto sorted = apply(m, r.solution);
  r.fit = extract_intervals(sorted, color_labels(sorted), cfg.intervals);
  return r;
}

struct GroupScore {
  std::size_t groups = 0;
  std::size_t outliers = 0;   // cells labeled -1
  std::size_t kept = 0;       // grouped cells carrying their group's majority color
  std::size_t recovered = 0;  // distinct colors that are some group's majority
  double rho = 0.0;           // kept / nnz
};

// Scores a grouping of the nonzero cells (one label per cell, -1 for
// outliers) against the cell colors. Majority ties go to the smaller color.
inline GroupScore score_cell_groups(const LabeledMatrix& m,
                                    const std::vector<std::int64_t>& labels) {
  if (labels.size() != m.nnz()) {
    throw Error(ErrorKind::kInvalidInput, "one label per nonzero cell is required");
  }
  if (m.nnz() == 0) throw Error(ErrorKind::kUndefinedRatio, "matrix has no nonzero cells");
  std::map<std::int64_t, std::map<Color, std::size_t>> tally;
  const auto cells = m.cells();
  GroupScore s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (labels[i] < 0) {
      ++s.outliers;
      continue;
    }
    ++tally[labels[i]][cells[i].color];
  }
  std::set<Color> majority;
  for (const auto& [g, counts] : tally) {
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    majority.insert(best->first);
    s.kept += best->second;
  }
  s.groups = tally.size();
  s.recovered = majority.size();
  s.rho = static_cast<double>(s.kept) / static_cast<double>(m.nnz());
  return s;
}

}  // namespace hms

#endif  // HMS_RECT_HPP_
