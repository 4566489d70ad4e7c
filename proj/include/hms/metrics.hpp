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

#ifndef HMS_METRICS_HPP_
#define HMS_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hms/error.hpp"
#include "hms/model.hpp"

namespace hms {

// True when columns a and b carry the same color in at least one row.
inline bool columns_agree(const LabeledMatrix& m, Index a, Index b) {
  auto x = m.column(a);
  auto y = m.column(b);
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].idx < y[j].idx) {
      ++i;
    } else if (y[j].idx < x[i].idx) {
      ++j;
    } else {
      if (x[i].color == y[j].color) return true;
      ++i;
      ++j;
    }
  }
  return false;
}

// Maximal runs of consecutive displayed columns in which every neighbouring
// pair agrees on some nonzero. Runs hold original column indices in display
// order; h is the number of runs.
inline std::vector<std::vector<Index>> connected_components(
    const LabeledMatrix& m, const OrderingSolution& order) {
  order.validate(m);
  std::vector<std::vector<Index>> runs;
  const auto& sigma = order.col_perm;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i == 0 || !columns_agree(m, sigma[i - 1], sigma[i])) runs.emplace_back();
    runs.back().push_back(sigma[i]);
  }
  return runs;
}

namespace detail {

struct Span1D {
  Index lo = 0;
  Index hi = 0;
  bool contiguous = false;
};

inline Span1D extent(std::span<const Index> members,
                     const std::vector<Index>& pos) {
  Index lo = pos[members.front()], hi = lo;
  for (Index v : members) {
    lo = std::min(lo, pos[v]);
    hi = std::max(hi, pos[v]);
  }
  return {lo, hi, static_cast<std::size_t>(hi - lo) + 1 == members.size()};
}

inline bool contains(const std::vector<Index>& sorted, Index v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace detail

// Every member point has a color-c nonzero in some member dimension and vice
// versa. Independent of the ordering.
inline bool cluster_covered(const LabeledMatrix& m, const Cluster& c) {
  for (Index p : c.points) {
    bool hit = false;
    for (const Entry& e : m.column(p)) {
      if (e.color == c.color && detail::contains(c.dims, e.idx)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  for (Index d : c.dims) {
    bool hit = false;
    for (const Entry& e : m.row(d)) {
      if (e.color == c.color && detail::contains(c.points, e.idx)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

// Box predicate: the cluster's points and dimensions each occupy an
// unbroken range of positions (so the box holds no foreign point or
// dimension) and the cluster is covered by its own color.
//
// Connectivity predicate: dimensions are contiguous and the cluster's points
// are exactly one run of connected_components.
inline std::vector<ClusterId> preserved_clusters(
    const LabeledMatrix& m, const Clustering& clustering,
    const OrderingSolution& order, Predicate predicate = Predicate::kBox) {
  order.validate(m);
  clustering.check_bounds(m);
  const auto rpos = order.row_positions();
  const auto cpos = order.col_positions();

  std::vector<std::vector<Index>> runs;
  std::vector<std::size_t> run_of;
  if (predicate == Predicate::kConnectivity) {
    runs = connected_components(m, order);
    run_of.resize(m.cols());
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (Index c : runs[r]) run_of[c] = r;
    }
  }

  std::vector<ClusterId> out;
  for (const Cluster& c : clustering) {
    const auto dims = detail::extent(c.dims, rpos);
    if (!dims.contiguous) continue;
    if (predicate == Predicate::kBox) {
      if (!detail::extent(c.points, cpos).contiguous) continue;
      if (!cluster_covered(m, c)) continue;
    } else {
      const auto& run = runs[run_of[c.points.front()]];
      if (run.size() != c.points.size()) continue;
      bool same = true;
      for (Index p : run) same = same && detail::contains(c.points, p);
      if (!same) continue;
    }
    out.push_back(c.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DensityRatio {
  double rho = 0.0;
  std::size_t kept = 0;   // numerator mass
  std::size_t total = 0;  // denominator mass
  std::size_t outliers = 0;
};

// kPointCount: a nonzero cell is attributed to every cluster that has its
// color and contains its column; it is kept when it falls inside the bounding
// box of one of those clusters. rho = kept / attributed.
//
// kBoxCells: rho = |D'||P'| / (|D||P|) where D' and P' are the dimensions and
// points of the preserved clusters; outliers are nonzeros outside D' x P'.
inline DensityRatio density_ratio(const LabeledMatrix& m,
                                  const Clustering& clustering,
                                  const OrderingSolution& order, RhoRule rule) {
  order.validate(m);
  clustering.check_bounds(m);
  DensityRatio out;
  if (rule == RhoRule::kBoxCells) {
    if (m.rows() == 0 || m.cols() == 0) {
      throw Error(ErrorKind::kUndefinedRatio, "empty matrix");
    }
    const auto kept_ids = preserved_clusters(m, clustering, order);
    std::vector<bool> drow(m.rows(), false), pcol(m.cols(), false);
    for (const Cluster& c : clustering) {
      if (!std::binary_search(kept_ids.begin(), kept_ids.end(), c.id)) continue;
      for (Index d : c.dims) drow[d] = true;
      for (Index p : c.points) pcol[p] = true;
    }
    const auto nd = static_cast<std::size_t>(std::count(drow.begin(), drow.end(), true));
    const auto np = static_cast<std::size_t>(std::count(pcol.begin(), pcol.end(), true));
    out.kept = nd * np;
    out.total = static_cast<std::size_t>(m.rows()) * m.cols();
    for (const Cell& c : m.cells()) {
      if (!drow[c.row] || !pcol[c.col]) ++out.outliers;
    }
    out.rho = static_cast<double>(out.kept) / static_cast<double>(out.total);
    return out;
  }

  const auto rpos = order.row_positions();
  const auto cpos = order.col_positions();
  struct Box {
    Index r0, r1, c0, c1;
    Color color;
  };
  std::vector<Box> boxes;
  std::vector<std::vector<std::size_t>> by_col(m.cols());
  for (const Cluster& c : clustering) {
    const auto d = detail::extent(c.dims, rpos);
    const auto p = detail::extent(c.points, cpos);
    for (Index col : c.points) by_col[col].push_back(boxes.size());
    boxes.push_back({d.lo, d.hi, p.lo, p.hi, c.color});
  }
  for (const Cell& cell : m.cells()) {
    bool attributed = false, inside = false;
    for (std::size_t b : by_col[cell.col]) {
      const Box& box = boxes[b];
      if (box.color != cell.color) continue;
      attributed = true;
      const Index r = rpos[cell.row], c = cpos[cell.col];
      if (r >= box.r0 && r <= box.r1 && c >= box.c0 && c <= box.c1) {
        inside = true;
        break;
      }
    }
    if (!attributed) continue;
    ++out.total;
    if (inside) ++out.kept;
  }
  if (out.total == 0) {
    throw Error(ErrorKind::kUndefinedRatio,
                "no nonzero cell is attributed to a cluster");
  }
  out.outliers = out.total - out.kept;
  out.rho = static_cast<double>(out.kept) / static_cast<double>(out.total);
  return out;
}

struct FStats {
  std::size_t f1 = 0;  // max clusters sharing one dimension
  std::size_t f2 = 0;  // max clusters containing one point

  friend bool operator==(const FStats&, const FStats&) = default;
};

inline FStats f_stats(const Clustering& clustering) {
  Index max_dim = 0, max_point = 0;
  for (const Cluster& c : clustering) {
    max_dim = std::max(max_dim, c.dims.back() + 1);
    max_point = std::max(max_point, c.points.back() + 1);
  }
  std::vector<std::size_t> dim_count(max_dim, 0), point_count(max_point, 0);
  for (const Cluster& c : clustering) {
    for (Index d : c.dims) ++dim_count[d];
    for (Index p : c.points) ++point_count[p];
  }
  FStats s;
  for (auto v : dim_count) s.f1 = std::max(s.f1, v);
  for (auto v : point_count) s.f2 = std::max(s.f2, v);
  return s;
}

inline MetricsReport compute_metrics(const LabeledMatrix& m,
                                     const Clustering& clustering,
                                     const OrderingSolution& order,
                                     RhoRule rule,
                                     Predicate predicate = Predicate::kBox) {
  MetricsReport r;
  r.preserved = preserved_clusters(m, clustering, order, predicate);
  r.k = clustering.size();
  r.h = connected_components(m, order).size();
  try {
    const auto ratio = density_ratio(m, clustering, order, rule);
    r.rho = ratio.rho;
    r.outlier_count = ratio.outliers;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndefinedRatio) throw;
    r.rho_defined = false;
  }
  r.k_percent = r.k == 0 ? 0.0
                         : static_cast<double>(r.preserved.size()) /
                               static_cast<double>(r.k);
  const auto fs = f_stats(clustering);
  r.f1 = fs.f1;
  r.f2 = fs.f2;
  return r;
}

struct ValueCell {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

struct ValueMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<ValueCell> cells;  // absent cells are 0
};

inline std::size_t layer_count(double epsilon) {
  return static_cast<std::size_t>(std::ceil(1.0 / epsilon - 1e-9));
}

// Level of a value on the epsilon grid: round(v / epsilon), 0 = background.
inline std::size_t discretize(double value, double epsilon) {
  const auto t = static_cast<std::size_t>(std::llround(value / epsilon));
  return std::min(t, layer_count(epsilon));
}

// Layer t (1-based, returned at index t-1) is the binary matrix of cells
// whose value rounds to t * epsilon.
inline std::vector<LabeledMatrix> binarize(const ValueMatrix& m,
                                           double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw Error(ErrorKind::kParameter, "epsilon must lie in (0, 1]");
  }
  const std::size_t layers = layer_count(epsilon);
  std::vector<std::vector<Cell>> cells(layers);
  for (const ValueCell& c : m.cells) {
    if (c.value < 0.0 || c.value > 1.0) {
      throw Error(ErrorKind::kParameter, "values must be normalized to [0, 1]");
    }
    const std::size_t t = discretize(c.value, epsilon);
    if (t > 0) cells[t - 1].push_back({c.row, c.col, 1});
  }
  std::vector<LabeledMatrix> out;
  out.reserve(layers);
  for (auto& layer : cells) {
    out.emplace_back(m.rows, m.cols, 1, std::move(layer));
  }
  return out;
}

}  // namespace hms

#endif  // HMS_METRICS_HPP_
