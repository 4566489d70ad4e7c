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

// Data model for heat map sorting: a sparse colored matrix whose rows are
// dimensions and whose columns are points, a (possibly overlapping) family of
// clusters over it, and a row/column ordering.

#ifndef HMS_MODEL_HPP_
#define HMS_MODEL_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hms/error.hpp"

namespace hms {

using Index = std::uint32_t;
using Color = std::uint32_t;
using ClusterId = std::int64_t;

inline constexpr Color kBackground = 0;

struct Cell {
  Index row = 0;
  Index col = 0;
  Color color = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// One nonzero seen from a row (idx = column) or from a column (idx = row).
struct Entry {
  Index idx = 0;
  Color color = 0;
};

class LabeledMatrix {
 public:
  LabeledMatrix() = default;

  // Cells may arrive in any order. Throws kInvalidInput on out-of-range
  // indices, duplicate (row, col) pairs, background or out-of-palette colors.
  LabeledMatrix(Index num_rows, Index num_cols, Color num_colors,
                std::vector<Cell> cells, std::vector<std::string> row_ids = {},
                std::vector<std::string> col_ids = {})
      : num_rows_(num_rows),
        num_cols_(num_cols),
        num_colors_(num_colors),
        cells_(std::move(cells)),
        row_ids_(std::move(row_ids)),
        col_ids_(std::move(col_ids)) {
    for (const Cell& c : cells_) {
      if (c.row >= num_rows_ || c.col >= num_cols_) {
        throw Error(ErrorKind::kInvalidInput,
                    "cell (" + std::to_string(c.row) + ", " +
                        std::to_string(c.col) + ") outside " +
                        std::to_string(num_rows_) + "x" +
                        std::to_string(num_cols_));
      }
      if (c.color == kBackground || c.color > num_colors_) {
        throw Error(ErrorKind::kInvalidInput,
                    "cell color " + std::to_string(c.color) +
                        " not in [1, " + std::to_string(num_colors_) + "]");
      }
    }
    std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
      return std::pair(a.row, a.col) < std::pair(b.row, b.col);
    });
    for (std::size_t i = 1; i < cells_.size(); ++i) {
      if (cells_[i].row == cells_[i - 1].row &&
          cells_[i].col == cells_[i - 1].col) {
        throw Error(ErrorKind::kInvalidInput,
                    "duplicate cell (" + std::to_string(cells_[i].row) + ", " +
                        std::to_string(cells_[i].col) + ")");
      }
    }
    if (!row_ids_.empty() && row_ids_.size() != num_rows_) {
      throw Error(ErrorKind::kInvalidInput, "row_ids size mismatch");
    }
    if (!col_ids_.empty() && col_ids_.size() != num_cols_) {
      throw Error(ErrorKind::kInvalidInput, "col_ids size mismatch");
    }
    build_index();
  }

  Index rows() const { return num_rows_; }
  Index cols() const { return num_cols_; }
  Color num_colors() const { return num_colors_; }
  std::size_t nnz() const { return cells_.size(); }

  // Sorted by (row, col).
  std::span<const Cell> cells() const { return cells_; }

  std::span<const Entry> row(Index r) const {
    return {row_entries_.data() + row_start_[r],
            row_start_[r + 1] - row_start_[r]};
  }
  std::span<const Entry> column(Index c) const {
    return {col_entries_.data() + col_start_[c],
            col_start_[c + 1] - col_start_[c]};
  }

  Color at(Index r, Index c) const {
    auto entries = row(r);
    auto it = std::lower_bound(
        entries.begin(), entries.end(), c,
        [](const Entry& e, Index v) { return e.idx < v; });
    return (it != entries.end() && it->idx == c) ? it->color : kBackground;
  }

  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& col_ids() const { return col_ids_; }

  std::string row_id(Index r) const {
    return row_ids_.empty() ? std::to_string(r) : row_ids_[r];
  }
  std::string col_id(Index c) const {
    return col_ids_.empty() ? std::to_string(c) : col_ids_[c];
  }

  friend bool operator==(const LabeledMatrix& a, const LabeledMatrix& b) {
    return a.num_rows_ == b.num_rows_ && a.num_cols_ == b.num_cols_ &&
           a.num_colors_ == b.num_colors_ && a.cells_ == b.cells_ &&
           a.row_ids_ == b.row_ids_ && a.col_ids_ == b.col_ids_;
  }

 private:
  void build_index() {
    row_start_.assign(num_rows_ + 1, 0);
    col_start_.assign(num_cols_ + 1, 0);
    for (const Cell& c : cells_) {
      ++row_start_[c.row + 1];
      ++col_start_[c.col + 1];
    }
    std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
    std::partial_sum(col_start_.begin(), col_start_.end(), col_start_.begin());
    row_entries_.resize(cells_.size());
    col_entries_.resize(cells_.size());
    std::vector<std::size_t> col_fill(col_start_.begin(), col_start_.end() - 1);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Cell& c = cells_[i];
      row_entries_[i] = {c.col, c.color};
      col_entries_[col_fill[c.col]++] = {c.row, c.color};
    }
  }

  Index num_rows_ = 0;
  Index num_cols_ = 0;
  Color num_colors_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_ids_;
  std::vector<std::size_t> row_start_{0};
  std::vector<std::size_t> col_start_{0};
  std::vector<Entry> row_entries_;
  std::vector<Entry> col_entries_;
};

struct Cluster {
  ClusterId id = 0;
  std::vector<Index> points;  // column indices, sorted, unique
  std::vector<Index> dims;    // row indices, sorted, unique
  Color color = 1;
};

class Clustering {
 public:
  Clustering() = default;

  // Normalizes every point/dim list to sorted-unique form. Throws
  // kInvalidInput on empty sets or duplicate ids.
  explicit Clustering(std::vector<Cluster> clusters)
      : clusters_(std::move(clusters)) {
    std::unordered_set<ClusterId> seen;
    for (Cluster& c : clusters_) {
      normalize(c.points);
      normalize(c.dims);
      if (c.points.empty() || c.dims.empty()) {
        throw Error(ErrorKind::kInvalidInput,
                    "cluster " + std::to_string(c.id) +
                        " has an empty point or dimension set");
      }
      if (!seen.insert(c.id).second) {
        throw Error(ErrorKind::kInvalidInput,
                    "duplicate cluster id " + std::to_string(c.id));
      }
    }
  }

  std::size_t size() const { return clusters_.size(); }
  bool empty() const { return clusters_.empty(); }
  const Cluster& operator[](std::size_t i) const { return clusters_[i]; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  auto begin() const { return clusters_.begin(); }
  auto end() const { return clusters_.end(); }

  std::optional<std::size_t> find(ClusterId id) const {
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
      if (clusters_[i].id == id) return i;
    }
    return std::nullopt;
  }

  void check_bounds(const LabeledMatrix& m) const {
    for (const Cluster& c : clusters_) {
      if (c.points.back() >= m.cols() || c.dims.back() >= m.rows()) {
        throw Error(ErrorKind::kInvalidInput,
                    "cluster " + std::to_string(c.id) +
                        " references indices outside the matrix");
      }
    }
  }

 private:
  static void normalize(std::vector<Index>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::vector<Cluster> clusters_;
};

// row_perm[i] is the original row shown at position i; likewise col_perm.
struct OrderingSolution {
  std::vector<Index> row_perm;
  std::vector<Index> col_perm;
  std::optional<std::vector<ClusterId>> cluster_order;

  static OrderingSolution identity(Index rows, Index cols) {
    OrderingSolution s;
    s.row_perm.resize(rows);
    s.col_perm.resize(cols);
    std::iota(s.row_perm.begin(), s.row_perm.end(), Index{0});
    std::iota(s.col_perm.begin(), s.col_perm.end(), Index{0});
    return s;
  }

  void validate(Index rows, Index cols) const {
    check_perm(row_perm, rows, "row");
    check_perm(col_perm, cols, "column");
  }
  void validate(const LabeledMatrix& m) const { validate(m.rows(), m.cols()); }

  // pos[original] = displayed position.
  std::vector<Index> row_positions() const { return invert(row_perm); }
  std::vector<Index> col_positions() const { return invert(col_perm); }

  OrderingSolution inverse() const {
    return {invert(row_perm), invert(col_perm), cluster_order};
  }

  friend bool operator==(const OrderingSolution&,
                         const OrderingSolution&) = default;

 private:
  static std::vector<Index> invert(const std::vector<Index>& perm) {
    std::vector<Index> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      inv[perm[i]] = static_cast<Index>(i);
    }
    return inv;
  }

  static void check_perm(const std::vector<Index>& perm, Index n,
                         const char* what) {
    if (perm.size() != n) {
      throw Error(ErrorKind::kInvalidSolution,
                  std::string(what) + " permutation has length " +
                      std::to_string(perm.size()) + ", expected " +
                      std::to_string(n));
    }
    std::vector<bool> hit(n, false);
    for (Index v : perm) {
      if (v >= n || hit[v]) {
        throw Error(ErrorKind::kInvalidSolution,
                    std::string(what) + " permutation is not a bijection");
      }
      hit[v] = true;
    }
  }
};

// Permuted copy: cell (r, c) moves to (pos_row[r], pos_col[c]).
inline LabeledMatrix apply(const LabeledMatrix& m, const OrderingSolution& s) {
  s.validate(m);
  const auto rpos = s.row_positions();
  const auto cpos = s.col_positions();
  std::vector<Cell> cells;
  cells.reserve(m.nnz());
  for (const Cell& c : m.cells()) {
    cells.push_back({rpos[c.row], cpos[c.col], c.color});
  }
  std::vector<std::string> row_ids, col_ids;
  if (!m.row_ids().empty()) {
    for (Index r : s.row_perm) row_ids.push_back(m.row_ids()[r]);
  }
  if (!m.col_ids().empty()) {
    for (Index c : s.col_perm) col_ids.push_back(m.col_ids()[c]);
  }
  return LabeledMatrix(m.rows(), m.cols(), m.num_colors(), std::move(cells),
                       std::move(row_ids), std::move(col_ids));
}

enum class Predicate { kBox, kConnectivity };
enum class RhoRule { kBoxCells, kPointCount };

struct MetricsReport {
  std::vector<ClusterId> preserved;  // sorted ascending
  std::size_t k = 0;
  std::size_t h = 0;
  double rho = 0.0;
  bool rho_defined = true;  // false when no cell is attributed to a cluster
  double k_percent = 0.0;
  std::size_t f1 = 0;
  std::size_t f2 = 0;
  std::size_t outlier_count = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

}  // namespace hms

#endif  // HMS_MODEL_HPP_
