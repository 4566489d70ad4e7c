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

// Bit-sampling LSH for Hamming distance between columns, used to reduce the
// number of dimensions.

#ifndef HMS_LSH_HPP_
#define HMS_LSH_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hms/error.hpp"
#include "hms/model.hpp"
#include "hms/union_find.hpp"

namespace hms {

// Ceiling that ignores floating-point noise just above an integer.
inline std::size_t stable_ceil(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) < 1e-9) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(v));
}

struct LshParams {
  std::size_t subspaces = 1;
  std::size_t dims_per_subspace = 1;

  friend bool operator==(const LshParams&, const LshParams&) = default;
};

// (ceil(n^(1/c)), ceil(ln n)).
inline LshParams lsh_params(std::size_t n, double c) {
  if (n < 2 || !(c >= 1.0)) {
    throw Error(ErrorKind::kParameter, "lsh_params needs n >= 2 and c >= 1");
  }
  const double nd = static_cast<double>(n);
  return {stable_ceil(std::pow(nd, 1.0 / c)), stable_ceil(std::log(nd))};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t subspace_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

struct LshConfig {
  double c = 5.0;
  std::optional<std::size_t> subspaces;          // default from lsh_params
  std::optional<std::size_t> dims_per_subspace;  // default from lsh_params
  std::uint64_t seed = 0;
  bool with_replacement = false;
};

struct LshResult {
  LshParams params;
  std::vector<std::vector<Index>> sampled;         // rows per subspace
  std::vector<std::vector<std::uint64_t>> bucket;  // [subspace][column]
  LabeledMatrix reduced;  // sampled rows stacked subspace by subspace
};

// Rows drawn for one subspace.
inline std::vector<Index> sample_rows(Index rows, std::size_t count,
                                      std::uint64_t seed,
                                      bool with_replacement) {
  std::mt19937_64 rng(seed);
  std::vector<Index> out;
  if (with_replacement) {
    std::uniform_int_distribution<Index> pick(0, rows - 1);
    for (std::size_t i = 0; i < count; ++i) out.push_back(pick(rng));
    return out;
  }
  if (count > rows) {
    throw Error(ErrorKind::kParameter,
                "cannot sample " + std::to_string(count) + " of " +
                    std::to_string(rows) + " rows without replacement");
  }
  std::vector<Index> pool(rows);
  for (Index r = 0; r < rows; ++r) pool[r] = r;
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, rows - 1);
    std::swap(pool[i], pool[pick(rng)]);
    out.push_back(pool[i]);
  }
  return out;
}

// FNV-1a over the column's values at the sampled rows.
inline std::uint64_t projection_hash(const LabeledMatrix& m, Index col,
                                     const std::vector<Index>& rows) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Index r : rows) {
    Color v = m.at(r, col);
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

inline LshResult lsh_reduce(const LabeledMatrix& m, const LshConfig& cfg) {
  LshResult res;
  const auto defaults = lsh_params(std::max<std::size_t>(m.cols(), 2), cfg.c);
  res.params.subspaces = cfg.subspaces.value_or(defaults.subspaces);
  res.params.dims_per_subspace =
      cfg.dims_per_subspace.value_or(defaults.dims_per_subspace);
  if (res.params.subspaces == 0 || res.params.dims_per_subspace == 0) {
    throw Error(ErrorKind::kParameter, "subspaces and dims must be positive");
  }
  if (m.rows() == 0) throw Error(ErrorKind::kParameter, "matrix has no rows");
  std::vector<Cell> cells;
  Index out_row = 0;
  for (std::size_t s = 0; s < res.params.subspaces; ++s) {
    auto rows = sample_rows(m.rows(), res.params.dims_per_subspace,
                            subspace_seed(cfg.seed, s), cfg.with_replacement);
    std::vector<std::uint64_t> b(m.cols());
    for (Index c = 0; c < m.cols(); ++c) b[c] = projection_hash(m, c, rows);
    for (Index r : rows) {
      for (const Entry& e : m.row(r)) cells.push_back({out_row, e.idx, e.color});
      ++out_row;
    }
    res.sampled.push_back(std::move(rows));
    res.bucket.push_back(std::move(b));
  }
  res.reduced = LabeledMatrix(out_row, m.cols(), m.num_colors(), std::move(cells),
                              {}, m.col_ids());
  return res;
}

// Columns joined whenever they share a bucket in some subspace; groups are
// listed by smallest member.
inline std::vector<std::vector<Index>> lsh_groups(const LshResult& r, Index cols) {
  DisjointSets sets(cols);
  for (const auto& b : r.bucket) {
    std::map<std::uint64_t, Index> first;
    for (Index c = 0; c < cols; ++c) {
      auto [it, inserted] = first.emplace(b[c], c);
      if (!inserted) sets.unite(it->second, c);
    }
  }
  std::vector<std::vector<Index>> out;
  std::map<std::size_t, std::size_t> slot;
  for (Index c = 0; c < cols; ++c) {
    auto [it, inserted] = slot.emplace(sets.find(c), out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(c);
  }
  return out;
}

// Rows on which two columns differ.
inline std::size_t hamming_distance(const LabeledMatrix& m, Index a, Index b) {
  auto x = m.column(a);
  auto y = m.column(b);
  std::size_t i = 0, j = 0, d = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].idx < y[j].idx)) {
      ++d;
      ++i;
    } else if (i == x.size() || y[j].idx < x[i].idx) {
      ++d;
      ++j;
    } else {
      if (x[i].color != y[j].color) ++d;
      ++i;
      ++j;
    }
  }
  return d;
}

}  // namespace hms

#endif  // HMS_LSH_HPP_
