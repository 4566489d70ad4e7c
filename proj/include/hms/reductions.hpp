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

// Instance generators from Hamiltonian path and set cover, with the matching
// validity checks.

#ifndef HMS_REDUCTIONS_HPP_
#define HMS_REDUCTIONS_HPP_

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hms/error.hpp"
#include "hms/exact.hpp"
#include "hms/model.hpp"

namespace hms {

struct GraphInstance {
  Index vertices = 0;
  std::vector<std::pair<Index, Index>> edges;
  bool directed = false;

  void validate() const {
    for (const auto& [u, v] : edges) {
      if (u >= vertices || v >= vertices) {
        throw Error(ErrorKind::kInvalidInput, "edge endpoint out of range");
      }
      if (u == v) throw Error(ErrorKind::kInvalidInput, "self-loop");
    }
  }

  // Arcs as ordered pairs; undirected edges contribute both directions.
  std::set<std::pair<Index, Index>> arcs() const {
    std::set<std::pair<Index, Index>> out;
    for (const auto& [u, v] : edges) {
      out.emplace(u, v);
      if (!directed) out.emplace(v, u);
    }
    return out;
  }
};

using Triple = std::array<Index, 3>;

struct HamiltonianInstance {
  LabeledMatrix matrix;
  Clustering clustering;      // a single cluster over everything
  std::vector<Triple> rows;   // rows[r] = (v, u, w); the 1 sits in column u
};

// One column per vertex, one row per length-2 walk (v, u, w) with v != w.
inline HamiltonianInstance from_hamiltonian(const GraphInstance& g) {
  g.validate();
  if (g.vertices < 3) {
    throw Error(ErrorKind::kDegenerateInstance, "need at least 3 vertices");
  }
  const auto arcs = g.arcs();
  std::vector<std::vector<Index>> out(g.vertices);
  for (const auto& [u, v] : arcs) out[u].push_back(v);

  HamiltonianInstance inst;
  std::vector<Cell> cells;
  for (const auto& [v, u] : arcs) {
    for (Index w : out[u]) {
      if (w == v) continue;
      cells.push_back({static_cast<Index>(inst.rows.size()), u, 1});
      inst.rows.push_back({v, u, w});
    }
  }
  if (inst.rows.empty()) {
    throw Error(ErrorKind::kDegenerateInstance, "graph has no length-2 paths");
  }
  const auto n_rows = static_cast<Index>(inst.rows.size());
  inst.matrix = LabeledMatrix(n_rows, g.vertices, 1, std::move(cells));
  Cluster all;
  all.id = 0;
  for (Index r = 0; r < n_rows; ++r) all.dims.push_back(r);
  for (Index c = 0; c < g.vertices; ++c) all.points.push_back(c);
  inst.clustering = Clustering({all});
  return inst;
}

// True iff consecutive vertices of sigma are joined by an arc.
inline bool ham_order_valid(const GraphInstance& g,
                            const std::vector<Index>& sigma) {
  if (sigma.size() != g.vertices) return false;
  std::vector<bool> seen(g.vertices, false);
  for (Index v : sigma) {
    if (v >= g.vertices || seen[v]) return false;
    seen[v] = true;
  }
  const auto arcs = g.arcs();
  for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
    if (!arcs.count({sigma[i], sigma[i + 1]})) return false;
  }
  return true;
}

// Interior windows (sigma[i-1], sigma[i], sigma[i+1]) that are rows of the
// instance. The single cluster is preserved iff all n - 2 windows are rows.
inline std::size_t triple_chain_score(const HamiltonianInstance& inst,
                                      const std::vector<Index>& sigma) {
  std::set<Triple> rows(inst.rows.begin(), inst.rows.end());
  std::size_t score = 0;
  for (std::size_t i = 1; i + 1 < sigma.size(); ++i) {
    if (rows.count({sigma[i - 1], sigma[i], sigma[i + 1]})) ++score;
  }
  return score;
}

inline bool triple_chain_preserved(const HamiltonianInstance& inst,
                                   const std::vector<Index>& sigma) {
  return sigma.size() >= 2 &&
         triple_chain_score(inst, sigma) == sigma.size() - 2;
}

// Exhaustive search for a column order preserving the cluster.
inline std::optional<std::vector<Index>> solve_hamiltonian_instance(
    const HamiltonianInstance& inst) {
  const Index n = inst.matrix.cols();
  std::set<Triple> rows(inst.rows.begin(), inst.rows.end());
  auto score = [&](const std::vector<Index>& sigma) {
    std::size_t s = 0;
    for (std::size_t i = 1; i + 1 < sigma.size(); ++i) {
      if (rows.count({sigma[i - 1], sigma[i], sigma[i + 1]})) ++s;
    }
    return s;
  };
  auto [sigma, best] = best_column_order(n, score, n - 2);
  if (best != n - 2) return std::nullopt;
  return sigma;
}

struct SetCoverInstance {
  Index universe = 0;
  std::vector<std::vector<Index>> sets;

  void validate() const {
    if (universe == 0) throw Error(ErrorKind::kInvalidInput, "empty universe");
    for (const auto& s : sets) {
      if (s.empty()) throw Error(ErrorKind::kInvalidInput, "empty set");
      for (Index e : s) {
        if (e >= universe) {
          throw Error(ErrorKind::kInvalidInput, "set element out of range");
        }
      }
    }
  }
};

struct SetCoverEncoding {
  LabeledMatrix matrix;
  Clustering clustering;
  // atoms[r] = sets (by index) sharing the membership signature of row r;
  // empty for a private row of a set that owns no atom.
  std::vector<std::vector<std::size_t>> atoms;
};

// Columns are universe elements, rows are membership-signature atoms. Each
// atom row belongs to the lowest-index set containing it, so no row is shared
// between clusters. A set that owns no atom gets one private row carrying its
// elements.
inline SetCoverEncoding from_set_cover(const SetCoverInstance& sc) {
  sc.validate();
  std::vector<std::vector<std::size_t>> sig(sc.universe);
  for (std::size_t i = 0; i < sc.sets.size(); ++i) {
    for (Index e : sc.sets[i]) {
      if (sig[e].empty() || sig[e].back() != i) sig[e].push_back(i);
    }
  }
  SetCoverEncoding enc;
  std::map<std::vector<std::size_t>, Index> row_of;
  std::vector<Cell> cells;
  for (Index e = 0; e < sc.universe; ++e) {
    if (sig[e].empty()) continue;
    auto [it, inserted] =
        row_of.emplace(sig[e], static_cast<Index>(enc.atoms.size()));
    if (inserted) enc.atoms.push_back(sig[e]);
    cells.push_back({it->second, e, 1});
  }
  std::vector<Cluster> clusters(sc.sets.size());
  for (std::size_t i = 0; i < sc.sets.size(); ++i) {
    clusters[i].id = static_cast<ClusterId>(i);
    clusters[i].points = sc.sets[i];
  }
  for (Index r = 0; r < enc.atoms.size(); ++r) {
    clusters[enc.atoms[r].front()].dims.push_back(r);
  }
  for (std::size_t i = 0; i < sc.sets.size(); ++i) {
    if (!clusters[i].dims.empty()) continue;
    const auto r = static_cast<Index>(enc.atoms.size());
    enc.atoms.emplace_back();
    clusters[i].dims.push_back(r);
    for (Index e : sc.sets[i]) cells.push_back({r, e, 1});
  }
  enc.matrix = LabeledMatrix(static_cast<Index>(enc.atoms.size()), sc.universe,
                             1, std::move(cells));
  enc.clustering = Clustering(std::move(clusters));
  return enc;
}

}  // namespace hms

#endif  // HMS_REDUCTIONS_HPP_
