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

// Fixed-parameter ordering of one axis, parameterized by the number of atoms.
//
//   1. atomize: split the universe into maximal classes of elements that lie
//      in exactly the same input sets.
//   2. build_dag: starting from the atoms, merge classes level by level
//      (resolving the minimal remaining sets, then hashing atoms by their
//      signature over the sets still open) until every input set is a node.
//   3. Nodes equal to an input set carry its multiplicity as weight.
//   4. max_tree: include/exclude search over weighted nodes for the heaviest
//      family that can be laid out as disjoint trees over one left-to-right
//      atom order, i.e. every chosen node is an interval of that order.

#ifndef HMS_FPT_HPP_
#define HMS_FPT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hms/consecutive.hpp"
#include "hms/error.hpp"
#include "hms/metrics.hpp"
#include "hms/model.hpp"

namespace hms::fpt {

using AtomSet = std::vector<std::uint32_t>;  // sorted atom ids

struct Atom {
  std::vector<Index> elements;          // sorted
  std::vector<std::size_t> signature;   // positions of the sets holding it
};

// Atoms cover the union of the sets and are sorted by (signature size,
// signature) so the numbering is independent of element labels.
inline std::vector<Atom> atomize(std::span<const std::vector<Index>> sets) {
  if (sets.empty()) {
    throw Error(ErrorKind::kInvalidInput, "atomize needs at least one set");
  }
  std::map<Index, std::vector<std::size_t>> membership;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Index e : sets[i]) {
      auto& sig = membership[e];
      if (sig.empty() || sig.back() != i) sig.push_back(i);
    }
  }
  std::map<std::vector<std::size_t>, std::vector<Index>> classes;
  for (auto& [e, sig] : membership) classes[sig].push_back(e);
  std::vector<Atom> atoms;
  for (auto& [sig, elems] : classes) atoms.push_back({elems, sig});
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) {
                     if (a.signature.size() != b.signature.size()) {
                       return a.signature.size() < b.signature.size();
                     }
                     return a.signature < b.signature;
                   });
  return atoms;
}

struct DagNode {
  AtomSet atoms;
  std::size_t level = 0;
  std::size_t weight = 0;
  std::vector<std::size_t> sets;      // input sets equal to this node
  std::vector<std::size_t> children;  // maximal nodes strictly inside
  std::vector<std::size_t> parents;
};

struct MergeDag {
  std::size_t num_atoms = 0;  // nodes [0, num_atoms) are the atoms
  std::vector<DagNode> nodes;
  std::vector<std::size_t> set_node;  // input set -> node

  // Hypergraph statistics over elements: max degree, and how many elements
  // lie in more than two sets.
  std::size_t psi = 0;
  std::size_t high_degree = 0;
};

namespace detail {

inline bool strict_subset(const AtomSet& a, const AtomSet& b) {
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

inline MergeDag build_dag(std::span<const Atom> atoms,
                          std::span<const std::vector<Index>> sets) {
  MergeDag dag;
  dag.num_atoms = atoms.size();
  std::map<AtomSet, std::size_t> index;
  auto node_for = [&](const AtomSet& s, std::size_t level) {
    auto [it, inserted] = index.emplace(s, dag.nodes.size());
    if (inserted) {
      DagNode n;
      n.atoms = s;
      n.level = level;
      dag.nodes.push_back(std::move(n));
    }
    return it->second;
  };
  for (std::uint32_t a = 0; a < atoms.size(); ++a) node_for({a}, 0);

  std::vector<AtomSet> set_atoms(sets.size());
  for (std::uint32_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t i : atoms[a].signature) set_atoms[i].push_back(a);
  }

  std::vector<AtomSet> open;
  for (const AtomSet& s : set_atoms) {
    if (s.size() > 1) open.push_back(s);
  }
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());

  for (std::size_t level = 1; !open.empty(); ++level) {
    // Atoms with the same signature over the open sets merge into one node.
    std::map<std::vector<std::size_t>, AtomSet> bins;
    for (std::uint32_t a = 0; a < atoms.size(); ++a) {
      std::vector<std::size_t> sig;
      for (std::size_t j = 0; j < open.size(); ++j) {
        if (std::binary_search(open[j].begin(), open[j].end(), a)) {
          sig.push_back(j);
        }
      }
      if (!sig.empty()) bins[sig].push_back(a);
    }
    for (auto& [sig, group] : bins) {
      if (group.size() > 1) node_for(group, level);
    }
    // Resolve the minimal open sets.
    std::vector<AtomSet> still_open;
    for (const AtomSet& s : open) {
      bool minimal = true;
      for (const AtomSet& t : open) {
        if (detail::strict_subset(t, s)) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        node_for(s, level);
      } else {
        still_open.push_back(s);
      }
    }
    open = std::move(still_open);
  }

  // Hasse edges: each node points to the maximal nodes strictly inside it.
  for (std::size_t v = 0; v < dag.nodes.size(); ++v) {
    std::vector<std::size_t> inside;
    for (std::size_t u = 0; u < dag.nodes.size(); ++u) {
      if (detail::strict_subset(dag.nodes[u].atoms, dag.nodes[v].atoms)) {
        inside.push_back(u);
      }
    }
    for (std::size_t u : inside) {
      bool maximal = true;
      for (std::size_t w : inside) {
        if (detail::strict_subset(dag.nodes[u].atoms, dag.nodes[w].atoms)) {
          maximal = false;
          break;
        }
      }
      if (maximal) {
        dag.nodes[v].children.push_back(u);
        dag.nodes[u].parents.push_back(v);
      }
    }
  }

  dag.set_node.resize(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::size_t v = index.at(set_atoms[i]);
    dag.set_node[i] = v;
    dag.nodes[v].sets.push_back(i);
    ++dag.nodes[v].weight;
  }

  std::map<Index, std::size_t> degree;
  for (const auto& s : sets) {
    for (Index e : s) ++degree[e];
  }
  for (const auto& [e, d] : degree) {
    dag.psi = std::max(dag.psi, d);
    if (d > 2) ++dag.high_degree;
  }
  return dag;
}

struct TreeFamily {
  std::vector<std::size_t> selected;  // DAG node ids, in search order
  std::size_t weight = 0;
  std::vector<std::uint32_t> atom_order;       // all atoms
  std::vector<std::vector<std::size_t>> trees;  // selected nodes per tree
  std::uint64_t search_nodes = 0;
};

inline constexpr std::size_t kDefaultBudget = 20;

// Heaviest family of weighted nodes that are simultaneously intervals of one
// atom order. Weighted nodes are branched on in order of their first input
// set, include before exclude; a branch is cut when even taking every
// remaining node cannot beat the incumbent, so among equal weights the
// earliest-found family wins.
inline TreeFamily max_tree(const MergeDag& dag,
                           std::size_t budget = kDefaultBudget) {
  if (dag.num_atoms > budget || dag.num_atoms > 63) {
    throw Error(ErrorKind::kBudgetExceeded,
                std::to_string(dag.num_atoms) + " atoms exceed the budget of " +
                    std::to_string(std::min<std::size_t>(budget, 63)));
  }
  using interval::Mask;
  std::vector<std::size_t> weighted;
  for (std::size_t v = 0; v < dag.nodes.size(); ++v) {
    if (dag.nodes[v].weight > 0) weighted.push_back(v);
  }
  std::sort(weighted.begin(), weighted.end(),
            [&](std::size_t a, std::size_t b) {
              return dag.nodes[a].sets.front() < dag.nodes[b].sets.front();
            });
  std::vector<Mask> mask(weighted.size(), 0);
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    for (auto a : dag.nodes[weighted[i]].atoms) mask[i] |= Mask{1} << a;
  }
  std::vector<std::size_t> suffix(weighted.size() + 1, 0);
  for (std::size_t i = weighted.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1] + dag.nodes[weighted[i]].weight;
  }

  interval::ConsecutiveOnes engine(budget);
  TreeFamily best;
  std::vector<std::size_t> chosen;
  std::vector<Mask> chosen_masks;
  std::size_t best_weight = 0;
  bool have_best = false;
  std::uint64_t branches = 0;

  auto search = [&](auto&& self, std::size_t i, std::size_t weight) -> void {
    ++branches;
    if (have_best && weight + suffix[i] <= best_weight) return;
    if (i == weighted.size()) {
      best_weight = weight;
      best.selected.clear();
      for (std::size_t j : chosen) best.selected.push_back(weighted[j]);
      have_best = true;
      return;
    }
    chosen_masks.push_back(mask[i]);
    if (engine.feasible(chosen_masks)) {
      chosen.push_back(i);
      self(self, i + 1, weight + dag.nodes[weighted[i]].weight);
      chosen.pop_back();
    }
    chosen_masks.pop_back();
    self(self, i + 1, weight);
  };
  search(search, 0, 0);

  best.weight = best_weight;
  std::vector<Mask> sel_masks;
  for (std::size_t v : best.selected) {
    Mask mk = 0;
    for (auto a : dag.nodes[v].atoms) mk |= Mask{1} << a;
    sel_masks.push_back(mk);
  }
  std::vector<bool> placed(dag.num_atoms, false);
  if (auto order = engine.order(sel_masks)) {
    for (int a : *order) {
      best.atom_order.push_back(static_cast<std::uint32_t>(a));
      placed[a] = true;
    }
  }
  for (std::uint32_t a = 0; a < dag.num_atoms; ++a) {
    if (!placed[a]) best.atom_order.push_back(a);
  }

  // Trees are the groups of selected nodes connected by shared atoms.
  std::vector<std::size_t> group(best.selected.size());
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](std::size_t x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  for (std::size_t i = 0; i < sel_masks.size(); ++i) {
    for (std::size_t j = i + 1; j < sel_masks.size(); ++j) {
      if (sel_masks[i] & sel_masks[j]) group[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> trees;
  for (std::size_t i = 0; i < best.selected.size(); ++i) {
    trees[find(i)].push_back(best.selected[i]);
  }
  for (auto& [root, members] : trees) best.trees.push_back(std::move(members));

  best.search_nodes = branches + engine.states_visited();
  return best;
}

// Element permutation induced by a tree family: atoms in order, elements of
// an atom ascending, then elements [0, n) that belong to no atom.
inline std::vector<Index> element_order(std::span<const Atom> atoms,
                                        const TreeFamily& family, Index n) {
  std::vector<Index> out;
  std::vector<bool> used(n, false);
  for (auto a : family.atom_order) {
    for (Index e : atoms[a].elements) {
      out.push_back(e);
      used[e] = true;
    }
  }
  for (Index e = 0; e < n; ++e) {
    if (!used[e]) out.push_back(e);
  }
  return out;
}

struct AxisResult {
  std::vector<Index> order;
  std::size_t weight = 0;
  std::size_t atoms = 0;
  std::uint64_t search_nodes = 0;
};

inline AxisResult order_axis(std::span<const std::vector<Index>> sets, Index n,
                             std::size_t budget) {
  AxisResult r;
  const auto atoms = atomize(sets);
  const auto dag = build_dag(atoms, sets);
  const auto family = max_tree(dag, budget);
  r.order = element_order(atoms, family, n);
  r.weight = family.weight;
  r.atoms = atoms.size();
  r.search_nodes = family.search_nodes;
  return r;
}

struct FptResult {
  OrderingSolution solution;
  AxisResult rows;
  AxisResult cols;
};

// Orders dimensions by MaxTree over the clusters' dimension sets and points
// by MaxTree over their point sets.
inline FptResult fpt_sort(const LabeledMatrix& m, const Clustering& clustering,
                          std::size_t budget = kDefaultBudget) {
  clustering.check_bounds(m);
  if (clustering.empty()) {
    throw Error(ErrorKind::kInvalidInput, "fpt sort needs at least one cluster");
  }
  std::vector<std::vector<Index>> dims, points;
  for (const Cluster& c : clustering) {
    dims.push_back(c.dims);
    points.push_back(c.points);
  }
  FptResult r;
  r.rows = order_axis(dims, m.rows(), budget);
  r.cols = order_axis(points, m.cols(), budget);
  r.solution.row_perm = r.rows.order;
  r.solution.col_perm = r.cols.order;
  return r;
}

}  // namespace hms::fpt

#endif  // HMS_FPT_HPP_
