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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "hms/fpt.hpp"
#include "hms/io.hpp"
#include "oracles.hpp"

namespace hms::fpt {
namespace {

using Sets = std::vector<std::vector<Index>>;

SetCoverInstance CiscoFamily() {
  std::ifstream in(std::string(HMS_FIXTURE_DIR) + "/cisco_family.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  return io::parse_set_cover(ss.str());
}

TEST(Atomize, DisjointSetsGiveOneAtomEach) {
  const Sets sets{{0, 1}, {2}, {3, 4, 5}};
  const auto atoms = atomize(sets);
  ASSERT_EQ(atoms.size(), 3u);
  EXPECT_EQ(atoms[0].elements, (std::vector<Index>{0, 1}));
  EXPECT_EQ(atoms[2].elements, (std::vector<Index>{3, 4, 5}));
}

TEST(Atomize, OverlapSplitsIntoSignatureClasses) {
  // a=0 b=1 c=2 d=3
  const Sets sets{{0, 1, 2}, {1, 2, 3}};
  const auto atoms = atomize(sets);
  ASSERT_EQ(atoms.size(), 3u);
  EXPECT_EQ(atoms[0].elements, (std::vector<Index>{0}));
  EXPECT_EQ(atoms[1].elements, (std::vector<Index>{3}));
  EXPECT_EQ(atoms[2].elements, (std::vector<Index>{1, 2}));
}

TEST(Atomize, EmptyFamilyThrows) {
  EXPECT_THROW(atomize(Sets{}), Error);
}

TEST(Atomize, MatchesMembershipVectors) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const Index n = 1 + static_cast<Index>(rng() % 12);
    Sets sets;
    for (std::size_t i = 0, k = 1 + rng() % 5; i < k; ++i) {
      sets.push_back(oracle::random_subset(n, rng, n));
    }
    std::map<std::vector<bool>, std::vector<Index>> expect;
    for (Index e = 0; e < n; ++e) {
      std::vector<bool> v(sets.size());
      bool any = false;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        v[i] = std::binary_search(sets[i].begin(), sets[i].end(), e);
        any = any || v[i];
      }
      if (any) expect[v].push_back(e);
    }
    std::set<std::vector<Index>> want, got;
    for (auto& [v, g] : expect) want.insert(g);
    for (const auto& a : atomize(sets)) got.insert(a.elements);
    EXPECT_EQ(got, want);
  }
}

TEST(BuildDag, SingleSetIsOneWeightedNode) {
  const Sets sets{{2, 5}};
  const auto atoms = atomize(sets);
  const auto dag = build_dag(atoms, sets);
  ASSERT_EQ(dag.nodes.size(), 1u);
  EXPECT_EQ(dag.nodes[0].weight, 1u);
}

TEST(BuildDag, LaminarChain) {
  const Sets sets{{0}, {0, 1}, {0, 1, 2}};
  const auto atoms = atomize(sets);
  const auto dag = build_dag(atoms, sets);
  std::size_t weighted = 0;
  for (const auto& n : dag.nodes) weighted += n.weight > 0;
  EXPECT_EQ(weighted, 3u);
  EXPECT_NE(dag.set_node[0], dag.set_node[1]);
  EXPECT_NE(dag.set_node[1], dag.set_node[2]);
  EXPECT_TRUE(detail::strict_subset(dag.nodes[dag.set_node[0]].atoms,
                                    dag.nodes[dag.set_node[1]].atoms));
  EXPECT_TRUE(detail::strict_subset(dag.nodes[dag.set_node[1]].atoms,
                                    dag.nodes[dag.set_node[2]].atoms));
}

TEST(BuildDag, EverySetIsAWeightedNode) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 200; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 10);
    Sets sets;
    for (std::size_t i = 0, k = 1 + rng() % 6; i < k; ++i) {
      sets.push_back(oracle::random_subset(n, rng, n));
    }
    const auto atoms = atomize(sets);
    const auto dag = build_dag(atoms, sets);
    std::size_t total = 0;
    for (const auto& node : dag.nodes) total += node.weight;
    EXPECT_EQ(total, sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::vector<Index> elems;
      for (auto a : dag.nodes[dag.set_node[i]].atoms) {
        elems.insert(elems.end(), atoms[a].elements.begin(), atoms[a].elements.end());
      }
      std::sort(elems.begin(), elems.end());
      EXPECT_EQ(elems, sets[i]);
      EXPECT_GE(dag.nodes[dag.set_node[i]].weight, 1u);
    }
    for (const auto& node : dag.nodes) {
      for (auto c : node.children) EXPECT_TRUE(detail::strict_subset(dag.nodes[c].atoms, node.atoms));
    }
  }
}

TEST(MaxTree, DisjointClustersReachFullWeight) {
  const Sets sets{{0, 1}, {2}, {3, 4}};
  const auto r = order_axis(sets, 6, kDefaultBudget);
  EXPECT_EQ(r.weight, 3u);
  for (const auto& s : sets) EXPECT_TRUE(oracle::contiguous(s, r.order));
}

TEST(MaxTree, CiscoFamily) {
  const auto sc = CiscoFamily();
  ASSERT_EQ(sc.sets.size(), 13u);
  const auto atoms = atomize(sc.sets);
  const auto dag = build_dag(atoms, sc.sets);
  const auto family = max_tree(dag);
  EXPECT_EQ(family.weight, 12u);
  const auto order = element_order(atoms, family, sc.universe);
  // The trailing {2,1} is the set left out.
  EXPECT_FALSE(oracle::contiguous(sc.sets.back(), order));
  for (std::size_t i = 0; i + 1 < sc.sets.size(); ++i) {
    EXPECT_TRUE(oracle::contiguous(sc.sets[i], order)) << "set " << i;
  }
  const std::vector<Index> head(order.begin(), order.begin() + 6);
  std::vector<Index> expect{17, 4, 1, 3, 2, 15};
  std::vector<Index> mirror(expect.rbegin(), expect.rend());
  EXPECT_TRUE(head == expect || head == mirror);
  EXPECT_EQ(dag.psi, 6u);  // protocol 1 lies in six sets
}

TEST(MaxTree, MatchesFactorialOracle) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 6);
    Sets sets;
    for (std::size_t i = 0, k = 1 + rng() % 6; i < k; ++i) {
      sets.push_back(oracle::random_subset(n, rng, n));
    }
    const auto r = order_axis(sets, n, kDefaultBudget);
    EXPECT_EQ(r.weight, oracle::best_interval_count(n, sets)) << "trial " << t;
    std::size_t hit = 0;
    for (const auto& s : sets) hit += oracle::contiguous(s, r.order);
    EXPECT_GE(hit, r.weight);
  }
}

TEST(MaxTree, WeightInvariantUnderSetOrder) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 100; ++t) {
    const Index n = 3 + static_cast<Index>(rng() % 8);
    Sets sets;
    for (std::size_t i = 0, k = 2 + rng() % 6; i < k; ++i) {
      sets.push_back(oracle::random_subset(n, rng, 4));
    }
    const auto a = order_axis(sets, n, kDefaultBudget).weight;
    std::shuffle(sets.begin(), sets.end(), rng);
    EXPECT_EQ(order_axis(sets, n, kDefaultBudget).weight, a);
  }
}

TEST(MaxTree, BudgetExceeded) {
  Sets sets;
  for (Index i = 0; i < 5; ++i) sets.push_back({i});
  try {
    order_axis(sets, 5, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
  }
}

// Mean search nodes over random families of `a` sets of size <= 4 on `a`
// elements, keeping only families that split into exactly `a` atoms.
double MeanSearchNodes(Index a) {
  std::mt19937_64 rng(7);
  double total = 0;
  int count = 0;
  while (count < 40) {
    Sets sets;
    for (Index i = 0; i < a; ++i) sets.push_back(oracle::random_subset(a, rng, 4));
    if (atomize(sets).size() != a) continue;
    total += static_cast<double>(order_axis(sets, a, kDefaultBudget).search_nodes);
    ++count;
  }
  return total / count;
}

TEST(MaxTree, SearchGrowthFrom14To15Atoms) {
  const double n14 = MeanSearchNodes(14), n15 = MeanSearchNodes(15);
  EXPECT_LT(n15, 3 * n14);
  EXPECT_GT(n15, n14);
}

TEST(FptSort, OrdersBothAxes) {
  LabeledMatrix m(3, 4, 1, {{0, 0, 1}, {0, 2, 1}, {2, 0, 1}, {2, 2, 1}});
  Clustering cl({{1, {0, 2}, {0, 2}, 1}});
  const auto r = fpt_sort(m, cl);
  EXPECT_EQ(r.solution.col_perm, (std::vector<Index>{0, 2, 1, 3}));
  EXPECT_EQ(r.solution.row_perm, (std::vector<Index>{0, 2, 1}));
  EXPECT_EQ(compute_metrics(m, cl, r.solution, RhoRule::kPointCount).preserved.size(), 1u);
}

}  // namespace
}  // namespace hms::fpt
