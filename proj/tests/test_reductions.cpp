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

#include <random>

#include "hms/exact.hpp"
#include "hms/reductions.hpp"
#include "oracles.hpp"

namespace hms {
namespace {

GraphInstance Path3() { return {3, {{0, 1}, {1, 2}}, false}; }

TEST(FromHamiltonian, PathHasTwoRows) {
  const auto inst = from_hamiltonian(Path3());
  ASSERT_EQ(inst.rows.size(), 2u);
  std::set<Triple> rows(inst.rows.begin(), inst.rows.end());
  EXPECT_TRUE(rows.count({0, 1, 2}));
  EXPECT_TRUE(rows.count({2, 1, 0}));
  for (Index r = 0; r < 2; ++r) {
    ASSERT_EQ(inst.matrix.row(r).size(), 1u);
    EXPECT_EQ(inst.matrix.row(r)[0].idx, 1u);
  }
  EXPECT_EQ(inst.clustering.size(), 1u);
}

TEST(FromHamiltonian, TriangleHasSixRows) {
  const auto inst = from_hamiltonian({3, {{0, 1}, {1, 2}, {2, 0}}, false});
  EXPECT_EQ(inst.rows.size(), 6u);
  for (Index c = 0; c < 3; ++c) EXPECT_EQ(inst.matrix.column(c).size(), 2u);
}

TEST(FromHamiltonian, DegenerateInputs) {
  for (const GraphInstance& g :
       {GraphInstance{4, {}, false}, GraphInstance{2, {{0, 1}}, false},
        GraphInstance{4, {{0, 1}, {2, 3}}, false}}) {
    try {
      from_hamiltonian(g);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInstance);
    }
  }
  EXPECT_THROW(from_hamiltonian({3, {{0, 0}}, false}), Error);
}

TEST(FromHamiltonian, NonzerosCountLengthTwoWalks) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 50; ++t) {
    const auto g = oracle::random_graph(rng, 3 + static_cast<Index>(rng() % 5), 0.5);
    std::size_t walks = 0;
    const auto arcs = g.arcs();
    for (const auto& [v, u] : arcs) {
      for (const auto& [u2, w] : arcs) walks += (u2 == u && w != v);
    }
    if (walks == 0) continue;
    EXPECT_EQ(from_hamiltonian(g).matrix.nnz(), walks);
  }
}

TEST(HamOrderValid, PathExamples) {
  EXPECT_TRUE(ham_order_valid(Path3(), {0, 1, 2}));
  EXPECT_FALSE(ham_order_valid(Path3(), {1, 0, 2}));
  EXPECT_FALSE(ham_order_valid(Path3(), {0, 1}));
  EXPECT_FALSE(ham_order_valid(Path3(), {0, 0, 2}));
}

TEST(HamiltonianReduction, PreservingOrderExistsIffPathExists) {
  std::mt19937_64 rng(52);
  int with_path = 0, without = 0;
  for (int t = 0; t < 120; ++t) {
    const Index n = 3 + static_cast<Index>(rng() % 6);  // up to 8
    const auto g = oracle::random_graph(rng, n, 0.2 + 0.5 * (t % 3) / 2.0);
    HamiltonianInstance inst;
    try {
      inst = from_hamiltonian(g);
    } catch (const Error&) {
      EXPECT_FALSE(oracle::has_hamiltonian_path(g));
      continue;
    }
    const auto sigma = solve_hamiltonian_instance(inst);
    const bool expect = oracle::has_hamiltonian_path(g);
    EXPECT_EQ(sigma.has_value(), expect) << "trial " << t;
    if (sigma) {
      EXPECT_TRUE(ham_order_valid(g, *sigma));
      EXPECT_TRUE(triple_chain_preserved(inst, *sigma));
    }
    (expect ? with_path : without)++;
  }
  EXPECT_GT(with_path, 0);
  EXPECT_GT(without, 0);
}

TEST(FromSetCover, DisjointSetsAreDiagonalBlocks) {
  const auto enc = from_set_cover({5, {{0, 1}, {2}, {3, 4}}});
  EXPECT_EQ(enc.matrix.rows(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(enc.clustering[i].dims, (std::vector<Index>{static_cast<Index>(i)}));
  }
  EXPECT_EQ(preserved_clusters(enc.matrix, enc.clustering,
                               OrderingSolution::identity(3, 5))
                .size(),
            3u);
}

TEST(FromSetCover, OverlapGivesThreeAtoms) {
  const auto enc = from_set_cover({3, {{0, 1}, {1, 2}}});
  ASSERT_EQ(enc.atoms.size(), 3u);
  EXPECT_EQ(enc.atoms[0], (std::vector<std::size_t>{0}));
  EXPECT_EQ(enc.atoms[1], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(enc.atoms[2], (std::vector<std::size_t>{1}));
  EXPECT_EQ(enc.matrix.at(1, 1), 1u);
  EXPECT_EQ(enc.matrix.at(0, 2), 0u);
  EXPECT_EQ(f_stats(enc.clustering).f1, 1u);
}

TEST(FromSetCover, NestedSetGetsPrivateRow) {
  // {0} owns no atom of its own: its only element also lies in set 0.
  const auto enc = from_set_cover({2, {{0, 1}, {0}}});
  EXPECT_EQ(enc.matrix.rows(), 3u);
  EXPECT_EQ(enc.clustering[1].dims, (std::vector<Index>{2}));
  EXPECT_EQ(f_stats(enc.clustering).f1, 1u);
}

TEST(FromSetCover, CoverMatchesBruteForce) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 150; ++t) {
    SetCoverInstance sc;
    sc.universe = 1 + static_cast<Index>(rng() % 8);
    for (std::size_t i = 0, k = 1 + rng() % 7; i < k; ++i) {
      sc.sets.push_back(oracle::random_subset(sc.universe, rng, 4));
    }
    const auto enc = from_set_cover(sc);
    EXPECT_EQ(f_stats(enc.clustering).f1, 1u);
    EXPECT_EQ(solve_exact_cover(enc.matrix, enc.clustering), oracle::min_set_cover(sc));
  }
}

TEST(FromSetCover, RejectsBadInput) {
  EXPECT_THROW(from_set_cover({0, {}}), Error);
  EXPECT_THROW(from_set_cover({2, {{}}}), Error);
  EXPECT_THROW(from_set_cover({2, {{2}}}), Error);
}

}  // namespace
}  // namespace hms
