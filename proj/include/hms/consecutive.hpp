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

// Consecutive-ones search over atom subsets.
//
// Atoms are placed left to right. A family of sets can all be intervals iff
// there is a placement in which every new atom lies in every set that has
// been started but not finished. Whether such a completion exists depends only
// on the set of atoms already placed, so reachability is memoized over the
// 2^|atoms| placed-sets.

#ifndef HMS_CONSECUTIVE_HPP_
#define HMS_CONSECUTIVE_HPP_

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hms/error.hpp"
#include "hms/model.hpp"

namespace hms::interval {

using Mask = std::uint64_t;

inline constexpr std::size_t kDefaultMaxAtoms = 24;

class ConsecutiveOnes {
 public:
  explicit ConsecutiveOnes(std::size_t max_atoms = kDefaultMaxAtoms)
      : max_atoms_(max_atoms) {}

  // Lexicographically smallest ordering of the atoms used by `sets` that
  // makes every set an interval, or nullopt. Atoms outside the union of the
  // sets are not part of the result.
  std::optional<std::vector<int>> order(std::span<const Mask> sets) {
    Mask universe = 0;
    for (Mask s : sets) universe |= s;
    atoms_.clear();
    for (int a = 0; a < 64; ++a) {
      if (universe >> a & 1) atoms_.push_back(a);
    }
    if (atoms_.size() > max_atoms_) {
      throw Error(ErrorKind::kBudgetExceeded,
                  std::to_string(atoms_.size()) +
                      " atoms exceed the consecutive-ones budget of " +
                      std::to_string(max_atoms_));
    }
    // Re-express the sets over compact atom positions.
    compact_.clear();
    for (Mask s : sets) {
      Mask c = 0;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (s >> atoms_[i] & 1) c |= Mask{1} << i;
      }
      if (c != 0) compact_.push_back(c);
    }
    full_ = atoms_.empty() ? 0 : (Mask{1} << atoms_.size()) - 1;
    memo_.assign(std::size_t{1} << atoms_.size(), 0);
    if (!reach(0)) return std::nullopt;

    std::vector<int> result;
    Mask placed = 0;
    while (placed != full_) {
      const Mask cand = candidates(placed);
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Mask bit = Mask{1} << i;
        if ((cand & bit) && reach(placed | bit)) {
          result.push_back(atoms_[i]);
          placed |= bit;
          break;
        }
      }
    }
    return result;
  }

  bool feasible(std::span<const Mask> sets) { return order(sets).has_value(); }

  // Memo states expanded over the lifetime of this object.
  std::uint64_t states_visited() const { return states_; }

 private:
  Mask candidates(Mask placed) const {
    Mask required = full_ & ~placed;
    for (Mask s : compact_) {
      const Mask in = s & placed;
      if (in != 0 && in != s) required &= s;
    }
    return required;
  }

  bool reach(Mask placed) {
    if (placed == full_) return true;
    auto& slot = memo_[placed];
    if (slot != 0) return slot == 1;
    ++states_;
    Mask cand = candidates(placed);
    bool ok = false;
    while (cand != 0 && !ok) {
      const Mask bit = cand & (~cand + 1);
      ok = reach(placed | bit);
      cand &= cand - 1;
    }
    memo_[placed] = ok ? 1 : 2;
    return ok;
  }

  std::size_t max_atoms_;
  std::vector<int> atoms_;
  std::vector<Mask> compact_;
  Mask full_ = 0;
  std::vector<std::uint8_t> memo_;
  std::uint64_t states_ = 0;
};

// Orders elements [0, n) so that every given set (at most 64) is contiguous.
// Elements sharing a membership signature form one atom and stay together in
// ascending index order; atoms are numbered by their smallest element, and
// elements in no set are appended at the end.
inline std::optional<std::vector<Index>> arrange(
    Index n, std::span<const std::vector<Index>* const> sets,
    ConsecutiveOnes& engine) {
  if (sets.size() > 64) {
    throw Error(ErrorKind::kBudgetExceeded, "more than 64 sets on one axis");
  }
  std::vector<Mask> sig(n, 0);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (Index e : *sets[j]) sig[e] |= Mask{1} << j;
  }
  std::vector<Mask> atom_sig;
  std::vector<std::vector<Index>> atom_elems;
  std::vector<Index> free_elems;
  for (Index e = 0; e < n; ++e) {
    if (sig[e] == 0) {
      free_elems.push_back(e);
      continue;
    }
    std::size_t a = 0;
    while (a < atom_sig.size() && atom_sig[a] != sig[e]) ++a;
    if (a == atom_sig.size()) {
      if (a == 64) {
        throw Error(ErrorKind::kBudgetExceeded, "more than 64 atoms on one axis");
      }
      atom_sig.push_back(sig[e]);
      atom_elems.emplace_back();
    }
    atom_elems[a].push_back(e);
  }
  std::vector<Mask> set_masks(sets.size(), 0);
  for (std::size_t a = 0; a < atom_sig.size(); ++a) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (atom_sig[a] >> j & 1) set_masks[j] |= Mask{1} << a;
    }
  }
  auto atom_order = engine.order(set_masks);
  if (!atom_order) return std::nullopt;
  std::vector<Index> out;
  out.reserve(n);
  for (int a : *atom_order) {
    out.insert(out.end(), atom_elems[a].begin(), atom_elems[a].end());
  }
  out.insert(out.end(), free_elems.begin(), free_elems.end());
  return out;
}

}  // namespace hms::interval

#endif  // HMS_CONSECUTIVE_HPP_
