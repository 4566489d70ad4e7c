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

// In-process simulation of the massively parallel computation model: L
// machines holding at most m records each, alternating local computation and
// shuffles. A round is one shuffle.

#ifndef HMS_MPC_HPP_
#define HMS_MPC_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hms/error.hpp"
#include "hms/metrics.hpp"
#include "hms/model.hpp"

namespace hms::mpc {

struct Record {
  std::int64_t key = 0;
  std::array<std::int64_t, 4> val{};

  friend bool operator==(const Record&, const Record&) = default;
  friend auto operator<=>(const Record&, const Record&) = default;
};

struct MpcConfig {
  double eta = 0.5;
  std::size_t memory = 1;    // m, records per machine
  std::size_t machines = 1;  // L
  std::size_t round_budget = 8;

  // m = ceil(n^eta); L = ceil(slack * n / m). slack >= 1 leaves headroom for
  // uneven key routing while keeping total memory linear in n.
  static MpcConfig for_input(std::size_t n, double eta,
                             std::size_t round_budget = 8, double slack = 2.0) {
    if (!(eta > 0.0 && eta < 1.0)) {
      throw Error(ErrorKind::kParameter, "eta must lie in (0, 1)");
    }
    if (round_budget < 1 || slack < 1.0) {
      throw Error(ErrorKind::kParameter, "round budget >= 1 and slack >= 1");
    }
    MpcConfig c;
    c.eta = eta;
    c.round_budget = round_budget;
    const double nd = static_cast<double>(std::max<std::size_t>(n, 1));
    c.memory = static_cast<std::size_t>(std::ceil(std::pow(nd, eta) - 1e-9));
    c.memory = std::max<std::size_t>(c.memory, 1);
    c.machines = static_cast<std::size_t>(
        std::ceil(slack * nd / static_cast<double>(c.memory) - 1e-9));
    c.machines = std::max<std::size_t>(c.machines, 1);
    return c;
  }
};

enum class Status { kOk, kMemoryExceeded, kRoundBudgetExceeded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kOk: return "ok";
    case Status::kMemoryExceeded: return "memory_exceeded";
    case Status::kRoundBudgetExceeded: return "round_budget_exceeded";
  }
  return "unknown";
}

struct MpcTrace {
  std::size_t rounds = 0;
  // highwater[i][j]: peak records on machine j during round i (round 0 is the
  // initial load and the local work before the first shuffle).
  std::vector<std::vector<std::size_t>> highwater;
  std::vector<std::size_t> shuffle_volume;  // records moved per shuffle
  Status status = Status::kOk;
  std::string message;

  std::size_t peak() const {
    std::size_t p = 0;
    for (const auto& r : highwater) {
      for (auto v : r) p = std::max(p, v);
    }
    return p;
  }

  std::string to_text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < highwater.size(); ++i) {
      for (std::size_t j = 0; j < highwater[i].size(); ++j) {
        os << "round " << i << " machine " << j << " records "
           << highwater[i][j] << '\n';
      }
    }
    return os.str();
  }
};

using LocalFn =
    std::function<std::vector<Record>(std::size_t machine, std::vector<Record>)>;
using RouteFn = std::function<std::size_t(const Record&)>;

struct Local {
  LocalFn fn;
};
struct Shuffle {
  RouteFn route;
};
using Phase = std::variant<Local, Shuffle>;
using Program = std::vector<Phase>;

class Runtime {
 public:
  // Records are loaded in contiguous chunks of ceil(n / L).
  Runtime(const MpcConfig& config, std::vector<Record> records)
      : cfg_(config), data_(config.machines) {
    const std::size_t n = records.size();
    const std::size_t chunk = (n + cfg_.machines - 1) / cfg_.machines;
    for (std::size_t i = 0; i < n; ++i) {
      data_[chunk == 0 ? 0 : i / chunk].push_back(records[i]);
    }
    trace_.highwater.emplace_back(cfg_.machines, 0);
    observe();
  }

  bool ok() const { return trace_.status == Status::kOk; }
  const MpcTrace& trace() const { return trace_; }
  const MpcConfig& config() const { return cfg_; }

  // Machine-local work. Machines are processed in id order; they share no
  // state, so any order gives the same result.
  void local(const LocalFn& fn) {
    if (!ok()) return;
    for (std::size_t j = 0; j < data_.size(); ++j) {
      data_[j] = fn(j, std::move(data_[j]));
    }
    observe();
  }

  // Barrier plus all-to-all exchange. Each destination receives records in
  // (source machine, record order) order.
  void shuffle(const RouteFn& route) {
    if (!ok()) return;
    if (trace_.rounds == cfg_.round_budget) {
      trace_.status = Status::kRoundBudgetExceeded;
      trace_.message = "round budget of " + std::to_string(cfg_.round_budget) +
                       " exhausted";
      return;
    }
    std::vector<std::vector<Record>> next(cfg_.machines);
    std::size_t moved = 0;
    for (std::size_t j = 0; j < data_.size(); ++j) {
      for (Record& r : data_[j]) {
        const std::size_t dest = route(r);
        if (dest >= cfg_.machines) {
          throw Error(ErrorKind::kParameter, "route to a machine that does not exist");
        }
        if (dest != j) ++moved;
        next[dest].push_back(std::move(r));
      }
    }
    data_ = std::move(next);
    ++trace_.rounds;
    trace_.shuffle_volume.push_back(moved);
    trace_.highwater.emplace_back(cfg_.machines, 0);
    observe();
  }

  std::vector<Record> collect() const {
    std::vector<Record> out;
    for (const auto& d : data_) out.insert(out.end(), d.begin(), d.end());
    return out;
  }

 private:
  void observe() {
    auto& hw = trace_.highwater.back();
    for (std::size_t j = 0; j < data_.size(); ++j) {
      hw[j] = std::max(hw[j], data_[j].size());
      if (data_[j].size() > cfg_.memory && ok()) {
        trace_.status = Status::kMemoryExceeded;
        trace_.message = "machine " + std::to_string(j) + " holds " +
                         std::to_string(data_[j].size()) + " records, limit " +
                         std::to_string(cfg_.memory);
      }
    }
  }

  MpcConfig cfg_;
  std::vector<std::vector<Record>> data_;
  MpcTrace trace_;
};

struct RunResult {
  std::vector<Record> output;
  MpcTrace trace;
};

inline RunResult mpc_run(const Program& program, std::vector<Record> records,
                         const MpcConfig& config) {
  Runtime rt(config, std::move(records));
  for (const Phase& p : program) {
    if (const auto* l = std::get_if<Local>(&p)) {
      rt.local(l->fn);
    } else {
      rt.shuffle(std::get<Shuffle>(p).route);
    }
    if (!rt.ok()) break;
  }
  return {rt.collect(), rt.trace()};
}

// Sums val[0] over records that share a key; output sorted by key.
inline std::vector<Record> combine_by_key(std::vector<Record> in) {
  std::map<std::int64_t, std::int64_t> sum;
  for (const Record& r : in) sum[r.key] += r.val[0];
  std::vector<Record> out;
  out.reserve(sum.size());
  for (const auto& [k, v] : sum) out.push_back({k, {v, 0, 0, 0}});
  return out;
}

inline std::size_t modulo(std::int64_t key, std::size_t machines) {
  const auto m = static_cast<std::int64_t>(machines);
  return static_cast<std::size_t>(((key % m) + m) % m);
}

struct DenseBlock {
  Index row_block = 0;
  Index col_block = 0;
  std::uint64_t id = 0;  // row_block * col_blocks + col_block
  std::size_t count = 0;

  friend bool operator==(const DenseBlock&, const DenseBlock&) = default;
};

struct BlockCountResult {
  std::size_t side = 1;
  std::size_t threshold = 0;
  std::vector<DenseBlock> blocks;  // sorted by id
  MpcTrace trace;
};

// 10^floor(log10 sqrt(m)).
inline std::size_t block_side(std::size_t memory) {
  if (memory < 4) throw Error(ErrorKind::kParameter, "block counting needs m >= 4");
  const double e = std::floor(std::log10(std::sqrt(static_cast<double>(memory))) + 1e-12);
  return static_cast<std::size_t>(std::llround(std::pow(10.0, e)));
}

// Counts nonzeros per s x s block and keeps blocks holding at least s^2 / 2.
// Three rounds: index (shuffle partial counts by block id), count (shuffle
// totals by block row), filter (dense blocks land on the machine owning their
// id, so no machine has to hold the whole answer).
inline BlockCountResult block_count(const LabeledMatrix& m,
                                    const MpcConfig& config) {
  BlockCountResult res;
  res.side = block_side(config.memory);
  res.threshold = (res.side * res.side + 1) / 2;
  const auto s = static_cast<std::int64_t>(res.side);
  const std::int64_t col_blocks = (static_cast<std::int64_t>(m.cols()) + s - 1) / s;

  std::vector<Record> input;
  input.reserve(m.nnz());
  for (const Cell& c : m.cells()) input.push_back({0, {c.row, c.col, c.color, 0}});

  const std::size_t L = config.machines;
  const auto threshold = static_cast<std::int64_t>(res.threshold);
  Program program{
      Local{[&](std::size_t, std::vector<Record> in) {
        for (Record& r : in) {
          r.key = (r.val[0] / s) * col_blocks + r.val[1] / s;
          r.val = {1, 0, 0, 0};
        }
        return combine_by_key(std::move(in));
      }},
      Shuffle{[L](const Record& r) { return modulo(r.key, L); }},
      Local{[](std::size_t, std::vector<Record> in) {
        return combine_by_key(std::move(in));
      }},
      Shuffle{[L, col_blocks](const Record& r) {
        return modulo(r.key / col_blocks, L);
      }},
      Local{[threshold](std::size_t, std::vector<Record> in) {
        std::erase_if(in, [&](const Record& r) { return r.val[0] < threshold; });
        return in;
      }},
      Shuffle{[L](const Record& r) { return modulo(r.key, L); }},
  };
  auto run = mpc_run(program, std::move(input), config);
  res.trace = std::move(run.trace);
  if (res.trace.status != Status::kOk) return res;
  std::sort(run.output.begin(), run.output.end());
  for (const Record& r : run.output) {
    DenseBlock b;
    b.id = static_cast<std::uint64_t>(r.key);
    b.row_block = static_cast<Index>(r.key / col_blocks);
    b.col_block = static_cast<Index>(r.key % col_blocks);
    b.count = static_cast<std::size_t>(r.val[0]);
    res.blocks.push_back(b);
  }
  return res;
}

// Same answer computed directly.
inline std::vector<DenseBlock> block_count_serial(const LabeledMatrix& m,
                                                  std::size_t side) {
  const std::size_t col_blocks = (m.cols() + side - 1) / side;
  std::map<std::uint64_t, std::size_t> count;
  for (const Cell& c : m.cells()) ++count[(c.row / side) * col_blocks + c.col / side];
  std::vector<DenseBlock> out;
  for (const auto& [id, n] : count) {
    if (n * 2 < side * side) continue;
    out.push_back({static_cast<Index>(id / col_blocks),
                   static_cast<Index>(id % col_blocks), id, n});
  }
  return out;
}

struct VerifyResult {
  MetricsReport report;
  MpcTrace trace;
  bool certified = false;
  std::vector<std::vector<Index>> runs;  // connectivity only, in order
};

// Records loaded by the box verification program: one per nonzero, one per
// (cluster, point) and one per (cluster, dimension) membership.
inline std::size_t box_input_size(const LabeledMatrix& m, const Clustering& cl) {
  std::size_t n = m.nnz();
  for (const Cluster& c : cl) n += c.points.size() + c.dims.size();
  return n;
}

namespace detail {

enum Tag : std::int64_t { kCell, kPoint, kDim, kCandidate };

// Box predicate in three rounds. Round 1 joins cells with dimension
// memberships by row and yields (cluster, column, row position) candidates;
// round 2 joins them with point memberships by column, which makes them
// in-cluster cells; round 3 gathers, per cluster, pre-combined summaries.
// Summary keys are -1 - (3 * cluster + slot): slot 0 points and slot 1
// dimensions carry (lo, hi, count, supported); slot 2 carries runs (lo, hi)
// of row positions of supported dimensions.
inline std::vector<ClusterId> box_preserved_mpc(const LabeledMatrix& m,
                                                const Clustering& cl,
                                                const OrderingSolution& order,
                                                const MpcConfig& config,
                                                MpcTrace& trace) {
  const auto rpos = order.row_positions();
  const auto cpos = order.col_positions();
  std::vector<Record> in;
  for (const Cell& c : m.cells()) in.push_back({c.row, {kCell, c.row, c.col, c.color}});
  for (std::size_t i = 0; i < cl.size(); ++i) {
    const auto ci = static_cast<std::int64_t>(i);
    for (Index p : cl[i].points) in.push_back({p, {kPoint, ci, p, cpos[p]}});
    for (Index d : cl[i].dims) in.push_back({d, {kDim, ci, d, rpos[d]}});
  }
  const std::size_t L = config.machines;
  // Colors by cluster slot, known to every machine as program constants.
  std::vector<std::int64_t> color(cl.size());
  for (std::size_t i = 0; i < cl.size(); ++i) color[i] = cl[i].color;

  struct Summary {
    std::int64_t lo = INT64_MAX, hi = -1, n = 0, supported = 0;
    void add(std::int64_t pos, bool ok) {
      lo = std::min(lo, pos);
      hi = std::max(hi, pos);
      ++n;
      supported += ok ? 1 : 0;
    }
  };
  auto summary_key = [](std::int64_t ci, std::int64_t slot) { return -1 - (3 * ci + slot); };
  auto emit = [](const std::map<std::int64_t, Summary>& parts, std::vector<Record>& out) {
    for (const auto& [key, p] : parts) out.push_back({key, {p.lo, p.hi, p.n, p.supported}});
  };
  auto by_point = [L](std::int64_t p) { return modulo(-1 - p, L); };
  auto by_cluster = [L](std::int64_t key) { return modulo((-1 - key) / 3, L); };

  Program program{
      Shuffle{[L, by_point](const Record& r) {
        return r.val[0] == kPoint ? by_point(r.key) : modulo(r.key, L);
      }},
      Local{[&](std::size_t, std::vector<Record> in) {
        std::map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> of_row;
        for (const Record& r : in) {
          if (r.val[0] == kDim) of_row[r.val[2]].emplace_back(r.val[1], r.val[3]);
        }
        std::map<std::int64_t, Summary> parts;
        std::vector<Record> out;
        for (const Record& r : in) {
          if (r.val[0] == kPoint) {
            out.push_back(r);
          } else if (r.val[0] == kDim) {
            parts[summary_key(r.val[1], 1)].add(r.val[3], false);
          } else if (auto it = of_row.find(r.val[1]); it != of_row.end()) {
            for (const auto& [ci, pos] : it->second) {
              if (color[static_cast<std::size_t>(ci)] != r.val[3]) continue;
              out.push_back({r.val[2], {kCandidate, ci, r.val[2], pos}});
            }
          }
        }
        emit(parts, out);
        return out;
      }},
      Shuffle{[by_point, by_cluster](const Record& r) {
        return r.key < 0 ? by_cluster(r.key) : by_point(r.key);
      }},
      Local{[&](std::size_t, std::vector<Record> in) {
        std::set<std::pair<std::int64_t, std::int64_t>> members;
        for (const Record& r : in) {
          if (r.key >= 0 && r.val[0] == kPoint) members.emplace(r.val[1], r.val[2]);
        }
        std::set<std::pair<std::int64_t, std::int64_t>> hit;  // (cluster, column)
        std::map<std::int64_t, std::set<std::int64_t>> rows;  // cluster -> positions
        std::vector<Record> out;
        for (const Record& r : in) {
          if (r.key < 0) {
            out.push_back(r);
          } else if (r.val[0] == kCandidate && members.count({r.val[1], r.val[2]})) {
            hit.emplace(r.val[1], r.val[2]);
            rows[r.val[1]].insert(r.val[3]);
          }
        }
        std::map<std::int64_t, Summary> parts;
        for (const Record& r : in) {
          if (r.key >= 0 && r.val[0] == kPoint) {
            parts[summary_key(r.val[1], 0)].add(r.val[3], hit.count({r.val[1], r.val[2]}) > 0);
          }
        }
        emit(parts, out);
        for (const auto& [ci, pos] : rows) {
          auto it = pos.begin();
          while (it != pos.end()) {
            const std::int64_t lo = *it;
            std::int64_t hi = lo;
            for (++it; it != pos.end() && *it == hi + 1; ++it) hi = *it;
            out.push_back({summary_key(ci, 2), {lo, hi, 0, 0}});
          }
        }
        return out;
      }},
      Shuffle{[by_cluster](const Record& r) { return by_cluster(r.key); }},
      Local{[&](std::size_t, std::vector<Record> in) {
        std::map<std::int64_t, Summary> parts;
        std::map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> runs;
        for (const Record& r : in) {
          const std::int64_t k = -1 - r.key;
          if (k % 3 == 2) {
            runs[k / 3].emplace_back(r.val[0], r.val[1]);
            continue;
          }
          Summary& p = parts[k];
          p.lo = std::min(p.lo, r.val[0]);
          p.hi = std::max(p.hi, r.val[1]);
          p.n += r.val[2];
          p.supported += r.val[3];
        }
        std::vector<Record> out;
        for (auto& [ci, list] : runs) {
          auto pt = parts.find(3 * ci);
          auto dm = parts.find(3 * ci + 1);
          if (pt == parts.end() || dm == parts.end()) continue;
          std::sort(list.begin(), list.end());
          std::int64_t covered = 0, reach = -1;
          for (auto [lo, hi] : list) {
            lo = std::max(lo, reach + 1);
            if (hi >= lo) covered += hi - lo + 1;
            reach = std::max(reach, hi);
          }
          const Summary& p = pt->second;
          const Summary& d = dm->second;
          if (p.hi - p.lo + 1 == p.n && p.supported == p.n &&
              d.hi - d.lo + 1 == d.n && covered == d.n) {
            out.push_back({ci, {1, 0, 0, 0}});
          }
        }
        return out;
      }},
  };

  auto run = mpc_run(program, std::move(in), config);
  trace = std::move(run.trace);
  std::vector<ClusterId> out;
  for (const Record& r : run.output) out.push_back(cl[static_cast<std::size_t>(r.key)].id);
  std::sort(out.begin(), out.end());
  return out;
}

// Pointer jumping over the path of displayed columns: column i points at its
// left neighbor when the two agree. A record is (node, pointer, request flag,
// settled), where settled means the pointer is a root; only unsettled nodes
// ask their target for its pointer, so no machine answers more than one
// request per node it owns. Each jump is one shuffle.
inline std::vector<std::vector<Index>> runs_mpc(const LabeledMatrix& m,
                                                const OrderingSolution& order,
                                                const MpcConfig& config,
                                                MpcTrace& trace) {
  const auto& sigma = order.col_perm;
  std::vector<bool> join(sigma.size(), false);
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    join[i] = columns_agree(m, sigma[i - 1], sigma[i]);
  }
  std::vector<Record> in;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto pos = static_cast<std::int64_t>(i);
    const std::int64_t ptr = join[i] ? pos - 1 : pos;
    const bool settled = !join[i] || !join[i - 1];
    in.push_back({pos, {pos, ptr, 0, settled ? 1 : 0}});
  }
  Runtime rt(config, std::move(in));
  const std::size_t L = config.machines;
  while (rt.ok()) {
    bool done = true;
    for (const Record& r : rt.collect()) done = done && r.val[3] == 1;
    if (done) break;
    rt.local([](std::size_t, std::vector<Record> in) {
      std::vector<Record> out;
      for (const Record& r : in) {
        out.push_back({r.val[0], {r.val[0], r.val[1], 0, r.val[3]}});
        if (r.val[3] == 0) out.push_back({r.val[1], {r.val[0], r.val[1], 1, 0}});
      }
      return out;
    });
    rt.shuffle([L](const Record& r) { return modulo(r.key, L); });
    rt.local([](std::size_t, std::vector<Record> in) {
      std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> owner;
      for (const Record& r : in) {
        if (r.val[2] == 0) owner[r.val[0]] = {r.val[1], r.val[3]};
      }
      std::vector<Record> out;
      for (const Record& r : in) {
        if (r.val[2] == 0 && r.val[3] == 1) {
          out.push_back(r);
        } else if (r.val[2] == 1) {
          const auto [ptr, settled] = owner.at(r.val[1]);
          out.push_back({r.val[0], {r.val[0], ptr, 0, settled}});
        }
      }
      return out;
    });
  }
  trace = rt.trace();
  std::vector<std::vector<Index>> runs;
  if (!rt.ok()) return runs;
  std::map<std::int64_t, std::int64_t> p;
  for (const Record& r : rt.collect()) p[r.val[0]] = r.val[1];
  std::map<std::int64_t, std::size_t> slot;
  for (const auto& [pos, root] : p) {
    auto [it, inserted] = slot.emplace(root, runs.size());
    if (inserted) runs.emplace_back();
    runs[it->second].push_back(sigma[static_cast<std::size_t>(pos)]);
  }
  return runs;
}

}  // namespace detail

// Metrics with the preserved set computed under the round and memory limits
// of `config`. Everything except the preserved set comes from the serial
// path. `certified` is false when the run hits a limit; the report then
// carries the serial values with an empty preserved set.
inline VerifyResult verify_solution_mpc(const LabeledMatrix& m,
                                        const Clustering& clustering,
                                        const OrderingSolution& order,
                                        const MpcConfig& config,
                                        Predicate predicate = Predicate::kBox,
                                        RhoRule rule = RhoRule::kPointCount) {
  order.validate(m);
  clustering.check_bounds(m);
  VerifyResult res;
  res.report = compute_metrics(m, clustering, order, rule, predicate);
  std::vector<ClusterId> preserved;
  if (predicate == Predicate::kBox) {
    preserved = detail::box_preserved_mpc(m, clustering, order, config, res.trace);
  } else {
    res.runs = detail::runs_mpc(m, order, config, res.trace);
    if (res.trace.status == Status::kOk) {
      const auto rpos = order.row_positions();
      std::vector<std::size_t> run_of(m.cols());
      for (std::size_t r = 0; r < res.runs.size(); ++r) {
        for (Index c : res.runs[r]) run_of[c] = r;
      }
      for (const Cluster& c : clustering) {
        if (!::hms::detail::extent(c.dims, rpos).contiguous) continue;
        auto run = res.runs[run_of[c.points.front()]];
        std::sort(run.begin(), run.end());
        if (run == c.points) preserved.push_back(c.id);
      }
    }
  }
  res.certified = res.trace.status == Status::kOk;
  res.report.preserved = res.certified ? preserved : std::vector<ClusterId>{};
  res.report.k_percent =
      res.report.k == 0 ? 0.0
                        : static_cast<double>(res.report.preserved.size()) /
                              static_cast<double>(res.report.k);
  return res;
}

}  // namespace hms::mpc

#endif  // HMS_MPC_HPP_
