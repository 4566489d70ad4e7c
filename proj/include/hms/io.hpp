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

// Text formats.
//
// Matrix file:
//   hms-matrix v1
//   rows <R>
//   cols <C>
//   colors <K>
//   rowid <r> <name>          (optional, any number)
//   colid <c> <name>          (optional, any number)
//   label <c> <cluster-id>    (optional; checked against the cluster lines)
//   cluster <id> <color> dims <d...> pts <p...>
//   cell <r> <c> <color>
//
// Solution file:
//   hms-solution v1
//   rowperm <r...>
//   colperm <c...>
//   clusterorder <id...>      (optional)
//
// Set cover file:
//   universe <n>
//   set <id> <element...>     (elements in [0, n))
//
// Edge lists follow the SNAP convention: `u v [attr...]` per line, `#`
// starts a comment.

#ifndef HMS_IO_HPP_
#define HMS_IO_HPP_

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hms/error.hpp"
#include "hms/model.hpp"
#include "hms/reductions.hpp"

namespace hms::io {

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

template <class T>
T number(const std::string& s, std::size_t line) {
  T v{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(line) + ": expected a number, got '" + s + "'");
  }
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path);
}

// Lines with comments stripped, paired with 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> lines(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
  std::istringstream is(text);
  std::size_t no = 0;
  for (std::string line; std::getline(is, line);) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto t = tokens(line);
    if (!t.empty()) out.emplace_back(no, std::move(t));
  }
  return out;
}

}  // namespace detail

struct Instance {
  LabeledMatrix matrix;
  Clustering clustering;
};

inline std::string format_matrix(const LabeledMatrix& m, const Clustering& cl) {
  std::ostringstream os;
  os << "hms-matrix v1\nrows " << m.rows() << "\ncols " << m.cols()
     << "\ncolors " << m.num_colors() << '\n';
  for (std::size_t r = 0; r < m.row_ids().size(); ++r) {
    os << "rowid " << r << ' ' << m.row_ids()[r] << '\n';
  }
  for (std::size_t c = 0; c < m.col_ids().size(); ++c) {
    os << "colid " << c << ' ' << m.col_ids()[c] << '\n';
  }
  for (const Cluster& c : cl) {
    os << "cluster " << c.id << ' ' << c.color << " dims";
    for (Index d : c.dims) os << ' ' << d;
    os << " pts";
    for (Index p : c.points) os << ' ' << p;
    os << '\n';
  }
  for (const Cell& c : m.cells()) {
    os << "cell " << c.row << ' ' << c.col << ' ' << c.color << '\n';
  }
  return os.str();
}

inline Instance parse_matrix(const std::string& text) {
  using detail::number;
  const auto ls = detail::lines(text);
  // The version line is optional.
  const std::size_t first =
      !ls.empty() && ls[0].second == std::vector<std::string>{"hms-matrix", "v1"} ? 1 : 0;
  std::optional<Index> rows, cols;
  std::optional<Color> colors;
  std::map<Index, std::string> row_ids, col_ids;
  std::vector<Cluster> clusters;
  std::vector<Cell> cells;
  std::vector<std::pair<std::size_t, std::pair<Index, ClusterId>>> labels;
  for (std::size_t i = first; i < ls.size(); ++i) {
    const auto& [no, t] = ls[i];
    const std::string& kw = t[0];
    auto need = [&](std::size_t n) {
      if (t.size() != n) {
        throw Error(ErrorKind::kParse, "line " + std::to_string(no) + ": '" + kw +
                                           "' takes " + std::to_string(n - 1) +
                                           " fields");
      }
    };
    if (kw == "rows") {
      need(2);
      rows = number<Index>(t[1], no);
    } else if (kw == "cols") {
      need(2);
      cols = number<Index>(t[1], no);
    } else if (kw == "colors") {
      need(2);
      colors = number<Color>(t[1], no);
    } else if (kw == "rowid" || kw == "colid") {
      need(3);
      (kw == "rowid" ? row_ids : col_ids)[number<Index>(t[1], no)] = t[2];
    } else if (kw == "label") {
      need(3);
      labels.push_back({no, {number<Index>(t[1], no), number<ClusterId>(t[2], no)}});
    } else if (kw == "cell") {
      need(4);
      cells.push_back({number<Index>(t[1], no), number<Index>(t[2], no),
                       number<Color>(t[3], no)});
    } else if (kw == "cluster") {
      if (t.size() < 4 || t[3] != "dims") {
        throw Error(ErrorKind::kParse,
                    "line " + std::to_string(no) + ": cluster <id> <color> dims ... pts ...");
      }
      Cluster c;
      c.id = number<ClusterId>(t[1], no);
      c.color = number<Color>(t[2], no);
      std::size_t j = 4;
      for (; j < t.size() && t[j] != "pts"; ++j) c.dims.push_back(number<Index>(t[j], no));
      if (j == t.size()) {
        throw Error(ErrorKind::kParse, "line " + std::to_string(no) + ": missing 'pts'");
      }
      for (++j; j < t.size(); ++j) c.points.push_back(number<Index>(t[j], no));
      clusters.push_back(std::move(c));
    } else {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(no) + ": unknown keyword '" + kw + "'");
    }
  }
  if (!rows || !cols || !colors) {
    throw Error(ErrorKind::kParse, "missing rows, cols or colors header");
  }
  auto to_vec = [](const std::map<Index, std::string>& ids, Index n) {
    std::vector<std::string> out;
    if (ids.empty()) return out;
    if (ids.size() != n || ids.rbegin()->first != n - 1) {
      throw Error(ErrorKind::kParse, "ids must be given for every index or none");
    }
    for (const auto& [i, s] : ids) out.push_back(s);
    return out;
  };
  Instance inst{LabeledMatrix(*rows, *cols, *colors, std::move(cells),
                              to_vec(row_ids, *rows), to_vec(col_ids, *cols)),
                Clustering(std::move(clusters))};
  inst.clustering.check_bounds(inst.matrix);
  for (const auto& [no, lc] : labels) {
    const auto slot = inst.clustering.find(lc.second);
    if (!slot || !std::binary_search(inst.clustering[*slot].points.begin(),
                                     inst.clustering[*slot].points.end(), lc.first)) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(no) +
                                         ": label names a cluster that does not hold the column");
    }
  }
  return inst;
}

inline std::string format_solution(const OrderingSolution& s) {
  std::ostringstream os;
  os << "hms-solution v1\nrowperm";
  for (Index r : s.row_perm) os << ' ' << r;
  os << "\ncolperm";
  for (Index c : s.col_perm) os << ' ' << c;
  os << '\n';
  if (s.cluster_order) {
    os << "clusterorder";
    for (ClusterId id : *s.cluster_order) os << ' ' << id;
    os << '\n';
  }
  return os.str();
}

inline OrderingSolution parse_solution(const std::string& text) {
  using detail::number;
  const auto ls = detail::lines(text);
  if (ls.empty() || ls[0].second != std::vector<std::string>{"hms-solution", "v1"}) {
    throw Error(ErrorKind::kParse, "line 1: expected 'hms-solution v1'");
  }
  OrderingSolution s;
  bool have_rows = false, have_cols = false;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& [no, t] = ls[i];
    if (t[0] == "rowperm") {
      have_rows = true;
      for (std::size_t j = 1; j < t.size(); ++j) s.row_perm.push_back(number<Index>(t[j], no));
    } else if (t[0] == "colperm") {
      have_cols = true;
      for (std::size_t j = 1; j < t.size(); ++j) s.col_perm.push_back(number<Index>(t[j], no));
    } else if (t[0] == "clusterorder") {
      s.cluster_order.emplace();
      for (std::size_t j = 1; j < t.size(); ++j) {
        s.cluster_order->push_back(number<ClusterId>(t[j], no));
      }
    } else {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(no) + ": unknown keyword '" + t[0] + "'");
    }
  }
  if (!have_rows || !have_cols) throw Error(ErrorKind::kParse, "missing rowperm or colperm");
  return s;
}

inline SetCoverInstance parse_set_cover(const std::string& text) {
  using detail::number;
  const auto ls = detail::lines(text);
  if (ls.empty() || ls[0].second.size() != 2 || ls[0].second[0] != "universe") {
    throw Error(ErrorKind::kParse, "line 1: expected 'universe <n>'");
  }
  SetCoverInstance sc;
  sc.universe = number<Index>(ls[0].second[1], ls[0].first);
  std::map<ClusterId, std::vector<Index>> sets;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto& [no, t] = ls[i];
    if (t[0] != "set" || t.size() < 3) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(no) + ": expected 'set <id> <elements>'");
    }
    auto& s = sets[number<ClusterId>(t[1], no)];
    for (std::size_t j = 2; j < t.size(); ++j) s.push_back(number<Index>(t[j], no));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (auto& [id, s] : sets) sc.sets.push_back(std::move(s));
  sc.validate();
  return sc;
}

enum class LabelMode { kVertexCommunity, kEdgeAttributeFirst, kEdgeAttributeAll };

struct IngestSpec {
  std::string edges_path;
  std::optional<std::string> labels_path;  // `vertex community` lines
  bool directed = true;
  bool drop_no_outgoing = false;
  LabelMode mode = LabelMode::kVertexCommunity;
};

namespace detail {

// Vertex names sorted numerically when they are all integers.
inline void sort_names(std::vector<std::string>& names) {
  const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& s) {
    long long v;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
  });
  if (numeric) {
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      return std::stoll(a) < std::stoll(b);
    });
  } else {
    std::sort(names.begin(), names.end());
  }
}

// Attributes may be separated by whitespace or commas.
inline std::vector<std::string> split_attrs(const std::vector<std::string>& t) {
  std::vector<std::string> out;
  for (std::size_t i = 2; i < t.size(); ++i) {
    std::string cur;
    for (char ch : t[i]) {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

}  // namespace detail

// Square adjacency matrix: rows are sources, columns are targets, both over
// the same vertex list.
//
// kVertexCommunity: a cell is colored by the community of its column vertex;
// each community becomes a cluster whose points and dimensions are its
// vertices. Unlabeled vertices share one extra color and form no cluster.
//
// kEdgeAttributeFirst / kEdgeAttributeAll: a cell is colored by the edge's
// first attribute. Each attribute value is a cluster whose dimensions are the
// sources and points the targets of the edges carrying it (only the first
// attribute, or all of them).
inline Instance ingest(const IngestSpec& spec) {
  struct Edge {
    std::string u, v;
    std::vector<std::string> attrs;
  };
  std::vector<Edge> edges;
  for (const auto& [no, t] : detail::lines(detail::read_file(spec.edges_path))) {
    if (t.size() < 2) {
      throw Error(ErrorKind::kParse, spec.edges_path + ": line " + std::to_string(no) +
                                         ": expected 'u v [attrs]'");
    }
    Edge e{t[0], t[1], detail::split_attrs(t)};
    if (spec.mode != LabelMode::kVertexCommunity && e.attrs.empty()) {
      throw Error(ErrorKind::kParse, spec.edges_path + ": line " + std::to_string(no) +
                                         ": edge has no attribute");
    }
    edges.push_back(std::move(e));
    if (!spec.directed) edges.push_back({t[1], t[0], edges.back().attrs});
  }
  if (spec.drop_no_outgoing) {
    std::set<std::string> has_out;
    for (const Edge& e : edges) has_out.insert(e.u);
    std::erase_if(edges, [&](const Edge& e) { return !has_out.count(e.v); });
  }
  std::set<std::string> vs;
  for (const Edge& e : edges) {
    vs.insert(e.u);
    vs.insert(e.v);
  }
  std::vector<std::string> names(vs.begin(), vs.end());
  detail::sort_names(names);
  std::map<std::string, Index> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<Index>(i);
  const auto n = static_cast<Index>(names.size());

  std::vector<Cell> cells;
  std::set<std::pair<Index, Index>> seen;
  std::vector<Cluster> clusters;
  Color num_colors = 0;

  if (spec.mode == LabelMode::kVertexCommunity) {
    std::map<Index, std::string> community;
    std::vector<std::string> labels;
    if (spec.labels_path) {
      for (const auto& [no, t] : detail::lines(detail::read_file(*spec.labels_path))) {
        if (t.size() != 2) {
          throw Error(ErrorKind::kParse, *spec.labels_path + ": line " +
                                             std::to_string(no) + ": expected 'vertex label'");
        }
        auto it = index.find(t[0]);
        if (it == index.end()) {
          if (spec.drop_no_outgoing) continue;  // removed with its edges
          throw Error(ErrorKind::kInvalidInput, *spec.labels_path + ": line " +
                                                    std::to_string(no) + ": unknown vertex " + t[0]);
        }
        community[it->second] = t[1];
        labels.push_back(t[1]);
      }
    }
    detail::sort_names(labels);
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::map<std::string, Color> color_of;
    for (const auto& l : labels) color_of.emplace(l, static_cast<Color>(color_of.size() + 1));
    const bool any_unlabeled = community.size() < n;
    num_colors = static_cast<Color>(labels.size() + (any_unlabeled ? 1 : 0));
    const Color unlabeled = static_cast<Color>(labels.size() + 1);
    for (const Edge& e : edges) {
      const Index r = index[e.u], c = index[e.v];
      if (!seen.insert({r, c}).second) continue;
      auto it = community.find(c);
      cells.push_back({r, c, it == community.end() ? unlabeled : color_of[it->second]});
    }
    std::map<std::string, std::vector<Index>> members;
    for (const auto& [v, l] : community) members[l].push_back(v);
    for (const auto& l : labels) {
      Cluster cl;
      long long id = 0;
      auto [p, ec] = std::from_chars(l.data(), l.data() + l.size(), id);
      cl.id = (ec == std::errc() && p == l.data() + l.size())
                  ? id
                  : static_cast<ClusterId>(color_of[l]);
      cl.color = color_of[l];
      cl.points = members[l];
      cl.dims = members[l];
      clusters.push_back(std::move(cl));
    }
  } else {
    std::vector<std::string> labels;
    for (const Edge& e : edges) labels.insert(labels.end(), e.attrs.begin(), e.attrs.end());
    detail::sort_names(labels);
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::map<std::string, Color> color_of;
    for (const auto& l : labels) color_of.emplace(l, static_cast<Color>(color_of.size() + 1));
    num_colors = static_cast<Color>(labels.size());
    std::map<std::string, std::pair<std::set<Index>, std::set<Index>>> members;
    for (const Edge& e : edges) {
      const Index r = index[e.u], c = index[e.v];
      if (seen.insert({r, c}).second) cells.push_back({r, c, color_of[e.attrs.front()]});
      const std::size_t upto = spec.mode == LabelMode::kEdgeAttributeAll ? e.attrs.size() : 1;
      for (std::size_t a = 0; a < upto; ++a) {
        auto& [dims, pts] = members[e.attrs[a]];
        dims.insert(r);
        pts.insert(c);
      }
    }
    for (const auto& l : labels) {
      auto it = members.find(l);
      if (it == members.end()) continue;
      Cluster cl;
      long long id = 0;
      auto [p, ec] = std::from_chars(l.data(), l.data() + l.size(), id);
      cl.id = (ec == std::errc() && p == l.data() + l.size())
                  ? id
                  : static_cast<ClusterId>(color_of[l]);
      cl.color = color_of[l];
      cl.dims.assign(it->second.first.begin(), it->second.first.end());
      cl.points.assign(it->second.second.begin(), it->second.second.end());
      clusters.push_back(std::move(cl));
    }
  }
  return {LabeledMatrix(n, n, num_colors, std::move(cells), names, names),
          Clustering(std::move(clusters))};
}

inline Instance read_matrix(const std::string& path) {
  return parse_matrix(detail::read_file(path));
}
inline void write_matrix(const std::string& path, const LabeledMatrix& m,
                         const Clustering& cl) {
  detail::write_file(path, format_matrix(m, cl));
}
inline OrderingSolution read_solution(const std::string& path) {
  return parse_solution(detail::read_file(path));
}
inline void write_solution(const std::string& path, const OrderingSolution& s) {
  detail::write_file(path, format_solution(s));
}

}  // namespace hms::io

#endif  // HMS_IO_HPP_
