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


// hms: command-line front end for the heat map sorting library.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 budget or
// feasibility error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hms/hms.hpp"
#include "json.hpp"

namespace {

using hms::Error;
using hms::ErrorKind;
using json = nlohmann::ordered_json;

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kBudget = 3;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter:
      return kUsage;
    case ErrorKind::kBudgetExceeded:
    case ErrorKind::kTooManyClusters:
    case ErrorKind::kEmptyAfterFilter:
    case ErrorKind::kDegenerateInstance:
      return kBudget;
    default:
      return kData;
  }
}

// Ordered key/value report printed as `key=value` lines or one JSON object.
// Text lines listed in `lines` follow the keys verbatim.
struct Report {
  json fields = json::object();
  std::vector<std::string> lines;
  int status = 0;

  void print(const std::string& format) const {
    if (format == "json") {
      json out = fields;
      if (!lines.empty()) out["lines"] = lines;
      std::cout << out.dump(2) << '\n';
      return;
    }
    for (const auto& [key, value] : fields.items()) {
      std::cout << key << '=' << text(value) << '\n';
    }
    for (const auto& l : lines) std::cout << l << '\n';
  }

  static std::string text(const json& v) {
    if (v.is_number_float()) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(6) << v.get<double>();
      return os.str();
    }
    if (v.is_array()) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += text(v[i]);
      }
      return out;
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }
};

void add_metrics(Report& r, const hms::MetricsReport& m) {
  r.fields["preserved"] = m.preserved;
  r.fields["k_percent"] = m.k_percent;
  if (m.rho_defined) {
    r.fields["rho"] = m.rho;
  } else {
    r.fields["rho"] = "undefined";
  }
  r.fields["h"] = m.h;
  r.fields["f1"] = m.f1;
  r.fields["f2"] = m.f2;
}

hms::OrderingSolution load_order(const std::string& path, const hms::LabeledMatrix& m) {
  if (path.empty()) return hms::OrderingSolution::identity(m.rows(), m.cols());
  auto s = hms::io::read_solution(path);
  s.validate(m);
  return s;
}

hms::RhoRule rho_rule(const std::string& s) {
  return s == "box-cells" ? hms::RhoRule::kBoxCells : hms::RhoRule::kPointCount;
}

hms::Predicate predicate(const std::string& s) {
  return s == "connectivity" ? hms::Predicate::kConnectivity : hms::Predicate::kBox;
}

hms::Metric metric(const std::string& s) {
  return s == "linf" ? hms::Metric::kLinf : hms::Metric::kEuclidean;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HMS_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::kParameter, std::string("HMS_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

void add_trace(Report& r, const hms::mpc::MpcTrace& t, bool lines) {
  r.fields["rounds"] = t.rounds;
  r.fields["status"] = hms::mpc::to_string(t.status);
  r.fields["peak"] = t.peak();
  if (!t.message.empty()) r.fields["message"] = t.message;
  if (!lines) return;
  std::istringstream is(t.to_text());
  for (std::string l; std::getline(is, l);) r.lines.push_back(l);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat map sorting: reorder rows and columns so clusters stay boxes."};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed_flag;
  std::string format = "text";
  app.add_option("--seed", seed_flag, "Random seed (falls back to HMS_SEED, then 0)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::function<Report()> action;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Edge list (and labels) to a matrix file");
  std::string edges, labels, label_mode = "vertex-community", ingest_out;
  bool undirected = false, drop_no_outgoing = false;
  ingest->add_option("--edges", edges, "SNAP edge list")->required();
  ingest->add_option("--labels", labels, "`vertex community` lines");
  ingest->add_option("--label-mode", label_mode)
      ->check(CLI::IsMember({"vertex-community", "edge-attribute-first", "edge-attribute-all"}));
  ingest->add_flag("--undirected", undirected, "Add the reverse of every edge");
  ingest->add_flag("--drop-no-outgoing", drop_no_outgoing,
                   "Remove vertices without outgoing edges");
  ingest->add_option("-o,--out", ingest_out, "Matrix file to write")->required();
  ingest->callback([&] {
    action = [&] {
      hms::io::IngestSpec spec;
      spec.edges_path = edges;
      if (!labels.empty()) spec.labels_path = labels;
      spec.directed = !undirected;
      spec.drop_no_outgoing = drop_no_outgoing;
      spec.mode = label_mode == "edge-attribute-first" ? hms::io::LabelMode::kEdgeAttributeFirst
                  : label_mode == "edge-attribute-all" ? hms::io::LabelMode::kEdgeAttributeAll
                                                       : hms::io::LabelMode::kVertexCommunity;
      const auto inst = hms::io::ingest(spec);
      hms::io::write_matrix(ingest_out, inst.matrix, inst.clustering);
      Report r;
      r.fields["rows"] = inst.matrix.rows();
      r.fields["cols"] = inst.matrix.cols();
      r.fields["nnz"] = inst.matrix.nnz();
      r.fields["clusters"] = inst.clustering.size();
      r.fields["colors"] = inst.matrix.num_colors();
      return r;
    };
  });

  // sort
  auto* sort = app.add_subcommand("sort", "Compute a row and column order");
  std::string sort_matrix, algo = "greedy", sort_out, sort_rule = "point-count";
  hms::ExactLimits limits;
  std::size_t fpt_budget = hms::fpt::kDefaultBudget;
  hms::RectConfig rect;
  std::optional<double> rect_radius;
  sort->add_option("--matrix", sort_matrix, "Matrix file")->required();
  sort->add_option("--algo", algo)->check(CLI::IsMember({"exact", "fpt", "greedy", "rect"}));
  sort->add_option("-o,--out", sort_out, "Solution file to write");
  sort->add_option("--rho-rule", sort_rule)->check(CLI::IsMember({"point-count", "box-cells"}));
  sort->add_option("--min-cluster-size", limits.min_cluster_size, "exact: minimum points");
  sort->add_option("--max-clusters", limits.max_clusters, "exact: cluster limit");
  sort->add_option("--time-budget", limits.time_budget_seconds, "exact: seconds, 0 = none");
  sort->add_option("--atom-budget", fpt_budget, "fpt: maximum atoms per axis");
  sort->add_option("--k", rect.k, "rect: groups per axis");
  sort->add_option("--radius", rect_radius, "rect: DBSCAN radius (single linkage if absent)");
  sort->add_option("--min-points", rect.min_points, "rect: DBSCAN min points");
  sort->add_option("--window", rect.intervals.window, "rect: median window");
  sort->add_option("--dominance", rect.intervals.dominance, "rect: dominance threshold");
  sort->add_option("--min-size", rect.intervals.min_cluster_size, "rect: minimum run length");
  sort->callback([&] {
    action = [&] {
      const auto inst = hms::io::read_matrix(sort_matrix);
      const auto& m = inst.matrix;
      const auto rule = rho_rule(sort_rule);
      Report r;
      r.fields["algo"] = algo;
      hms::OrderingSolution sol;
      if (algo == "exact") {
        const auto res = hms::solve_exact(m, inst.clustering, limits, rule);
        sol = res.solution;
        r.fields["kept"] = res.kept.size();
        r.fields["search_space"] = res.search_space;
        r.fields["families_examined"] = res.families_examined;
        r.fields["truncated"] = res.truncated;
        if (res.truncated) r.status = kBudget;
      } else if (algo == "fpt") {
        const auto res = hms::fpt::fpt_sort(m, inst.clustering, fpt_budget);
        sol = res.solution;
        r.fields["row_weight"] = res.rows.weight;
        r.fields["row_atoms"] = res.rows.atoms;
        r.fields["col_weight"] = res.cols.weight;
        r.fields["col_atoms"] = res.cols.atoms;
        r.fields["search_nodes"] = res.rows.search_nodes + res.cols.search_nodes;
      } else if (algo == "greedy") {
        const auto res = hms::greedy_approx(m, inst.clustering, rule);
        sol = res.solution;
        r.fields["family_layout"] = res.family_layout;
      } else {
        rect.radius = rect_radius;
        rect.seed = resolve_seed(seed_flag);
        const auto res = hms::rect_sort(m, rect);
        sol = res.solution;
        r.fields["row_radius"] = res.row_radius;
        r.fields["col_radius"] = res.col_radius;
        r.fields["interval_rho"] = res.fit.rho;
        r.fields["interval_outliers"] = res.fit.outliers;
      }
      if (!sort_out.empty()) hms::io::write_solution(sort_out, sol);
      add_metrics(r, hms::compute_metrics(m, inst.clustering, sol, rule));
      return r;
    };
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Report preserved clusters, rho, h, f1, f2");
  std::string met_matrix, met_solution, met_rule = "point-count", met_pred = "box";
  metrics->add_option("--matrix", met_matrix, "Matrix file")->required();
  metrics->add_option("--solution", met_solution, "Solution file (identity if absent)");
  metrics->add_option("--rho-rule", met_rule)->check(CLI::IsMember({"point-count", "box-cells"}));
  metrics->add_option("--predicate", met_pred)->check(CLI::IsMember({"box", "connectivity"}));
  metrics->callback([&] {
    action = [&] {
      const auto inst = hms::io::read_matrix(met_matrix);
      const auto order = load_order(met_solution, inst.matrix);
      Report r;
      add_metrics(r, hms::compute_metrics(inst.matrix, inst.clustering, order,
                                          rho_rule(met_rule), predicate(met_pred)));
      return r;
    };
  });

  // render
  auto* render = app.add_subcommand("render", "Write the ordered matrix as an ASCII PPM");
  std::string ren_matrix, ren_solution, ren_out;
  render->add_option("--matrix", ren_matrix, "Matrix file")->required();
  render->add_option("--solution", ren_solution, "Solution file (identity if absent)");
  render->add_option("-o,--out", ren_out, "PPM file to write")->required();
  render->callback([&] {
    action = [&] {
      const auto inst = hms::io::read_matrix(ren_matrix);
      const auto order = load_order(ren_solution, inst.matrix);
      hms::write_ppm(ren_out, inst.matrix, order);
      Report r;
      r.fields["width"] = inst.matrix.cols();
      r.fields["height"] = inst.matrix.rows();
      r.fields["colored"] = inst.matrix.nnz();
      return r;
    };
  });

  // lsh
  auto* lsh = app.add_subcommand("lsh", "Bit-sampling LSH over the columns");
  std::string lsh_matrix, lsh_out, lsh_subspaces = "AUTO", lsh_dims = "AUTO";
  double lsh_c = 5.0;
  bool lsh_replace = false, lsh_buckets = false;
  lsh->add_option("--matrix", lsh_matrix, "Matrix file")->required();
  lsh->add_option("--c", lsh_c, "Approximation factor");
  lsh->add_option("--subspaces", lsh_subspaces, "Number of subspaces or AUTO");
  lsh->add_option("--dims", lsh_dims, "Rows sampled per subspace or AUTO");
  lsh->add_flag("--with-replacement", lsh_replace, "Sample rows with replacement");
  lsh->add_flag("--buckets", lsh_buckets, "List the bucket of every column");
  lsh->add_option("-o,--out", lsh_out, "Reduced matrix file to write");
  lsh->callback([&] {
    action = [&] {
      auto count = [](const std::string& v, const char* name) -> std::optional<std::size_t> {
        if (v == "AUTO") return std::nullopt;
        try {
          std::size_t used = 0;
          const auto n = std::stoull(v, &used);
          if (used == v.size()) return n;
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::kParameter, std::string(name) + " must be a count or AUTO");
      };
      const auto inst = hms::io::read_matrix(lsh_matrix);
      hms::LshConfig cfg;
      cfg.c = lsh_c;
      cfg.subspaces = count(lsh_subspaces, "--subspaces");
      cfg.dims_per_subspace = count(lsh_dims, "--dims");
      cfg.seed = resolve_seed(seed_flag);
      cfg.with_replacement = lsh_replace;
      const auto res = hms::lsh_reduce(inst.matrix, cfg);
      const auto groups = hms::lsh_groups(res, inst.matrix.cols());
      std::size_t largest = 0;
      for (const auto& g : groups) largest = std::max(largest, g.size());
      Report r;
      r.fields["subspaces"] = res.params.subspaces;
      r.fields["dims_per_subspace"] = res.params.dims_per_subspace;
      r.fields["reduced_rows"] = res.reduced.rows();
      r.fields["groups"] = groups.size();
      r.fields["largest_group"] = largest;
      if (lsh_buckets) {
        for (std::size_t s = 0; s < res.bucket.size(); ++s) {
          for (std::size_t c = 0; c < res.bucket[s].size(); ++c) {
            r.lines.push_back("bucket subspace " + std::to_string(s) + " col " +
                              std::to_string(c) + " id " + std::to_string(res.bucket[s][c]));
          }
        }
      }
      if (!lsh_out.empty()) hms::io::write_matrix(lsh_out, res.reduced, hms::Clustering{});
      return r;
    };
  });

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Cell clustering baselines");
  baseline->require_subcommand(1);
  std::string base_matrix, base_solution, base_metric;
  double base_radius = 0.0;
  std::size_t base_minpts = 1, base_k = 6;
  auto* dbscan = baseline->add_subcommand("dbscan", "DBSCAN over nonzero cells");
  auto* kmed = baseline->add_subcommand("kmedoids", "k-medoids over nonzero cells");
  for (auto* sub : {dbscan, kmed}) {
    sub->add_option("--matrix", base_matrix, "Matrix file")->required();
    sub->add_option("--solution", base_solution, "Cells are placed by this order");
  }
  dbscan->add_option("--radius", base_radius, "Neighborhood radius")->default_val(10.0);
  dbscan->add_option("--minpts", base_minpts, "Minimum neighbors, self included");
  dbscan->add_option("--metric", base_metric, "Distance")
      ->check(CLI::IsMember({"linf", "euclidean"}))
      ->default_val("linf");
  kmed->add_option("--k", base_k, "Number of medoids");
  kmed->add_option("--radius", base_radius, "Outlier radius")->default_val(100.0);
  kmed->add_option("--metric", base_metric, "Distance")
      ->check(CLI::IsMember({"linf", "euclidean"}))
      ->default_val("euclidean");
  auto baseline_action = [&](bool use_dbscan) {
    action = [&, use_dbscan] {
      const auto inst = hms::io::read_matrix(base_matrix);
      const auto order = load_order(base_solution, inst.matrix);
      const auto shown = hms::apply(inst.matrix, order);
      const auto pts = hms::cell_points(shown);
      std::vector<std::int64_t> labels;
      if (use_dbscan) {
        hms::DbscanConfig cfg;
        cfg.radius = base_radius;
        cfg.min_points = base_minpts;
        cfg.metric = metric(base_metric);
        labels = hms::dbscan(pts, cfg).labels;
      } else {
        labels = hms::kmedoids(pts, base_k, base_radius, resolve_seed(seed_flag),
                               metric(base_metric))
                     .assignment;
      }
      const auto s = hms::score_cell_groups(shown, labels);
      Report r;
      r.fields["groups"] = s.groups;
      r.fields["outliers"] = s.outliers;
      r.fields["kept"] = s.kept;
      r.fields["recovered"] = s.recovered;
      r.fields["colors"] = shown.num_colors();
      r.fields["rho"] = s.rho;
      return r;
    };
  };
  dbscan->callback([&] { baseline_action(true); });
  kmed->callback([&] { baseline_action(false); });

  // mpc
  auto* mpc = app.add_subcommand("mpc", "Simulated massively parallel programs");
  mpc->require_subcommand(1);
  std::string mpc_matrix, mpc_solution, mpc_pred = "box";
  double eta = 0.5, slack = 2.0;
  std::size_t rounds = 8;
  bool show_trace = false;
  auto* blocks = mpc->add_subcommand("blocks", "Dense block counting");
  auto* verify = mpc->add_subcommand("verify", "Verify a solution under round limits");
  for (auto* sub : {blocks, verify}) {
    sub->add_option("--matrix", mpc_matrix, "Matrix file")->required();
    sub->add_option("--eta", eta, "Memory exponent, m = ceil(n^eta)");
    sub->add_option("--slack", slack, "Machines = ceil(slack * n / m)");
    sub->add_option("--rounds", rounds, "Round budget");
    sub->add_flag("--trace", show_trace, "Print per-round machine highwaters");
  }
  verify->add_option("--solution", mpc_solution, "Solution file (identity if absent)");
  verify->add_option("--predicate", mpc_pred)->check(CLI::IsMember({"box", "connectivity"}));
  blocks->callback([&] {
    action = [&] {
      const auto inst = hms::io::read_matrix(mpc_matrix);
      const auto cfg =
          hms::mpc::MpcConfig::for_input(inst.matrix.nnz(), eta, rounds, slack);
      const auto res = hms::mpc::block_count(inst.matrix, cfg);
      Report r;
      r.fields["memory"] = cfg.memory;
      r.fields["machines"] = cfg.machines;
      r.fields["side"] = res.side;
      r.fields["threshold"] = res.threshold;
      r.fields["blocks"] = res.blocks.size();
      add_trace(r, res.trace, show_trace);
      for (const auto& b : res.blocks) {
        r.lines.push_back("block row " + std::to_string(b.row_block) + " col " +
                          std::to_string(b.col_block) + " count " + std::to_string(b.count));
      }
      if (res.trace.status != hms::mpc::Status::kOk) r.status = kBudget;
      return r;
    };
  });
  verify->callback([&] {
    action = [&] {
      const auto inst = hms::io::read_matrix(mpc_matrix);
      const auto order = load_order(mpc_solution, inst.matrix);
      const auto n = mpc_pred == "box"
                         ? hms::mpc::box_input_size(inst.matrix, inst.clustering)
                         : static_cast<std::size_t>(inst.matrix.cols());
      const auto cfg = hms::mpc::MpcConfig::for_input(n, eta, rounds, slack);
      const auto res = hms::mpc::verify_solution_mpc(inst.matrix, inst.clustering, order, cfg,
                                                     predicate(mpc_pred));
      Report r;
      r.fields["memory"] = cfg.memory;
      r.fields["machines"] = cfg.machines;
      r.fields["certified"] = res.certified;
      add_trace(r, res.trace, show_trace);
      add_metrics(r, res.report);
      if (!res.certified) r.status = kBudget;
      return r;
    };
  });

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();
  baseline->fallthrough();
  mpc->fallthrough();
  for (auto* sub : {dbscan, kmed, blocks, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    const Report r = action();
    r.print(format);
    return r.status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
}
