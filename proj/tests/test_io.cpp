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

#include <algorithm>
#include <array>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hms/io.hpp"
#include "hms/metrics.hpp"
#include "hms/render.hpp"
#include "oracles.hpp"

namespace hms {
namespace {

namespace fs = std::filesystem;

std::string Fixture(const std::string& name) {
  return std::string(HMS_FIXTURE_DIR) + "/" + name;
}

fs::path TempFile(const std::string& name) {
  return fs::temp_directory_path() / ("hms_io_" + name);
}

void WriteText(const fs::path& p, const std::string& text) { io::detail::write_file(p, text); }

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

std::string MessageOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(MatrixFile, RoundTripsRandomInstances) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto inst = oracle::random_instance(rng, {});
    const std::string text = io::format_matrix(inst.matrix, inst.clustering);
    const auto back = io::parse_matrix(text);
    EXPECT_EQ(back.matrix, inst.matrix);
    EXPECT_EQ(io::format_matrix(back.matrix, back.clustering), text);
  }
}

TEST(MatrixFile, KeepsIdsAndAcceptsLabels) {
  const std::string text =
      "hms-matrix v1\nrows 2\ncols 2\ncolors 1\n"
      "rowid 0 a\nrowid 1 b\ncolid 0 x\ncolid 1 y\n"
      "cluster 7 1 dims 0 1 pts 0 1\nlabel 1 7\n"
      "cell 0 0 1\ncell 1 1 1\n";
  const auto inst = io::parse_matrix(text);
  EXPECT_EQ(inst.matrix.row_id(1), "b");
  EXPECT_EQ(inst.matrix.col_id(0), "x");
  ASSERT_EQ(inst.clustering.size(), 1u);
  EXPECT_EQ(inst.clustering[0].id, 7);
}

TEST(MatrixFile, VersionLineIsOptional) {
  const auto inst = io::parse_matrix("rows 1\ncols 1\ncolors 1\ncell 0 0 1\n");
  EXPECT_EQ(inst.matrix.nnz(), 1u);
}

TEST(MatrixFile, ParseErrorsNameTheLine) {
  const std::string head = "hms-matrix v1\nrows 2\ncols 2\ncolors 1\n";
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "cell 0 0\n"); }), ErrorKind::kParse);
  EXPECT_NE(MessageOf([&] { io::parse_matrix(head + "cell 0 0\n"); }).find("line 5"),
            std::string::npos);
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "cell 0 x 1\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "bogus 1\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "cluster 1 1 pts 0\n"); }),
            ErrorKind::kParse);
  EXPECT_EQ(KindOf([&] { io::parse_matrix("rows 2\ncols 2\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "rowid 0 a\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([&] {
              io::parse_matrix(head + "cluster 1 1 dims 0 pts 0\nlabel 1 1\n");
            }),
            ErrorKind::kParse);
}

TEST(MatrixFile, ModelErrorsPassThrough) {
  const std::string head = "hms-matrix v1\nrows 2\ncols 2\ncolors 1\n";
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "cell 2 0 1\n"); }),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "cell 0 0 2\n"); }),
            ErrorKind::kInvalidInput);
  EXPECT_EQ(KindOf([&] { io::parse_matrix(head + "cluster 1 1 dims 5 pts 0\n"); }),
            ErrorKind::kInvalidInput);
}

TEST(MatrixFile, MissingFileIsIoError) {
  EXPECT_EQ(KindOf([] { io::read_matrix("/nonexistent/hms/matrix.txt"); }), ErrorKind::kIo);
}

TEST(SolutionFile, RoundTrips) {
  OrderingSolution s;
  s.row_perm = {2, 0, 1};
  s.col_perm = {1, 0};
  s.cluster_order = std::vector<ClusterId>{4, 1};
  const auto back = io::parse_solution(io::format_solution(s));
  EXPECT_EQ(back.row_perm, s.row_perm);
  EXPECT_EQ(back.col_perm, s.col_perm);
  EXPECT_EQ(back.cluster_order, s.cluster_order);

  s.cluster_order.reset();
  EXPECT_FALSE(io::parse_solution(io::format_solution(s)).cluster_order.has_value());
}

TEST(SolutionFile, ParseErrors) {
  EXPECT_EQ(KindOf([] { io::parse_solution("rowperm 0\ncolperm 0\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { io::parse_solution("hms-solution v1\nrowperm 0\n"); }),
            ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { io::parse_solution("hms-solution v1\nrowperm 0\ncolperm 0\nx 1\n"); }),
            ErrorKind::kParse);
}

TEST(SetCoverFile, ParsesFixture) {
  const auto sc = io::parse_set_cover(io::detail::read_file(Fixture("set_cover.txt")));
  EXPECT_EQ(sc.universe, 3u);
  ASSERT_EQ(sc.sets.size(), 2u);
  EXPECT_EQ(sc.sets[0], (std::vector<Index>{0, 1}));
  EXPECT_EQ(KindOf([] { io::parse_set_cover("set 1 0\n"); }), ErrorKind::kParse);
}

TEST(Ingest, ToyEdgesGiveThreeCells) {
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_edges.txt");
  spec.labels_path = Fixture("toy_labels.txt");
  const auto inst = io::ingest(spec);
  EXPECT_EQ(inst.matrix.rows(), 3u);
  EXPECT_EQ(inst.matrix.cols(), 3u);
  EXPECT_EQ(inst.matrix.nnz(), 3u);
  // Cells take the community of their column vertex.
  EXPECT_EQ(inst.matrix.at(0, 1), 1u);
  EXPECT_EQ(inst.matrix.at(1, 2), 2u);
  EXPECT_EQ(inst.matrix.at(2, 0), 1u);
  ASSERT_EQ(inst.clustering.size(), 2u);
  EXPECT_EQ(inst.clustering[0].id, 0);
  EXPECT_EQ(inst.clustering[0].points, (std::vector<Index>{0, 1}));
  EXPECT_EQ(inst.clustering[1].dims, (std::vector<Index>{2}));
}

TEST(Ingest, WithoutLabelsEveryCellSharesOneColor) {
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_edges.txt");
  const auto inst = io::ingest(spec);
  EXPECT_EQ(inst.matrix.num_colors(), 1u);
  EXPECT_TRUE(inst.clustering.empty());
}

TEST(Ingest, RoundTripsThroughMatrixFile) {
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_edges.txt");
  spec.labels_path = Fixture("toy_labels.txt");
  const auto inst = io::ingest(spec);
  const auto path = TempFile("roundtrip.txt");
  io::write_matrix(path, inst.matrix, inst.clustering);
  const auto back = io::read_matrix(path);
  EXPECT_EQ(back.matrix, inst.matrix);
  EXPECT_EQ(io::format_matrix(back.matrix, back.clustering),
            io::format_matrix(inst.matrix, inst.clustering));
  fs::remove(path);
}

TEST(Ingest, UndirectedAddsReverseEdges) {
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_edges.txt");
  spec.directed = false;
  EXPECT_EQ(io::ingest(spec).matrix.nnz(), 6u);
}

TEST(Ingest, DropsVerticesWithoutOutgoingEdges) {
  const auto path = TempFile("sink.txt");
  WriteText(path, "0 1\n1 0\n1 2\n");
  io::IngestSpec spec;
  spec.edges_path = path;
  spec.drop_no_outgoing = true;
  const auto inst = io::ingest(spec);
  EXPECT_EQ(inst.matrix.rows(), 2u);
  EXPECT_EQ(inst.matrix.nnz(), 2u);
  fs::remove(path);
}

TEST(Ingest, MalformedLineReportsLineNumber) {
  const auto path = TempFile("bad.txt");
  WriteText(path, "# header\n0 1\n7\n");
  io::IngestSpec spec;
  spec.edges_path = path;
  EXPECT_EQ(KindOf([&] { io::ingest(spec); }), ErrorKind::kParse);
  EXPECT_NE(MessageOf([&] { io::ingest(spec); }).find("line 3"), std::string::npos);
  fs::remove(path);
}

TEST(Ingest, UnknownLabelVertexIsRejected) {
  const auto path = TempFile("labels.txt");
  WriteText(path, "0 0\n9 1\n");
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_edges.txt");
  spec.labels_path = path;
  EXPECT_EQ(KindOf([&] { io::ingest(spec); }), ErrorKind::kInvalidInput);
  fs::remove(path);
}

TEST(Ingest, FirstAttributeColorsAndClusters) {
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_attr_edges.txt");
  spec.mode = io::LabelMode::kEdgeAttributeFirst;
  const auto inst = io::ingest(spec);
  // Vertices 10, 20, 30 map to 0, 1, 2; attributes 1, 6, 17 to colors 1, 2, 3.
  EXPECT_EQ(inst.matrix.nnz(), 4u);
  EXPECT_EQ(inst.matrix.at(0, 1), 2u);
  EXPECT_EQ(inst.matrix.at(1, 2), 3u);
  EXPECT_EQ(inst.matrix.at(2, 0), 2u);
  EXPECT_EQ(inst.matrix.at(0, 2), 1u);
  ASSERT_EQ(inst.clustering.size(), 3u);
  const auto& six = inst.clustering[*inst.clustering.find(6)];
  EXPECT_EQ(six.dims, (std::vector<Index>{0, 2}));
  EXPECT_EQ(six.points, (std::vector<Index>{0, 1}));
  const auto& seventeen = inst.clustering[*inst.clustering.find(17)];
  EXPECT_EQ(seventeen.dims, (std::vector<Index>{1}));
}

TEST(Ingest, AllAttributesJoinEveryCluster) {
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_attr_edges.txt");
  spec.mode = io::LabelMode::kEdgeAttributeAll;
  const auto inst = io::ingest(spec);
  const auto& seventeen = inst.clustering[*inst.clustering.find(17)];
  EXPECT_EQ(seventeen.dims, (std::vector<Index>{0, 1}));
  EXPECT_EQ(seventeen.points, (std::vector<Index>{1, 2}));
}

TEST(Ingest, AttributeModeNeedsAttributes) {
  io::IngestSpec spec;
  spec.edges_path = Fixture("toy_edges.txt");
  spec.mode = io::LabelMode::kEdgeAttributeFirst;
  EXPECT_EQ(KindOf([&] { io::ingest(spec); }), ErrorKind::kParse);
}

TEST(Render, TwoByTwoWithOneCell) {
  const LabeledMatrix m(2, 2, 1, {{1, 0, 1}});
  const std::string ppm = render_ppm(m, OrderingSolution::identity(2, 2));
  ASSERT_EQ(ppm.rfind("P3\n2 2\n255\n", 0), 0u);
  std::istringstream is(ppm.substr(std::string("P3\n2 2\n255\n").size()));
  int r, g, b, colored = 0, pixels = 0;
  while (is >> r >> g >> b) {
    ++pixels;
    if (r != 255 || g != 255 || b != 255) ++colored;
  }
  EXPECT_EQ(pixels, 4);
  EXPECT_EQ(colored, 1);
}

TEST(Render, PaletteHasNoWhite) {
  for (const Rgb& c : default_palette()) EXPECT_FALSE(c == Rgb{});
}

TEST(Render, ColumnPermutationReordersPixels) {
  std::mt19937_64 rng(11);
  const auto inst = oracle::random_instance(rng, {});
  const auto& m = inst.matrix;
  auto sigma = OrderingSolution::identity(m.rows(), m.cols());
  std::shuffle(sigma.col_perm.begin(), sigma.col_perm.end(), rng);
  auto pixels = [](const std::string& ppm) {
    std::istringstream is(ppm);
    std::string magic;
    int w, h, mx;
    is >> magic >> w >> h >> mx;
    std::vector<std::vector<std::array<int, 3>>> grid(h, std::vector<std::array<int, 3>>(w));
    for (auto& row : grid) {
      for (auto& px : row) is >> px[0] >> px[1] >> px[2];
    }
    return grid;
  };
  const auto a = pixels(render_ppm(m, OrderingSolution::identity(m.rows(), m.cols())));
  const auto b = pixels(render_ppm(m, sigma));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < sigma.col_perm.size(); ++i) {
      EXPECT_EQ(b[r][i], a[r][sigma.col_perm[i]]);
    }
  }
}

TEST(Render, ByteIdenticalReruns) {
  std::mt19937_64 rng(3);
  const auto inst = oracle::random_instance(rng, {});
  const auto order = OrderingSolution::identity(inst.matrix.rows(), inst.matrix.cols());
  const auto p1 = TempFile("a.ppm"), p2 = TempFile("b.ppm");
  write_ppm(p1, inst.matrix, order);
  write_ppm(p2, inst.matrix, order);
  EXPECT_EQ(io::detail::read_file(p1), io::detail::read_file(p2));
  EXPECT_EQ(io::detail::read_file(p1), render_ppm(inst.matrix, order));
  fs::remove(p1);
  fs::remove(p2);
}

TEST(Render, UnwritablePathIsIoError) {
  const LabeledMatrix m(1, 1, 1, {{0, 0, 1}});
  EXPECT_EQ(KindOf([&] {
              write_ppm("/nonexistent/hms/out.ppm", m, OrderingSolution::identity(1, 1));
            }),
            ErrorKind::kIo);
}

TEST(Render, InvalidOrderIsRejected) {
  const LabeledMatrix m(2, 2, 1, {{0, 0, 1}});
  OrderingSolution bad;
  bad.row_perm = {0, 0};
  bad.col_perm = {0, 1};
  EXPECT_EQ(KindOf([&] { render_ppm(m, bad); }), ErrorKind::kInvalidSolution);
}

}  // namespace
}  // namespace hms
