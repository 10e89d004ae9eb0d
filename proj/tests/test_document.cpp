// Copyright 2026 The Simmap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "simmap/cli.hpp"
#include "simmap/map_document.hpp"
#include "simmap/svg.hpp"

using namespace simmap;

namespace {

std::filesystem::path tmp_dir() {
  std::filesystem::path dir = std::filesystem::current_path() / "simmap_test_tmp";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string path_of(const std::string& name) { return (tmp_dir() / name).string(); }

void put_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MapDocument sample_document() {
  MapDocument doc;
  doc.method = "vos";
  doc.similarity = "assoc";
  doc.seed = 42;
  doc.starts = 3;
  doc.iterations = 17;
  doc.score = 0.12345678901234567;
  doc.zero_pair_fraction = 2.0 / 3.0;
  doc.items.push_back({"a", "Alpha \"quoted\"", 4.0, 0.1, -0.2, 1});
  doc.items.push_back({"b", "Beta", 1.0, -0.3, 0.4, std::nullopt});
  doc.items.push_back({"c", "Gamma", 2.5, 0.25, 0.125, 2});
  return doc;
}

}  // namespace

TEST_CASE("map document: serialize-parse-serialize is byte-identical") {
  MapDocument doc = sample_document();
  const std::string once = serialize(doc);
  MapDocument parsed = parse_document(once);
  const std::string twice = serialize(parsed);
  CHECK(once == twice);
  CHECK(parsed.items.size() == 3);
  CHECK(parsed.items[0].label == "Alpha \"quoted\"");
  CHECK(parsed.items[0].cluster.has_value());
  CHECK_FALSE(parsed.items[1].cluster.has_value());
  CHECK(parsed.score == doc.score);
}

TEST_CASE("map document: invalid input is a data error") {
  CHECK_THROWS_AS(parse_document("not json"), data_error);
  CHECK_THROWS_AS(parse_document("{\"meta\": {}}"), data_error);
  CHECK_THROWS_AS(load_document(path_of("missing.json")), data_error);
}

TEST_CASE("svg: single item renders centered") {
  MapDocument doc;
  doc.method = "vos";
  doc.similarity = "assoc";
  doc.items.push_back({"only", "Only", 3.0, 1.5, 2.5, std::nullopt});
  std::string svg = render_svg(doc);
  CHECK(svg.find("<circle cx=\"500.00\" cy=\"500.00\"") != std::string::npos);
}

TEST_CASE("svg: weights 1 and 4 give radii in ratio 1:2") {
  MapDocument doc;
  doc.method = "vos";
  doc.similarity = "assoc";
  doc.items.push_back({"a", "A", 1.0, 0.0, 0.0, std::nullopt});
  doc.items.push_back({"b", "B", 4.0, 1.0, 0.0, std::nullopt});
  SvgOptions options;
  options.max_radius = 16.0;
  options.min_radius = 2.0;
  std::string svg = render_svg(doc, options);
  CHECK(svg.find("r=\"16.00\"") != std::string::npos);
  CHECK(svg.find("r=\"8.00\"") != std::string::npos);
}

TEST_CASE("svg: identical documents give identical bytes") {
  MapDocument doc = sample_document();
  CHECK(render_svg(doc) == render_svg(doc));
}

TEST_CASE("cmd_layout: vos on a two-item edge list places the items at distance 1") {
  put_file(path_of("pair.csv"), "a,b,3\n");
  RunConfig config;
  config.method = Method::kVos;
  config.n_starts = 2;
  MapDocument doc =
      cmd_layout(config, path_of("pair.csv"), std::nullopt, path_of("pair_map.json"));
  REQUIRE(doc.items.size() == 2);
  const double dx = doc.items[0].x - doc.items[1].x;
  const double dy = doc.items[0].y - doc.items[1].y;
  CHECK(std::sqrt(dx * dx + dy * dy) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cmd_layout: equal similarities on three items give an equilateral map") {
  put_file(path_of("triangle.csv"), "a,b,2\na,c,2\nb,c,2\n");
  RunConfig config;
  config.method = Method::kMdsOrdinal;
  config.similarity = SimilarityMeasure::kAssociationStrength;
  config.n_starts = 3;
  MapDocument doc =
      cmd_layout(config, path_of("triangle.csv"), std::nullopt, path_of("triangle_map.json"));
  REQUIRE(doc.items.size() == 3);
  auto dist = [&](int i, int j) {
    return std::hypot(doc.items[i].x - doc.items[j].x, doc.items[i].y - doc.items[j].y);
  };
  CHECK(std::abs(dist(0, 1) - dist(0, 2)) < 1e-6);
  CHECK(std::abs(dist(0, 1) - dist(1, 2)) < 1e-6);
}

TEST_CASE("cmd_layout: identical invocations produce byte-identical documents") {
  put_file(path_of("det.csv"), "a,b,2\nb,c,3\na,c,1\nc,d,5\nb,d,1\n");
  RunConfig config;
  config.method = Method::kMdsInterval;
  config.n_starts = 4;
  config.master_seed = 9;
  cmd_layout(config, path_of("det.csv"), std::nullopt, path_of("det1.json"));
  cmd_layout(config, path_of("det.csv"), std::nullopt, path_of("det2.json"));
  const std::string first = slurp(path_of("det1.json"));
  CHECK(!first.empty());
  CHECK(first == slurp(path_of("det2.json")));

  // and the SVG export of the same document is deterministic too
  cmd_export_svg(path_of("det1.json"), path_of("det1.svg"));
  cmd_export_svg(path_of("det1.json"), path_of("det2.svg"));
  CHECK(slurp(path_of("det1.svg")) == slurp(path_of("det2.svg")));
}

TEST_CASE("cmd_layout: items file attaches labels, weights, clusters") {
  put_file(path_of("lbl_edges.csv"), "a,b,2\nb,c,3\na,c,1\n");
  put_file(path_of("lbl_items.csv"), "id,label,weight,cluster\na,Egghe,9,1\nb,Glanzel,,2\n");
  RunConfig config;
  config.method = Method::kVos;
  config.n_starts = 2;
  MapDocument doc = cmd_layout(config, path_of("lbl_edges.csv"), path_of("lbl_items.csv"),
                               path_of("lbl_map.json"));
  CHECK(doc.items[0].label == "Egghe");
  CHECK(doc.items[0].weight == 9.0);
  CHECK(doc.items[1].label == "Glanzel");
  CHECK(doc.items[1].weight == 5.0);  // empty weight field keeps the default c_i
  REQUIRE(doc.items[1].cluster.has_value());
  CHECK(*doc.items[1].cluster == 2);
}

TEST_CASE("cmd_layout: zero-total items are rejected unless dropped") {
  put_file(path_of("iso.csv"), "a,b,2\nb,c,0\n");
  RunConfig config;
  config.method = Method::kVos;
  config.n_starts = 1;
  CHECK_THROWS_AS(
      cmd_layout(config, path_of("iso.csv"), std::nullopt, path_of("iso_map.json")), data_error);

  config.drop_isolated = true;
  std::ostringstream log;
  MapDocument doc =
      cmd_layout(config, path_of("iso.csv"), std::nullopt, path_of("iso_map.json"), &log);
  CHECK(doc.items.size() == 2);
  CHECK(log.str().find("dropped") != std::string::npos);
}

TEST_CASE("cmd_layout: disconnected similarity graph needs --largest-component for vos") {
  put_file(path_of("disc.csv"), "a,b,2\nc,d,3\n");
  RunConfig config;
  config.method = Method::kVos;
  config.n_starts = 1;
  try {
    cmd_layout(config, path_of("disc.csv"), std::nullopt, path_of("disc_map.json"));
    FAIL("expected data_error");
  } catch (const data_error& e) {
    CHECK(std::string(e.what()).find("largest-component") != std::string::npos);
  }

  config.largest_component = true;
  MapDocument doc =
      cmd_layout(config, path_of("disc.csv"), std::nullopt, path_of("disc_map.json"));
  CHECK(doc.items.size() == 2);
  CHECK(doc.items[0].id == "a");
}

TEST_CASE("cmd_compare: includes the equivalence check on small corpora") {
  put_file(path_of("cmp.csv"),
           "a,b,4\na,c,2\nb,c,3\nc,d,2\nd,e,4\nc,e,1\na,e,1\nb,d,2\n");
  RunConfig config;
  config.n_starts = 3;
  config.master_seed = 7;
  std::string report = cmd_compare(config, Family::kOrdinal, path_of("cmp.csv"), std::nullopt,
                                   path_of("cmp_report.json"));
  CHECK(report.find("\"scaling_equivalence\"") != std::string::npos);
  CHECK(report.find("\"mds-as\"") != std::string::npos);
  CHECK(report.find("\"mds-cos\"") != std::string::npos);
  CHECK(report.find("\"vos\"") != std::string::npos);
  CHECK(report.find("\"procrustes_disparity\"") != std::string::npos);

  // determinism of the whole report
  std::string again = cmd_compare(config, Family::kOrdinal, path_of("cmp.csv"), std::nullopt,
                                  path_of("cmp_report2.json"));
  CHECK(report == again);

  // the report is valid JSON
  const nlohmann::json parsed = nlohmann::json::parse(report);
  CHECK(parsed.contains("methods"));
}

TEST_CASE("cmd_diagnose prints the metrics") {
  put_file(path_of("diag_edges.csv"), "a,b,2\nb,c,3\na,c,1\nc,d,5\nb,d,1\n");
  put_file(path_of("diag_items.csv"), "id,cluster\na,1\nb,1\nc,2\nd,2\n");
  RunConfig config;
  config.method = Method::kVos;
  config.n_starts = 2;
  cmd_layout(config, path_of("diag_edges.csv"), path_of("diag_items.csv"),
             path_of("diag_map.json"));
  std::ostringstream out;
  cmd_diagnose(path_of("diag_map.json"), std::nullopt, out);
  CHECK(out.str().find("circularity: ") != std::string::npos);
  CHECK(out.str().find("separation_ratio: ") != std::string::npos);
  CHECK(out.str().find("items: 4") != std::string::npos);

  std::ostringstream out2;
  cmd_diagnose(path_of("diag_map.json"), std::nullopt, out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("run config validation") {
  RunConfig config;
  config.n_starts = 0;
  CHECK_THROWS_AS(validate(config), config_error);
  config.n_starts = 1;
  config.eps = -1.0;
  CHECK_THROWS_AS(validate(config), config_error);
  config.eps = 1e-8;
  config.max_iter = 0;
  CHECK_THROWS_AS(validate(config), config_error);
}
