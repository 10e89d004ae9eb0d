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

#include <random>
#include <sstream>

#include "simmap/corpus.hpp"
#include "simmap/random.hpp"

using namespace simmap;

namespace {

Corpus corpus_from(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

}  // namespace

TEST_CASE("edge list: basic load") {
  Corpus c = corpus_from("a,b,2\nb,c,3\n");
  REQUIRE(c.size() == 3);
  CHECK(c.items[0].id == "a");
  CHECK(c.items[1].id == "b");
  CHECK(c.items[2].id == "c");
  CHECK(c.matrix.at(0, 1) == 2);
  CHECK(c.matrix.at(1, 2) == 3);
  CHECK(c.matrix.at(0, 2) == 0);
  CHECK(c.matrix.total(0) == 2);
  CHECK(c.matrix.total(1) == 5);
  CHECK(c.matrix.total(2) == 3);
  CHECK(c.items[1].weight == 5.0);
}

TEST_CASE("edge list: duplicate unordered pairs are summed") {
  Corpus c = corpus_from("a,b,1\nb,a,1\n");
  REQUIRE(c.size() == 2);
  CHECK(c.matrix.at(0, 1) == 2);
}

TEST_CASE("edge list: self-pair is rejected") {
  CHECK_THROWS_AS(corpus_from("a,a,1\n"), data_error);
}

TEST_CASE("edge list: malformed records report the line number") {
  try {
    corpus_from("a,b,2\nbroken line\n");
    FAIL("expected data_error");
  } catch (const data_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("edge list: negative count is rejected") {
  CHECK_THROWS_AS(corpus_from("a,b,-3\n"), data_error);
}

TEST_CASE("edge list: comments, blank lines, CRLF") {
  Corpus c = corpus_from("# comment\r\n\r\na,b,4\r\n");
  REQUIRE(c.size() == 2);
  CHECK(c.matrix.at(0, 1) == 4);
}

TEST_CASE("edge list: round-trip preserves matrix and item order") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + gen() % 8;
    Corpus c;
    c.matrix = CoOccurrenceMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      c.items.push_back({"item" + std::to_string(i), "item" + std::to_string(i), 0.0, {}});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (uniform01(gen) < 0.5) c.matrix.add(i, j, 1 + gen() % 9);

    std::ostringstream out;
    write_edge_list(c, out);
    Corpus back = corpus_from(out.str());
    REQUIRE(back.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(back.items[i].id == c.items[i].id);
    CHECK(back.matrix == c.matrix);
  }
}

TEST_CASE("totals recomputed from counts match stored totals") {
  Corpus c = corpus_from("a,b,2\nb,c,3\na,c,1\nc,d,5\n");
  CHECK(c.matrix.recompute_totals() == c.matrix.totals());
}

TEST_CASE("items file: label assignment and defaults") {
  Corpus c = corpus_from("a,b,2\nb,c,3\n");
  std::istringstream items("id,label,weight,cluster\na,Egghe,7.5,1\n");
  parse_items(items, c);
  CHECK(c.items[0].label == "Egghe");
  CHECK(c.items[0].weight == 7.5);
  REQUIRE(c.items[0].cluster.has_value());
  CHECK(*c.items[0].cluster == 1);
  // unmentioned items keep defaults
  CHECK(c.items[1].label == "b");
  CHECK(c.items[1].weight == 5.0);
  CHECK_FALSE(c.items[1].cluster.has_value());
}

TEST_CASE("items file: empty file keeps all defaults") {
  Corpus c = corpus_from("a,b,2\n");
  std::istringstream items("");
  parse_items(items, c);
  CHECK(c.items[0].label == "a");
  CHECK(c.items[0].weight == 2.0);
}

TEST_CASE("items file: unknown id is named in the error") {
  Corpus c = corpus_from("a,b,2\n");
  std::istringstream items("id,label\nzz,whatever\n");
  try {
    parse_items(items, c);
    FAIL("expected data_error");
  } catch (const data_error& e) {
    CHECK(std::string(e.what()).find("zz") != std::string::npos);
  }
}

TEST_CASE("items file: duplicate id row is rejected") {
  Corpus c = corpus_from("a,b,2\n");
  std::istringstream items("id,label\na,first\na,second\n");
  CHECK_THROWS_AS(parse_items(items, c), data_error);
}

TEST_CASE("zero_pair_fraction") {
  SUBCASE("all-zero matrix") {
    Corpus c;
    c.matrix = CoOccurrenceMatrix(4);
    for (int i = 0; i < 4; ++i) c.items.push_back({std::to_string(i), "", 0.0, {}});
    CHECK(zero_pair_fraction(c.matrix) == 1.0);
  }
  SUBCASE("complete matrix") {
    Corpus c = corpus_from("a,b,1\na,c,1\na,d,1\nb,c,1\nb,d,1\nc,d,1\n");
    CHECK(zero_pair_fraction(c.matrix) == 0.0);
  }
  SUBCASE("3 items, one edge") {
    Corpus c = corpus_from("a,b,1\nb,c,0\n");
    CHECK(zero_pair_fraction(c.matrix) == doctest::Approx(2.0 / 3.0));
  }
  SUBCASE("n < 2 is an error") {
    CoOccurrenceMatrix m(1);
    CHECK_THROWS_AS(zero_pair_fraction(m), data_error);
  }
}

TEST_CASE("largest component: connected input unchanged") {
  Corpus c = corpus_from("a,b,1\nb,c,2\n");
  ComponentRestriction r = restrict_to_largest_component(c);
  CHECK(r.dropped_ids.empty());
  CHECK(r.corpus.matrix == c.matrix);
}

TEST_CASE("largest component: equal-size tie keeps the first-seen component") {
  Corpus c = corpus_from("a,b,1\nc,d,1\n");
  ComponentRestriction r = restrict_to_largest_component(c);
  REQUIRE(r.corpus.size() == 2);
  CHECK(r.corpus.items[0].id == "a");
  CHECK(r.corpus.items[1].id == "b");
  REQUIRE(r.dropped_ids.size() == 2);
  CHECK(r.dropped_ids[0] == "c");
}

TEST_CASE("largest component: sizes 3 vs 2, verified by brute force") {
  Corpus c = corpus_from("a,b,1\nb,e,1\nc,d,1\n");
  // brute-force component search over the 5 items
  const std::size_t n = c.size();
  std::vector<int> comp(n, -1);
  for (std::size_t s = 0, next = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = static_cast<int>(next);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (c.matrix.at(i, j) > 0 && comp[i] == comp[s] && comp[j] < 0) {
            comp[j] = comp[s];
            grew = true;
          }
    }
    ++next;
  }
  std::size_t expected = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (comp[i] == comp[0]) ++expected;  // component of 'a' is the 3-item one

  ComponentRestriction r = restrict_to_largest_component(c);
  CHECK(r.corpus.size() == 3);
  CHECK(r.corpus.size() == expected);
  CHECK(r.dropped_ids == std::vector<std::string>{"c", "d"});
}

TEST_CASE("largest component is idempotent") {
  Corpus c = corpus_from("a,b,1\nb,e,1\nc,d,1\nf,g,2\n");
  ComponentRestriction once = restrict_to_largest_component(c);
  ComponentRestriction twice = restrict_to_largest_component(once.corpus);
  CHECK(twice.dropped_ids.empty());
  CHECK(twice.corpus.matrix == once.corpus.matrix);
}

TEST_CASE("drop_zero_total_items removes only isolated items") {
  Corpus c = corpus_from("a,b,1\nc,d,0\nb,c,2\n");
  ComponentRestriction r = drop_zero_total_items(c);
  CHECK(r.dropped_ids == std::vector<std::string>{"d"});
  CHECK(r.corpus.size() == 3);
}

TEST_CASE("dense matrix reader matches edge list form") {
  std::istringstream dense("a,b,c\n0,2,0\n2,0,3\n0,3,0\n");
  Corpus c = parse_dense_matrix(dense);
  Corpus e = corpus_from("a,b,2\nb,c,3\n");
  CHECK(c.matrix == e.matrix);
  CHECK(c.items[2].id == "c");
}
