// Copyright 2026 The qsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "qsynth/engine.hpp"
#include "qsynth/io.hpp"

using namespace qsynth;

namespace {

const CostDatabase& shared_db3() {
  static const CostDatabase db = [] {
    FindingOptions opt;
    opt.max_cost = 3;
    return finding(opt).db;
  }();
  return db;
}

}  // namespace

TEST_CASE("parse circuit") {
  Circuit c = parse_circuit("CNOT(0,2)");
  REQUIRE(c.size() == 1);
  CHECK(c[0] == Gate::cnot(0, 2));

  Circuit peres = parse_circuit("CV(1,2)\nCNOT(0,1)\nCVDG(1,2)\nCV(0,2)");
  CHECK(peres.size() == 4);
  CHECK(circuit_cost(peres) == 4);
  CHECK(restricted_perm(circuit_perm(peres)) == named_perm("peres"));

  Circuit with_noise = parse_circuit("# a comment\n\n  NOT(1)  # trailing\nCV(2,0)\n");
  REQUIRE(with_noise.size() == 2);
  CHECK(with_noise[0] == Gate::make_not(1));
  CHECK(with_noise[1] == Gate::cv(2, 0));
}

TEST_CASE("parse circuit errors carry line and column") {
  CHECK_THROWS_AS(parse_circuit("CNOT(2,2)"), parse_error);
  try {
    parse_circuit("NOT(0)\nCNOT(2,2)");
  } catch (const parse_error& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS(parse_circuit("TOF(0,1,2)"), parse_error);
  CHECK_THROWS_AS(parse_circuit("CNOT(0,3)"), parse_error);
  CHECK_THROWS_AS(parse_circuit("CNOT(0 2)"), parse_error);
  CHECK_THROWS_AS(parse_circuit("CNOT(0,2) CNOT(1,2)"), parse_error);
  try {
    parse_circuit("CV(0,1)\nbogus(1)");
  } catch (const parse_error& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
}

TEST_CASE("format and parse are mutual inverses on circuits") {
  std::mt19937_64 rng(0x10c);
  for (int trial = 0; trial < 300; ++trial) {
    Circuit c;
    int len = static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) c.push_back(gate_catalog()[rng() % gate_catalog().size()]);
    std::string text = format_circuit(c);
    CHECK(parse_circuit(text) == c);
    CHECK(format_circuit(parse_circuit(text)) == text);
  }
}

TEST_CASE("parse perm") {
  CHECK(parse_perm("perm: 0 1 2 3 4 5 7 6\n") == named_perm("toffoli"));
  CHECK(parse_perm("perm: 0 1 2 3 4 5 6 7") == BinPerm::identity());
  CHECK(parse_perm("0 1 2 3 6 7 5 4") == named_perm("peres"));  // bare images
  CHECK_THROWS_AS(parse_perm("perm: 0 0 2 3 4 5 6 7"), parse_error);
  CHECK_THROWS_AS(parse_perm("perm: 0 1 2 3 4 5 6 8"), parse_error);
  CHECK_THROWS_AS(parse_perm("perm: 0 1 2 3"), parse_error);
  CHECK_THROWS_AS(parse_perm(""), parse_error);
  CHECK_THROWS_AS(parse_perm("perm: 0 1 2 3 4 5 6 7 0"), parse_error);

  std::mt19937_64 rng(0x90d);
  for (int trial = 0; trial < 200; ++trial) {
    BinPerm g = unrank(static_cast<int>(rng() % kS8Order));
    CHECK(parse_perm(format_perm(g)) == g);
  }
}

TEST_CASE("database roundtrip is bit exact") {
  const CostDatabase& db = shared_db3();
  CHECK(db.size() == 1 + 6 + 24 + 51);

  std::string text = format_db(db);
  CostDatabase loaded = parse_db(text);
  CHECK(loaded.max_cost() == db.max_cost());
  CHECK(loaded.size() == db.size());
  CHECK(format_db(loaded) == text);
  for (const DbRecord& rec : db.records()) {
    auto other = loaded.lookup(unrank(rec.perm_rank));
    REQUIRE(other.has_value());
    CHECK(other->cost == rec.cost);
    CHECK(other->witness == rec.witness);
  }
}

TEST_CASE("database file errors") {
  std::string text = format_db(shared_db3());

  CHECK_THROWS_AS(parse_db("caffdb v1 max_cost=3"), db_error);
  CHECK_THROWS_AS(parse_db("qsynthdb v2 max_cost=3 generators=cnot,cv,cvdg order=notfirst\n"),
                  db_error);
  CHECK_THROWS_AS(parse_db("qsynthdb v1 generators=cnot,cv,cvdg order=notfirst\n"), db_error);
  CHECK_THROWS_AS(parse_db("qsynthdb v1 max_cost=3 generators=cnot order=notfirst\n"), db_error);
  CHECK_THROWS_AS(parse_db("qsynthdb v1 max_cost=3 generators=cnot,cv,cvdg order=notlast\n"),
                  db_error);

  // Tamper with one record's cost: verification must name it.
  size_t pos = text.find("\n40 1 ");
  if (pos == std::string::npos) pos = text.find("\n");
  std::string tampered = text;
  size_t cost_pos = tampered.find(' ', pos + 1);
  REQUIRE(cost_pos != std::string::npos);
  tampered[cost_pos + 1] = '3';
  bool threw = false;
  try {
    parse_db(tampered);
  } catch (const db_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("record") != std::string::npos);
  }
  CHECK(threw);

  // Out-of-order records are rejected before verification.
  size_t header_end = text.find('\n') + 1;
  size_t second_end = text.find('\n', text.find('\n', header_end) + 1) + 1;
  std::string swapped = text.substr(0, header_end);
  std::string first_two = text.substr(header_end, second_end - header_end);
  size_t mid = first_two.find('\n') + 1;
  swapped += first_two.substr(mid) + first_two.substr(0, mid) + text.substr(second_end);
  CHECK_THROWS_AS(parse_db(swapped), db_error);
}

TEST_CASE("save and load through the filesystem") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "qsynth_test_db.txt";
  const CostDatabase& db = shared_db3();
  save_db(db, path);
  CostDatabase loaded = load_db(path);
  CHECK(format_db(loaded) == format_db(db));
  fs::remove(path);

  CHECK_THROWS_AS(load_db(fs::path("/nonexistent/qsynth.db")), db_error);

  FindingOptions free_opt;
  free_opt.max_cost = 1;
  free_opt.free_nots = true;
  CHECK_THROWS_AS(format_db(finding(free_opt).db), db_error);
}
