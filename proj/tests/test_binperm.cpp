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

#include <algorithm>
#include <numeric>
#include <random>

#include "qsynth/binperm.hpp"
#include "qsynth/gate.hpp"

using namespace qsynth;

namespace {

BinPerm random_binperm(std::mt19937_64& rng) {
  std::array<int, 8> images;
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return BinPerm::from_images(images);
}

PartialPerm random_restrictable_perm(std::mt19937_64& rng) {
  // Random cascade that evaluates to a binary-reversible circuit.
  while (true) {
    Circuit c;
    int len = static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) c.push_back(gate_catalog()[rng() % gate_catalog().size()]);
    PartialPerm p = circuit_perm(c);
    if (restricted_perm(p)) return p;
  }
}

}  // namespace

TEST_CASE("restricted perm") {
  auto id = restricted_perm(PartialPerm::identity());
  REQUIRE(id.has_value());
  CHECK(*id == BinPerm::identity());

  auto cnot = restricted_perm(gate_perm(Gate::cnot(0, 2)));
  REQUIRE(cnot.has_value());
  BinPerm want = BinPerm::from_images(std::array<int, 8>{0, 1, 2, 3, 5, 4, 7, 6});
  CHECK(*cnot == want);

  CHECK(!restricted_perm(gate_perm(Gate::cv(0, 2))).has_value());

  auto cv2 = restricted_perm(circuit_perm({Gate::cv(0, 2), Gate::cv(0, 2)}));
  REQUIRE(cv2.has_value());
  CHECK(*cv2 == want);
}

TEST_CASE("restricted map") {
  auto cv = restricted_map(gate_perm(Gate::cv(0, 2)));
  REQUIRE(cv.has_value());
  CHECK((*cv)[4] == 18);  // (B1,B0,B0) -> (B1,B0,V0)

  auto id = restricted_map(PartialPerm::identity());
  REQUIRE(id.has_value());
  for (int pat = 0; pat < 8; ++pat) CHECK((*id)[pat] == entry_of_pattern(pat));

  // Second gate's control goes non-binary on input pattern 4.
  CHECK(!restricted_map(circuit_perm({Gate::cv(0, 1), Gate::cv(1, 2)})).has_value());
}

TEST_CASE("binperm group ops") {
  std::mt19937_64 rng(0xb1);
  for (int trial = 0; trial < 500; ++trial) {
    BinPerm g = random_binperm(rng);
    CHECK(compose(g, inverse(g)) == BinPerm::identity());
    CHECK(compose(BinPerm::identity(), g) == g);
    CHECK(compose(g, BinPerm::identity()) == g);
  }
  BinPerm invol = BinPerm::from_images(std::array<int, 8>{0, 1, 2, 3, 5, 4, 7, 6});
  CHECK(compose(invol, invol) == BinPerm::identity());
}

TEST_CASE("rank and unrank") {
  CHECK(rank(BinPerm::identity()) == 0);
  BinPerm reversal = BinPerm::from_images(std::array<int, 8>{7, 6, 5, 4, 3, 2, 1, 0});
  CHECK(rank(reversal) == 40319);
  CHECK(unrank(0) == BinPerm::identity());
  CHECK(unrank(40319) == reversal);
  CHECK_THROWS_AS(unrank(40320), std::out_of_range);
  CHECK_THROWS_AS(unrank(-1), std::out_of_range);

  std::mt19937_64 rng(0x1e4);
  for (int trial = 0; trial < 1000; ++trial) {
    BinPerm g = random_binperm(rng);
    CHECK(unrank(rank(g)) == g);
  }

  // Ranks order permutations lexicographically.
  for (int trial = 0; trial < 300; ++trial) {
    BinPerm p = random_binperm(rng);
    BinPerm q = random_binperm(rng);
    CHECK((rank(p) < rank(q)) == (p.images < q.images));
  }
}

TEST_CASE("NOT layer group laws hold exhaustively") {
  for (int a = 0; a < 8; ++a) {
    NotLayer la{static_cast<uint8_t>(a)};
    CHECK(compose(la.as_binperm(), la.as_binperm()) == BinPerm::identity());
    CHECK(restricted_perm(la.as_partial_perm()) == la.as_binperm());
    CHECK(la.as_partial_perm().is_total());
    for (int b = 0; b < 8; ++b) {
      NotLayer lb{static_cast<uint8_t>(b)};
      bool is_identity =
          compose(la.as_binperm(), lb.as_binperm()) == BinPerm::identity();
      CHECK(is_identity == (a == b));
    }
  }
  CHECK(NotLayer::for_wire(0).mask == 4);
  CHECK(NotLayer::for_wire(2).mask == 1);
  CHECK(NotLayer::for_wire(1).acts_on_wire(1));
  CHECK(!NotLayer::for_wire(1).acts_on_wire(0));
}

TEST_CASE("restriction is multiplicative where defined") {
  std::mt19937_64 rng(0x3c3);
  for (int trial = 0; trial < 300; ++trial) {
    PartialPerm f = random_restrictable_perm(rng);
    PartialPerm g = random_restrictable_perm(rng);
    auto rf = restricted_perm(f);
    auto rg = restricted_perm(g);
    auto rfg = restricted_perm(compose(f, g));
    REQUIRE(rfg.has_value());
    CHECK(*rfg == compose(*rf, *rg));
  }
}

TEST_CASE("closure sizes") {
  CHECK(generate_closure({}).size() == 1);

  std::vector<BinPerm> nots;
  for (int w = 0; w < 3; ++w) nots.push_back(NotLayer::for_wire(w).as_binperm());
  CHECK(generate_closure(nots).size() == 8);

  std::vector<BinPerm> affine = nots;
  affine.insert(affine.end(), cnot_restrictions().begin(), cnot_restrictions().end());
  CHECK(generate_closure(affine).size() == 1344);  // 2^3 * |GL(3,2)|

  std::vector<BinPerm> complete = affine;
  complete.push_back(named_perm("toffoli"));
  CHECK(generate_closure(complete).size() == 40320);
}

TEST_CASE("closure is monotone and idempotent") {
  std::vector<BinPerm> small{NotLayer::for_wire(0).as_binperm(), cnot_restrictions()[0]};
  std::vector<BinPerm> big = small;
  big.push_back(cnot_restrictions()[3]);

  std::vector<BinPerm> closed_small = generate_closure(small);
  std::vector<BinPerm> closed_big = generate_closure(big);
  CHECK(closed_small.size() > 2);
  CHECK(closed_big.size() > closed_small.size());
  CHECK(std::includes(closed_big.begin(), closed_big.end(), closed_small.begin(),
                      closed_small.end()));

  CHECK(generate_closure(closed_small) == closed_small);
}

TEST_CASE("closure of a single element has the element's order") {
  std::mt19937_64 rng(0x0d3);
  for (int trial = 0; trial < 100; ++trial) {
    BinPerm g = random_binperm(rng);
    int order = 1;
    BinPerm power = g;
    while (power != BinPerm::identity()) {
      power = compose(power, g);
      ++order;
    }
    CHECK(generate_closure(std::vector<BinPerm>{g}).size() == static_cast<size_t>(order));
  }
}

TEST_CASE("universality") {
  CHECK(!is_universal(BinPerm::identity()));
  CHECK(is_universal(named_perm("toffoli")));
  CHECK(is_universal(named_perm("peres")));
  // A NOT layer adds nothing to the affine group.
  CHECK(!is_universal(NotLayer{5}.as_binperm()));
}

TEST_CASE("named perms") {
  BinPerm toffoli = BinPerm::from_images(std::array<int, 8>{0, 1, 2, 3, 4, 5, 7, 6});
  BinPerm peres = BinPerm::from_images(std::array<int, 8>{0, 1, 2, 3, 6, 7, 5, 4});
  CHECK(named_perm("toffoli") == toffoli);
  CHECK(named_perm("peres") == peres);
  CHECK(named_perm("identity") == BinPerm::identity());
  CHECK_THROWS_AS(named_perm("fredkin"), std::invalid_argument);
}

TEST_CASE("binperm conjugation matches circuit conjugation") {
  std::mt19937_64 rng(0xabc);
  for (int trial = 0; trial < 200; ++trial) {
    PartialPerm p = random_restrictable_perm(rng);
    const WirePerm& wp = all_wire_perms()[rng() % 6];
    auto direct = restricted_perm(relabel_partial_perm(p, wp));
    REQUIRE(direct.has_value());
    CHECK(*direct == conjugate_by_wire_perm(*restricted_perm(p), wp));
  }
}

TEST_CASE("binperm validation") {
  std::array<int, 8> dup{0, 0, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_AS(BinPerm::from_images(dup), std::invalid_argument);
  std::array<int, 8> oob{0, 1, 2, 3, 4, 5, 6, 8};
  CHECK_THROWS_AS(BinPerm::from_images(oob), std::invalid_argument);
}
