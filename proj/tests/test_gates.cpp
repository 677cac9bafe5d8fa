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

#include <random>

#include "qsynth/binperm.hpp"
#include "qsynth/gate.hpp"

using namespace qsynth;

namespace {

Circuit random_circuit(std::mt19937_64& rng, int max_len) {
  Circuit c;
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) c.push_back(gate_catalog()[rng() % gate_catalog().size()]);
  return c;
}

const Circuit kToffoliWitness{Gate::cv(1, 2), Gate::cnot(0, 1), Gate::cvdag(1, 2),
                              Gate::cnot(0, 1), Gate::cv(0, 2)};

}  // namespace

TEST_CASE("gate catalog") {
  CHECK(gate_catalog().size() == 21);
  CHECK(two_qubit_gates().size() == 18);
  CHECK(not_gates().size() == 3);
  CHECK(two_qubit_gates().front() == Gate::cnot(0, 1));
  CHECK(not_gates().front() == Gate::make_not(0));

  // canonical order: CNOT block, then CV, then CVDG, (control,target) ascending
  CHECK(two_qubit_gates()[5] == Gate::cnot(2, 1));
  CHECK(two_qubit_gates()[6] == Gate::cv(0, 1));
  CHECK(two_qubit_gates()[12] == Gate::cvdag(0, 1));
  for (int i = 0; i < 18; ++i) CHECK(two_qubit_gate_index(two_qubit_gates()[i]) == i);
  CHECK(two_qubit_gate_index(Gate::make_not(1)) == -1);

  CHECK(Gate::make_not(0).cost() == 0);
  CHECK(Gate::cnot(0, 1).cost() == 1);
  CHECK(Gate::cv(0, 1).cost() == 1);
  CHECK(Gate::cvdag(0, 1).cost() == 1);

  CHECK_THROWS_AS(Gate::cnot(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Gate::cv(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Gate::make_not(-1), std::invalid_argument);
}

TEST_CASE("gate perms") {
  const PartialPerm& not2 = gate_perm(Gate::make_not(2));
  CHECK(not2.is_total());
  CHECK(not2.apply(0) == 1);

  const PartialPerm& cnot02 = gate_perm(Gate::cnot(0, 2));
  CHECK(cnot02.domain_size() == 32);
  CHECK(cnot02.apply(16) == 17);
  CHECK(cnot02.apply(0) == 0);

  const PartialPerm& cv02 = gate_perm(Gate::cv(0, 2));
  CHECK(cv02.domain_size() == 32);
  CHECK(cv02.apply(16) == 18);
  CHECK(!cv02.in_domain(32));  // (V0,B0,B0): control not binary

  for (const Gate& g : two_qubit_gates()) CHECK(gate_perm(g).domain_size() == 32);
  for (const Gate& g : not_gates()) CHECK(gate_perm(g).is_total());
}

TEST_CASE("CV pairs square to CNOT and cancel with CVDG") {
  for (int c = 0; c < 3; ++c) {
    for (int t = 0; t < 3; ++t) {
      if (c == t) continue;
      const PartialPerm& cv = gate_perm(Gate::cv(c, t));
      const PartialPerm& cvdg = gate_perm(Gate::cvdag(c, t));
      const PartialPerm& cnot = gate_perm(Gate::cnot(c, t));
      // CV^2 has the same restriction as CNOT (here even the same partial perm).
      CHECK(compose(cv, cv) == cnot);
      CHECK(restricted_perm(compose(cv, cv)) == restricted_perm(cnot));

      PartialPerm cancel = compose(cv, cvdg);
      CHECK(cancel.domain_mask() == cv.domain_mask());
      for (int x = 0; x < kNumEntries; ++x) {
        if (cancel.in_domain(x)) CHECK(cancel.apply(x) == x);
      }
    }
  }
}

TEST_CASE("circuit evaluation") {
  CHECK(circuit_perm({}) == PartialPerm::identity());

  PartialPerm pair = circuit_perm({Gate::cv(0, 2), Gate::cvdag(0, 2)});
  CHECK(pair.domain_size() == 32);
  for (int x = 0; x < kNumEntries; ++x) {
    if (pair.in_domain(x)) CHECK(pair.apply(x) == x);
  }

  auto restricted = restricted_perm(circuit_perm(kToffoliWitness));
  REQUIRE(restricted.has_value());
  CHECK(*restricted == named_perm("toffoli"));

  CHECK(circuit_cost(kToffoliWitness) == 5);
  CHECK(circuit_cost({Gate::make_not(0), Gate::cnot(0, 1)}) == 1);
}

TEST_CASE("circuit inverse") {
  CHECK(circuit_inverse({}).empty());
  CHECK(circuit_inverse({Gate::cv(0, 1)}) == Circuit{Gate::cvdag(0, 1)});
  Circuit two{Gate::cnot(0, 1), Gate::cv(1, 2)};
  Circuit two_inv{Gate::cvdag(1, 2), Gate::cnot(0, 1)};
  CHECK(circuit_inverse(two) == two_inv);

  std::mt19937_64 rng(0xc1c);
  for (int trial = 0; trial < 300; ++trial) {
    Circuit c = random_circuit(rng, 6);
    CHECK(circuit_perm(circuit_inverse(c)) == circuit_perm(c).inverse());
  }
}

TEST_CASE("composition matches concatenation") {
  std::mt19937_64 rng(0xcafe);
  for (int trial = 0; trial < 300; ++trial) {
    Circuit a = random_circuit(rng, 5);
    Circuit b = random_circuit(rng, 5);
    Circuit ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(circuit_perm(ab) == compose(circuit_perm(a), circuit_perm(b)));
  }
}

TEST_CASE("wire relabeling") {
  WirePerm id{0, 1, 2};
  WirePerm swap01{1, 0, 2};
  Circuit c{Gate::cnot(0, 2)};
  CHECK(conjugate_by_wire_perm(c, id) == c);
  CHECK(conjugate_by_wire_perm(c, swap01) == Circuit{Gate::cnot(1, 2)});

  // Toffoli is symmetric in its controls.
  auto restricted = restricted_perm(circuit_perm(conjugate_by_wire_perm(kToffoliWitness, swap01)));
  REQUIRE(restricted.has_value());
  CHECK(*restricted == named_perm("toffoli"));

  // Evaluation commutes with relabeling.
  std::mt19937_64 rng(0xfeed);
  for (int trial = 0; trial < 200; ++trial) {
    Circuit rc = random_circuit(rng, 5);
    const WirePerm& p = all_wire_perms()[rng() % 6];
    CHECK(circuit_perm(conjugate_by_wire_perm(rc, p)) ==
          relabel_partial_perm(circuit_perm(rc), p));
  }

  for (const WirePerm& p : all_wire_perms()) {
    WirePerm inv = inverse_wire_perm(p);
    for (int e = 0; e < kNumEntries; ++e) CHECK(relabel_entry(relabel_entry(e, p), inv) == e);
  }
}
