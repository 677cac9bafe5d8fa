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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsynth/partial_perm.hpp"

namespace qsynth {

enum class GateKind : uint8_t { Not, Cnot, Cv, Cvdag };

/// One gate of the catalog: NOT(t), CNOT(c,t), CV(c,t) or CVDG(c,t).
/// NOT gates cost 0, two-qubit gates cost 1.
struct Gate {
  GateKind kind = GateKind::Not;
  uint8_t control = kNoControl;  // kNoControl for NOT
  uint8_t target = 0;

  static constexpr uint8_t kNoControl = 0xff;

  static Gate make_not(int target);
  static Gate cnot(int control, int target);
  static Gate cv(int control, int target);
  static Gate cvdag(int control, int target);

  bool has_control() const { return kind != GateKind::Not; }
  int cost() const { return kind == GateKind::Not ? 0 : 1; }

  bool operator==(const Gate&) const = default;
};

/// Canonical enumeration: NOT(0..2), then CNOT, CV, CVDG each sorted by
/// (control, target).  All BFS/DFS generator orders and witness
/// tie-breaking derive from this order.
const std::vector<Gate>& gate_catalog();    // all 21
const std::vector<Gate>& two_qubit_gates(); // the 18 cost-1 gates
const std::vector<Gate>& not_gates();       // the 3 cost-0 gates

/// Position of a two-qubit gate in two_qubit_gates(); -1 for NOT gates.
int two_qubit_gate_index(const Gate& g);

/// The gate's partial permutation on the 64 entries.  A controlled gate
/// is undefined on the 32 entries whose control wire carries V0 or V1.
const PartialPerm& gate_perm(const Gate& g);

/// A cascade, leftmost gate applied first.
using Circuit = std::vector<Gate>;

PartialPerm circuit_perm(const Circuit& c);
int circuit_cost(const Circuit& c);  // number of two-qubit gates

/// Reversed sequence with CV and CVDG swapped; evaluates to the inverse
/// partial permutation.
Circuit circuit_inverse(const Circuit& c);

/// Wire relabeling.  perm[w] is the new label of wire w.
using WirePerm = std::array<uint8_t, kNumWires>;

const std::array<WirePerm, 6>& all_wire_perms();
WirePerm inverse_wire_perm(const WirePerm& p);

Circuit conjugate_by_wire_perm(const Circuit& c, const WirePerm& p);
int relabel_entry(int entry, const WirePerm& p);
PartialPerm relabel_partial_perm(const PartialPerm& f, const WirePerm& p);

}  // namespace qsynth
