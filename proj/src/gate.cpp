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

#include "qsynth/gate.hpp"

#include <stdexcept>

namespace qsynth {

namespace {

void check_wire(int w) {
  if (w < 0 || w >= kNumWires) throw std::invalid_argument("wire index out of range");
}

Gate make_controlled(GateKind kind, int control, int target) {
  check_wire(control);
  check_wire(target);
  if (control == target) throw std::invalid_argument("control equals target");
  Gate g;
  g.kind = kind;
  g.control = static_cast<uint8_t>(control);
  g.target = static_cast<uint8_t>(target);
  return g;
}

WireOp wire_op_for(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot: return WireOp::Not;
    case GateKind::Cv: return WireOp::V;
    case GateKind::Cvdag: return WireOp::Vdag;
    case GateKind::Not: break;
  }
  return WireOp::Not;
}

PartialPerm make_gate_perm(const Gate& g) {
  if (g.kind == GateKind::Not) {
    return PartialPerm::from_function(~uint64_t{0}, [&](int x) {
      Entry e = entry_from_index(x);
      e.wires[g.target] = value_map(WireOp::Not, e.wires[g.target]);
      return entry_index(e);
    });
  }
  uint64_t domain = 0;
  for (int x = 0; x < kNumEntries; ++x) {
    if (is_binary(entry_from_index(x).wires[g.control])) domain |= uint64_t{1} << x;
  }
  return PartialPerm::from_function(domain, [&](int x) {
    Entry e = entry_from_index(x);
    if (e.wires[g.control] == QValue::B1)
      e.wires[g.target] = value_map(wire_op_for(g.kind), e.wires[g.target]);
    return entry_index(e);
  });
}

// Catalog index: NOT(t) -> t; two-qubit gates follow in canonical order.
int catalog_index(const Gate& g) {
  if (g.kind == GateKind::Not) return g.target;
  int kind_block = static_cast<int>(g.kind) - 1;  // Cnot 0, Cv 1, Cvdag 2
  int pair = g.control * (kNumWires - 1) + (g.target > g.control ? g.target - 1 : g.target);
  return kNumWires + kind_block * 6 + pair;
}

}  // namespace

Gate Gate::make_not(int target) {
  check_wire(target);
  Gate g;
  g.kind = GateKind::Not;
  g.target = static_cast<uint8_t>(target);
  return g;
}

Gate Gate::cnot(int control, int target) { return make_controlled(GateKind::Cnot, control, target); }
Gate Gate::cv(int control, int target) { return make_controlled(GateKind::Cv, control, target); }
Gate Gate::cvdag(int control, int target) { return make_controlled(GateKind::Cvdag, control, target); }

const std::vector<Gate>& gate_catalog() {
  static const std::vector<Gate> catalog = [] {
    std::vector<Gate> gates;
    for (int t = 0; t < kNumWires; ++t) gates.push_back(Gate::make_not(t));
    for (GateKind kind : {GateKind::Cnot, GateKind::Cv, GateKind::Cvdag}) {
      for (int c = 0; c < kNumWires; ++c) {
        for (int t = 0; t < kNumWires; ++t) {
          if (c != t) gates.push_back(make_controlled(kind, c, t));
        }
      }
    }
    return gates;
  }();
  return catalog;
}

const std::vector<Gate>& two_qubit_gates() {
  static const std::vector<Gate> gates(gate_catalog().begin() + kNumWires, gate_catalog().end());
  return gates;
}

const std::vector<Gate>& not_gates() {
  static const std::vector<Gate> gates(gate_catalog().begin(), gate_catalog().begin() + kNumWires);
  return gates;
}

int two_qubit_gate_index(const Gate& g) {
  if (g.kind == GateKind::Not) return -1;
  return catalog_index(g) - kNumWires;
}

const PartialPerm& gate_perm(const Gate& g) {
  static const std::vector<PartialPerm> perms = [] {
    std::vector<PartialPerm> out;
    out.reserve(gate_catalog().size());
    for (const Gate& gate : gate_catalog()) out.push_back(make_gate_perm(gate));
    return out;
  }();
  return perms[catalog_index(g)];
}

PartialPerm circuit_perm(const Circuit& c) {
  PartialPerm p = PartialPerm::identity();
  for (const Gate& g : c) p = compose(p, gate_perm(g));
  return p;
}

int circuit_cost(const Circuit& c) {
  int cost = 0;
  for (const Gate& g : c) cost += g.cost();
  return cost;
}

Circuit circuit_inverse(const Circuit& c) {
  Circuit inv;
  inv.reserve(c.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::Cv)
      g.kind = GateKind::Cvdag;
    else if (g.kind == GateKind::Cvdag)
      g.kind = GateKind::Cv;
    inv.push_back(g);
  }
  return inv;
}

const std::array<WirePerm, 6>& all_wire_perms() {
  static const std::array<WirePerm, 6> perms = {
      WirePerm{0, 1, 2}, WirePerm{0, 2, 1}, WirePerm{1, 0, 2},
      WirePerm{1, 2, 0}, WirePerm{2, 0, 1}, WirePerm{2, 1, 0}};
  return perms;
}

WirePerm inverse_wire_perm(const WirePerm& p) {
  WirePerm inv{};
  for (int w = 0; w < kNumWires; ++w) inv[p[w]] = static_cast<uint8_t>(w);
  return inv;
}

Circuit conjugate_by_wire_perm(const Circuit& c, const WirePerm& p) {
  Circuit out;
  out.reserve(c.size());
  for (Gate g : c) {
    g.target = p[g.target];
    if (g.has_control()) g.control = p[g.control];
    out.push_back(g);
  }
  return out;
}

int relabel_entry(int entry, const WirePerm& p) {
  Entry e = entry_from_index(entry);
  Entry out{};
  for (int w = 0; w < kNumWires; ++w) out.wires[p[w]] = e.wires[w];
  return entry_index(out);
}

PartialPerm relabel_partial_perm(const PartialPerm& f, const WirePerm& p) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < kNumEntries; ++x) {
    if (auto y = f.apply(x)) pairs.emplace_back(relabel_entry(x, p), relabel_entry(*y, p));
  }
  return PartialPerm::from_pairs(pairs);
}

}  // namespace qsynth
