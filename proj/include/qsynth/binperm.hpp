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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qsynth/gate.hpp"
#include "qsynth/mvl.hpp"
#include "qsynth/partial_perm.hpp"

namespace qsynth {

inline constexpr int kS8Order = 40320;  // 8!

/// A 3-bit reversible function: permutation of the 8 input patterns,
/// pattern = 4*v0 + 2*v1 + v2.
struct BinPerm {
  std::array<uint8_t, kNumPatterns> images{0, 1, 2, 3, 4, 5, 6, 7};

  static BinPerm identity() { return BinPerm{}; }
  /// Validates the permutation property; throws std::invalid_argument.
  static BinPerm from_images(std::span<const int> images);

  uint8_t operator[](int pattern) const { return images[pattern]; }
  bool operator==(const BinPerm&) const = default;
  auto operator<=>(const BinPerm&) const = default;
};

BinPerm compose(const BinPerm& f, const BinPerm& g);  // x -> g(f(x))
BinPerm inverse(const BinPerm& f);

/// Lehmer-code rank, lexicographic: identity -> 0, reversal -> 40319.
uint16_t rank(const BinPerm& p);
BinPerm unrank(int r);  // throws std::out_of_range

/// Input-side layer of NOT gates.  The mask uses the pattern encoding's
/// bit weights (wire 0 <-> 4, wire 1 <-> 2, wire 2 <-> 1), so the induced
/// permutation on patterns is exactly x -> x XOR mask.
struct NotLayer {
  uint8_t mask = 0;

  static NotLayer for_wire(int w);
  bool acts_on_wire(int w) const { return (mask >> (kNumWires - 1 - w)) & 1; }

  BinPerm as_binperm() const;
  PartialPerm as_partial_perm() const;  // total on the 64 entries

  bool operator==(const NotLayer&) const = default;
};

inline constexpr int kNumNotLayers = 8;

/// S8 element induced on the binary subspace, defined iff every binary
/// entry is in the domain and maps to a binary entry.  An absent result
/// means the cascade is not a valid binary-reversible circuit.
std::optional<BinPerm> restricted_perm(const PartialPerm& p);

/// Binary-input map with possibly non-binary outputs: out[pattern] is an
/// entry index.  Defined iff every binary entry is in the domain.
std::optional<std::array<uint8_t, kNumPatterns>> restricted_map(const PartialPerm& p);

/// Smallest subset of S8 containing the generators and the identity that
/// is closed under composition.  Returned sorted by rank.
std::vector<BinPerm> generate_closure(std::span<const BinPerm> generators);

/// The restrictions of the six CNOT gates.
const std::vector<BinPerm>& cnot_restrictions();

/// True iff NOT gates, CNOT gates and g together generate all of S8.
bool is_universal(const BinPerm& g);

/// Lookup of well-known permutations: "identity", "toffoli" (target wire
/// 2, controls 0 and 1) or "peres".  Throws std::invalid_argument.
BinPerm named_perm(std::string_view name);

int relabel_pattern(int pattern, const WirePerm& p);
BinPerm conjugate_by_wire_perm(const BinPerm& g, const WirePerm& p);

}  // namespace qsynth
