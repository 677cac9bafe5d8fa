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

namespace qsynth {

/// Single-qubit alphabet closed under NOT, V and V†: the two basis states
/// plus the two intermediate states V|0⟩ and V|1⟩.
enum class QValue : uint8_t { B0 = 0, B1 = 1, V0 = 2, V1 = 3 };

constexpr int code(QValue v) { return static_cast<int>(v); }
constexpr bool is_binary(QValue v) { return code(v) <= 1; }
QValue qvalue_from_code(int c);
const char* to_string(QValue v);

/// Single-wire value maps.  NOT swaps within {B0,B1} and {V0,V1};
/// V is the 4-cycle B0→V0→B1→V1→B0 and VDAG its inverse.
enum class WireOp : uint8_t { Not, V, Vdag };

QValue value_map(WireOp op, QValue v);

inline constexpr int kNumWires = 3;
inline constexpr int kNumEntries = 64;  // 4^3 truth-table entries
inline constexpr int kNumPatterns = 8;  // all-binary entries

/// A three-wire truth-table entry, wire 0 most significant.
struct Entry {
  std::array<QValue, kNumWires> wires;
  bool operator==(const Entry&) const = default;
};

/// Positional base-4 index, 16*code(v0) + 4*code(v1) + code(v2).
int entry_index(const Entry& e);
Entry entry_from_index(int index);  // throws std::out_of_range

bool entry_is_binary(int index);
int pattern_of_entry(int index);   // pre: entry_is_binary(index)
int entry_of_pattern(int pattern); // pattern = 4*v0 + 2*v1 + v2

/// The 8 all-binary entry indices in pattern order: {0,1,4,5,16,17,20,21}.
const std::array<int, kNumPatterns>& binary_entries();

/// Membership mask of the binary entries within the 64-entry space.
uint64_t binary_entry_mask();

}  // namespace qsynth
