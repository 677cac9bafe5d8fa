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

#include "qsynth/mvl.hpp"

#include <stdexcept>

namespace qsynth {

namespace {

// Rows indexed by WireOp, columns by value code.
constexpr uint8_t kValueTables[3][4] = {
    {1, 0, 3, 2},  // NOT: (B0 B1)(V0 V1)
    {2, 3, 1, 0},  // V:   B0→V0→B1→V1→B0
    {3, 2, 0, 1},  // VDAG: inverse 4-cycle
};

}  // namespace

QValue qvalue_from_code(int c) {
  if (c < 0 || c > 3) throw std::out_of_range("qvalue code out of range");
  return static_cast<QValue>(c);
}

const char* to_string(QValue v) {
  switch (v) {
    case QValue::B0: return "B0";
    case QValue::B1: return "B1";
    case QValue::V0: return "V0";
    case QValue::V1: return "V1";
  }
  return "?";
}

QValue value_map(WireOp op, QValue v) {
  return static_cast<QValue>(kValueTables[static_cast<int>(op)][code(v)]);
}

int entry_index(const Entry& e) {
  return 16 * code(e.wires[0]) + 4 * code(e.wires[1]) + code(e.wires[2]);
}

Entry entry_from_index(int index) {
  if (index < 0 || index >= kNumEntries) throw std::out_of_range("entry index out of range");
  return Entry{{static_cast<QValue>((index >> 4) & 3), static_cast<QValue>((index >> 2) & 3),
                static_cast<QValue>(index & 3)}};
}

bool entry_is_binary(int index) {
  // High bit of every base-4 digit clear.
  return (index & 0b101010) == 0;
}

int pattern_of_entry(int index) {
  return ((index >> 4) & 1) << 2 | ((index >> 2) & 1) << 1 | (index & 1);
}

int entry_of_pattern(int pattern) {
  return ((pattern >> 2) & 1) << 4 | ((pattern >> 1) & 1) << 2 | (pattern & 1);
}

const std::array<int, kNumPatterns>& binary_entries() {
  static const std::array<int, kNumPatterns> entries = [] {
    std::array<int, kNumPatterns> out{};
    for (int p = 0; p < kNumPatterns; ++p) out[p] = entry_of_pattern(p);
    return out;
  }();
  return entries;
}

uint64_t binary_entry_mask() {
  static const uint64_t mask = [] {
    uint64_t m = 0;
    for (int e : binary_entries()) m |= uint64_t{1} << e;
    return m;
  }();
  return mask;
}

}  // namespace qsynth
