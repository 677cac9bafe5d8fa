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

#include <cstdint>
#include <vector>

#include "qsynth/mvl.hpp"

namespace qsynth {

/// Exact 2x2 complex arithmetic over Gaussian integers scaled by a power
/// of two, enough to represent X, V = (1/2)[[1+i,1-i],[1-i,1+i]], V† and
/// the four state vectors without rounding.

struct GaussInt {
  int64_t re = 0;
  int64_t im = 0;
  bool operator==(const GaussInt&) const = default;
};

GaussInt operator+(GaussInt a, GaussInt b);
GaussInt operator*(GaussInt a, GaussInt b);

/// Matrix of Gaussian integers divided by 2^halves.
struct Mat2 {
  GaussInt a, b, c, d;  // [[a, b], [c, d]]
  int halves = 0;
};

/// Column vector divided by 2^halves.
struct Vec2 {
  GaussInt x, y;
  int halves = 0;
};

Mat2 mat_mul(const Mat2& m, const Mat2& n);
Vec2 mat_apply(const Mat2& m, const Vec2& v);
bool mat_equal(const Mat2& m, const Mat2& n);  // exact, scale-normalized
bool vec_equal(const Vec2& v, const Vec2& w);

Mat2 unitary_for(WireOp op);
Mat2 identity_mat2();
Vec2 state_vector(QValue v);  // |B0⟩, |B1⟩, V|B0⟩, V|B1⟩

struct UnitaryMismatch {
  WireOp op;
  QValue input;
  bool operator==(const UnitaryMismatch&) const = default;
};

struct UnitaryReport {
  std::vector<UnitaryMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Checks one value-map table against an explicit matrix: for every value
/// v, the matrix applied to v's state vector must equal the state vector
/// of value_map(op, v).
UnitaryReport check_table_against(WireOp op, const Mat2& m);

/// Checks all three value-map tables against X, V and V†.
UnitaryReport check_value_tables();

}  // namespace qsynth
