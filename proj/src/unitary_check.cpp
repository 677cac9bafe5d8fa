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

#include "qsynth/unitary_check.hpp"

namespace qsynth {

namespace {

GaussInt shifted(GaussInt g, int halves) {
  return {g.re << halves, g.im << halves};
}

}  // namespace

GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }

GaussInt operator*(GaussInt a, GaussInt b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Mat2 mat_mul(const Mat2& m, const Mat2& n) {
  return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
              m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d, m.halves + n.halves};
}

Vec2 mat_apply(const Mat2& m, const Vec2& v) {
  return Vec2{m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y, m.halves + v.halves};
}

bool mat_equal(const Mat2& m, const Mat2& n) {
  // Cross-scale so both sides share the denominator 2^(m.halves+n.halves).
  return shifted(m.a, n.halves) == shifted(n.a, m.halves) &&
         shifted(m.b, n.halves) == shifted(n.b, m.halves) &&
         shifted(m.c, n.halves) == shifted(n.c, m.halves) &&
         shifted(m.d, n.halves) == shifted(n.d, m.halves);
}

bool vec_equal(const Vec2& v, const Vec2& w) {
  return shifted(v.x, w.halves) == shifted(w.x, v.halves) &&
         shifted(v.y, w.halves) == shifted(w.y, v.halves);
}

Mat2 identity_mat2() { return Mat2{{1, 0}, {0, 0}, {0, 0}, {1, 0}, 0}; }

Mat2 unitary_for(WireOp op) {
  switch (op) {
    case WireOp::Not:
      return Mat2{{0, 0}, {1, 0}, {1, 0}, {0, 0}, 0};
    case WireOp::V:
      return Mat2{{1, 1}, {1, -1}, {1, -1}, {1, 1}, 1};
    case WireOp::Vdag:
      return Mat2{{1, -1}, {1, 1}, {1, 1}, {1, -1}, 1};
  }
  return identity_mat2();
}

Vec2 state_vector(QValue v) {
  switch (v) {
    case QValue::B0: return Vec2{{1, 0}, {0, 0}, 0};
    case QValue::B1: return Vec2{{0, 0}, {1, 0}, 0};
    case QValue::V0: return mat_apply(unitary_for(WireOp::V), state_vector(QValue::B0));
    case QValue::V1: return mat_apply(unitary_for(WireOp::V), state_vector(QValue::B1));
  }
  return Vec2{};
}

UnitaryReport check_table_against(WireOp op, const Mat2& m) {
  UnitaryReport report;
  for (int c = 0; c < 4; ++c) {
    QValue v = qvalue_from_code(c);
    Vec2 got = mat_apply(m, state_vector(v));
    Vec2 want = state_vector(value_map(op, v));
    if (!vec_equal(got, want)) report.mismatches.push_back({op, v});
  }
  return report;
}

UnitaryReport check_value_tables() {
  UnitaryReport report;
  for (WireOp op : {WireOp::Not, WireOp::V, WireOp::Vdag}) {
    UnitaryReport sub = check_table_against(op, unitary_for(op));
    report.mismatches.insert(report.mismatches.end(), sub.mismatches.begin(),
                             sub.mismatches.end());
  }
  return report;
}

}  // namespace qsynth
