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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "qsynth/mvl.hpp"

namespace qsynth {

/// Injective partial map on the 64 truth-table entries.  Any gate or
/// cascade evaluates to one of these; the banned set of a cascade is the
/// complement of its domain.  Off-domain image slots are pinned to
/// kUndefined so that equality and hashing see a canonical byte pattern.
class PartialPerm {
 public:
  static constexpr uint8_t kUndefined = 0xff;

  /// Empty map (domain is the empty set).
  PartialPerm() { images_.fill(kUndefined); }

  static PartialPerm identity();

  /// Builds from explicit (input, output) pairs.  Throws
  /// std::invalid_argument on out-of-range entries or repeated
  /// inputs/outputs.
  static PartialPerm from_pairs(std::span<const std::pair<int, int>> pairs);

  /// Builds from a callable evaluated on every domain member; f must be
  /// injective on the domain.
  template <typename F>
  static PartialPerm from_function(uint64_t domain, F&& f) {
    PartialPerm p;
    for (int x = 0; x < kNumEntries; ++x) {
      if ((domain >> x) & 1) p.set(x, f(x));
    }
    return p;
  }

  bool in_domain(int x) const { return (domain_ >> x) & 1; }

  std::optional<int> apply(int x) const {
    if (!in_domain(x)) return std::nullopt;
    return images_[x];
  }

  uint64_t domain_mask() const { return domain_; }
  int domain_size() const;
  uint64_t image_mask() const;
  bool is_total() const { return domain_ == ~uint64_t{0}; }

  PartialPerm inverse() const;

  const std::array<uint8_t, kNumEntries>& images() const { return images_; }

  bool operator==(const PartialPerm&) const = default;

 private:
  void set(int x, int y);  // throws std::invalid_argument on invariant breach

  uint64_t domain_ = 0;
  std::array<uint8_t, kNumEntries> images_;

  friend PartialPerm compose(const PartialPerm&, const PartialPerm&);
};

/// Left-to-right composition: compose(f, g)(x) = g(f(x)), defined on
/// { x in dom(f) : f(x) in dom(g) }.
PartialPerm compose(const PartialPerm& f, const PartialPerm& g);

std::size_t hash_value(const PartialPerm& p);

}  // namespace qsynth

template <>
struct std::hash<qsynth::PartialPerm> {
  std::size_t operator()(const qsynth::PartialPerm& p) const { return qsynth::hash_value(p); }
};
