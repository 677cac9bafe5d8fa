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

#include "qsynth/partial_perm.hpp"

#include <bit>
#include <stdexcept>

namespace qsynth {

PartialPerm PartialPerm::identity() {
  PartialPerm p;
  for (int x = 0; x < kNumEntries; ++x) p.set(x, x);
  return p;
}

PartialPerm PartialPerm::from_pairs(std::span<const std::pair<int, int>> pairs) {
  PartialPerm p;
  for (const auto& [x, y] : pairs) p.set(x, y);
  return p;
}

void PartialPerm::set(int x, int y) {
  if (x < 0 || x >= kNumEntries || y < 0 || y >= kNumEntries)
    throw std::invalid_argument("partial perm entry out of range");
  if (in_domain(x)) throw std::invalid_argument("partial perm input already mapped");
  if (image_mask() & (uint64_t{1} << y)) throw std::invalid_argument("partial perm not injective");
  domain_ |= uint64_t{1} << x;
  images_[x] = static_cast<uint8_t>(y);
}

int PartialPerm::domain_size() const { return std::popcount(domain_); }

uint64_t PartialPerm::image_mask() const {
  uint64_t mask = 0;
  uint64_t rest = domain_;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    mask |= uint64_t{1} << images_[x];
  }
  return mask;
}

PartialPerm PartialPerm::inverse() const {
  PartialPerm inv;
  uint64_t rest = domain_;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    inv.domain_ |= uint64_t{1} << images_[x];
    inv.images_[images_[x]] = static_cast<uint8_t>(x);
  }
  return inv;
}

PartialPerm compose(const PartialPerm& f, const PartialPerm& g) {
  PartialPerm h;
  uint64_t rest = f.domain_;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    uint8_t y = f.images_[x];
    if (g.in_domain(y)) {
      h.domain_ |= uint64_t{1} << x;
      h.images_[x] = g.images_[y];
    }
  }
  return h;
}

std::size_t hash_value(const PartialPerm& p) {
  // FNV-1a over the canonical 72-byte encoding (domain mask then images).
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  uint64_t dom = p.domain_mask();
  for (int i = 0; i < 8; ++i) mix(static_cast<uint8_t>(dom >> (8 * i)));
  for (uint8_t b : p.images()) mix(b);
  return static_cast<std::size_t>(h);
}

}  // namespace qsynth
