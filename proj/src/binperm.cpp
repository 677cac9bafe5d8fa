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

#include "qsynth/binperm.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qsynth {

BinPerm BinPerm::from_images(std::span<const int> images) {
  if (images.size() != kNumPatterns) throw std::invalid_argument("expected 8 images");
  BinPerm p;
  uint8_t seen = 0;
  for (int i = 0; i < kNumPatterns; ++i) {
    int v = images[i];
    if (v < 0 || v >= kNumPatterns) throw std::invalid_argument("image out of range");
    if ((seen >> v) & 1) throw std::invalid_argument("duplicate image");
    seen |= uint8_t(1u << v);
    p.images[i] = static_cast<uint8_t>(v);
  }
  return p;
}

BinPerm compose(const BinPerm& f, const BinPerm& g) {
  BinPerm h;
  for (int x = 0; x < kNumPatterns; ++x) h.images[x] = g.images[f.images[x]];
  return h;
}

BinPerm inverse(const BinPerm& f) {
  BinPerm inv;
  for (int x = 0; x < kNumPatterns; ++x) inv.images[f.images[x]] = static_cast<uint8_t>(x);
  return inv;
}

uint16_t rank(const BinPerm& p) {
  int r = 0;
  for (int i = 0; i < kNumPatterns; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < kNumPatterns; ++j) {
      if (p.images[j] < p.images[i]) ++smaller;
    }
    r = r * (kNumPatterns - i) + smaller;
  }
  return static_cast<uint16_t>(r);
}

BinPerm unrank(int r) {
  if (r < 0 || r >= kS8Order) throw std::out_of_range("rank out of range");
  std::array<int, kNumPatterns> digits{};
  for (int i = kNumPatterns - 1; i >= 0; --i) {
    digits[i] = r % (kNumPatterns - i);
    r /= (kNumPatterns - i);
  }
  std::array<uint8_t, kNumPatterns> pool{0, 1, 2, 3, 4, 5, 6, 7};
  BinPerm p;
  int remaining = kNumPatterns;
  for (int i = 0; i < kNumPatterns; ++i) {
    int d = digits[i];
    p.images[i] = pool[d];
    std::copy(pool.begin() + d + 1, pool.begin() + remaining, pool.begin() + d);
    --remaining;
  }
  return p;
}

NotLayer NotLayer::for_wire(int w) {
  if (w < 0 || w >= kNumWires) throw std::invalid_argument("wire index out of range");
  return NotLayer{static_cast<uint8_t>(1u << (kNumWires - 1 - w))};
}

BinPerm NotLayer::as_binperm() const {
  BinPerm p;
  for (int x = 0; x < kNumPatterns; ++x) p.images[x] = static_cast<uint8_t>(x ^ mask);
  return p;
}

PartialPerm NotLayer::as_partial_perm() const {
  PartialPerm p = PartialPerm::identity();
  for (int w = 0; w < kNumWires; ++w) {
    if (acts_on_wire(w)) p = compose(p, gate_perm(Gate::make_not(w)));
  }
  return p;
}

std::optional<BinPerm> restricted_perm(const PartialPerm& p) {
  if ((p.domain_mask() & binary_entry_mask()) != binary_entry_mask()) return std::nullopt;
  BinPerm b;
  for (int pat = 0; pat < kNumPatterns; ++pat) {
    int image = p.images()[entry_of_pattern(pat)];
    if (!entry_is_binary(image)) return std::nullopt;
    b.images[pat] = static_cast<uint8_t>(pattern_of_entry(image));
  }
  return b;
}

std::optional<std::array<uint8_t, kNumPatterns>> restricted_map(const PartialPerm& p) {
  if ((p.domain_mask() & binary_entry_mask()) != binary_entry_mask()) return std::nullopt;
  std::array<uint8_t, kNumPatterns> out{};
  for (int pat = 0; pat < kNumPatterns; ++pat) out[pat] = p.images()[entry_of_pattern(pat)];
  return out;
}

std::vector<BinPerm> generate_closure(std::span<const BinPerm> generators) {
  std::vector<bool> seen(kS8Order, false);
  std::vector<BinPerm> worklist;
  seen[rank(BinPerm::identity())] = true;
  worklist.push_back(BinPerm::identity());
  for (const BinPerm& g : generators) {
    uint16_t r = rank(g);
    if (!seen[r]) {
      seen[r] = true;
      worklist.push_back(g);
    }
  }
  // Right-multiplication closure; inverses come for free in a finite group.
  for (size_t i = 0; i < worklist.size(); ++i) {
    BinPerm current = worklist[i];
    for (const BinPerm& g : generators) {
      BinPerm next = compose(current, g);
      uint16_t r = rank(next);
      if (!seen[r]) {
        seen[r] = true;
        worklist.push_back(next);
      }
    }
  }
  std::vector<BinPerm> out;
  out.reserve(worklist.size());
  for (int r = 0; r < kS8Order; ++r) {
    if (seen[r]) out.push_back(unrank(r));
  }
  return out;
}

const std::vector<BinPerm>& cnot_restrictions() {
  static const std::vector<BinPerm> perms = [] {
    std::vector<BinPerm> out;
    for (int c = 0; c < kNumWires; ++c) {
      for (int t = 0; t < kNumWires; ++t) {
        if (c != t) out.push_back(*restricted_perm(gate_perm(Gate::cnot(c, t))));
      }
    }
    return out;
  }();
  return perms;
}

bool is_universal(const BinPerm& g) {
  std::vector<BinPerm> gens;
  for (int w = 0; w < kNumWires; ++w) gens.push_back(NotLayer::for_wire(w).as_binperm());
  gens.insert(gens.end(), cnot_restrictions().begin(), cnot_restrictions().end());
  gens.push_back(g);
  return generate_closure(gens).size() == kS8Order;
}

BinPerm named_perm(std::string_view name) {
  if (name == "identity") return BinPerm::identity();
  if (name == "toffoli") {
    // (A,B,C) -> (A, B, C xor AB)
    return BinPerm::from_images(std::array<int, 8>{0, 1, 2, 3, 4, 5, 7, 6});
  }
  if (name == "peres") {
    // (A,B,C) -> (A, A xor B, C xor AB)
    return BinPerm::from_images(std::array<int, 8>{0, 1, 2, 3, 6, 7, 5, 4});
  }
  throw std::invalid_argument("unknown permutation name: " + std::string(name));
}

int relabel_pattern(int pattern, const WirePerm& p) {
  int out = 0;
  for (int w = 0; w < kNumWires; ++w) {
    int bit = (pattern >> (kNumWires - 1 - w)) & 1;
    out |= bit << (kNumWires - 1 - p[w]);
  }
  return out;
}

BinPerm conjugate_by_wire_perm(const BinPerm& g, const WirePerm& p) {
  WirePerm inv = inverse_wire_perm(p);
  BinPerm out;
  for (int y = 0; y < kNumPatterns; ++y) {
    out.images[y] = static_cast<uint8_t>(relabel_pattern(g.images[relabel_pattern(y, inv)], p));
  }
  return out;
}

}  // namespace qsynth
