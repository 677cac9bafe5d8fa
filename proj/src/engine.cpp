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

#include "qsynth/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <condition_variable>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qsynth {

namespace {

// ---------------------------------------------------------------------
// Packed search state: canonical 56-byte encoding of a partial
// permutation (domain mask + 6-bit images, zero off domain).  Behavioral
// equality of cascades is exactly equality of this encoding.

struct PackedKey {
  uint64_t dom = 0;
  std::array<uint64_t, 6> img{};
  bool operator==(const PackedKey&) const = default;
};

inline void key_set6(PackedKey& k, int i, uint8_t v) {
  int bit = 6 * i;
  int word = bit >> 6;
  int off = bit & 63;
  k.img[word] |= uint64_t{v} << off;
  if (off > 58) k.img[word + 1] |= uint64_t{v} >> (64 - off);
}

inline uint8_t key_get6(const PackedKey& k, int i) {
  int bit = 6 * i;
  int word = bit >> 6;
  int off = bit & 63;
  uint64_t v = k.img[word] >> off;
  if (off > 58) v |= k.img[word + 1] << (64 - off);
  return static_cast<uint8_t>(v & 63);
}

struct Unpacked {
  uint64_t dom = 0;
  std::array<uint8_t, kNumEntries> img{};
};

PackedKey pack(const Unpacked& u) {
  PackedKey k;
  k.dom = u.dom;
  uint64_t rest = u.dom;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    key_set6(k, x, u.img[x]);
  }
  return k;
}

Unpacked unpack(const PackedKey& k) {
  Unpacked u;
  u.dom = k.dom;
  uint64_t rest = k.dom;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    u.img[x] = key_get6(k, x);
  }
  return u;
}

Unpacked from_partial_perm(const PartialPerm& p) {
  Unpacked u;
  u.dom = p.domain_mask();
  uint64_t rest = u.dom;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    u.img[x] = p.images()[x];
  }
  return u;
}

inline Unpacked compose_with_gate(const Unpacked& s, const Unpacked& gate) {
  Unpacked out;
  uint64_t rest = s.dom;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    uint8_t y = s.img[x];
    if ((gate.dom >> y) & 1) {
      out.dom |= uint64_t{1} << x;
      out.img[x] = gate.img[y];
    }
  }
  return out;
}

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

inline uint64_t key_hash(const PackedKey& k) {
  uint64_t h = mix64(k.dom ^ 0x9e3779b97f4a7c15ull);
  for (uint64_t w : k.img) h = mix64(h ^ w);
  return h;
}

/// Restriction of a packed state to the binary subspace, as a rank.
std::optional<uint16_t> packed_restriction_rank(const PackedKey& k) {
  if ((k.dom & binary_entry_mask()) != binary_entry_mask()) return std::nullopt;
  BinPerm b;
  for (int pat = 0; pat < kNumPatterns; ++pat) {
    uint8_t e = key_get6(k, binary_entries()[pat]);
    if (!entry_is_binary(e)) return std::nullopt;
    b.images[pat] = static_cast<uint8_t>(pattern_of_entry(e));
  }
  return rank(b);
}

// ---------------------------------------------------------------------
// Append-only state store with an open-addressing index over all layers.

constexpr uint32_t kNoSlot = 0xffffffffu;

class StateStore {
 public:
  StateStore() { rebuild(1 << 12); }

  size_t size() const { return keys_.size(); }

  const PackedKey& key(uint32_t i) const { return keys_[i]; }
  uint32_t parent(uint32_t i) const { return parents_[i]; }
  uint8_t via(uint32_t i) const { return vias_[i]; }

  /// Returns (index, inserted).
  std::pair<uint32_t, bool> find_or_insert(const PackedKey& k, uint32_t parent, uint8_t via) {
    if ((keys_.size() + 1) * 5 > slots() * 3) rebuild(slots() * 2);
    uint64_t slot = key_hash(k) & mask_;
    while (table_[slot] != kNoSlot) {
      if (keys_[table_[slot]] == k) return {table_[slot], false};
      slot = (slot + 1) & mask_;
    }
    uint32_t idx = static_cast<uint32_t>(keys_.size());
    keys_.push_back(k);
    parents_.push_back(parent);
    vias_.push_back(via);
    table_[slot] = idx;
    return {idx, true};
  }

  /// Drops every state with index >= n and reindexes.
  void rollback_to(size_t n) {
    keys_.resize(n);
    parents_.resize(n);
    vias_.resize(n);
    size_t want = slots();
    while (n * 5 > want * 3) want *= 2;
    rebuild(want);
  }

  uint64_t memory_bytes() const {
    return keys_.capacity() * sizeof(PackedKey) + parents_.capacity() * sizeof(uint32_t) +
           vias_.capacity() + table_.capacity() * sizeof(uint32_t);
  }

 private:
  size_t slots() const { return table_.size(); }

  void rebuild(size_t n) {
    table_.assign(n, kNoSlot);
    mask_ = n - 1;
    for (uint32_t i = 0; i < keys_.size(); ++i) {
      uint64_t slot = key_hash(keys_[i]) & mask_;
      while (table_[slot] != kNoSlot) slot = (slot + 1) & mask_;
      table_[slot] = i;
    }
  }

  std::vector<PackedKey> keys_;
  std::vector<uint32_t> parents_;
  std::vector<uint8_t> vias_;
  std::vector<uint32_t> table_;
  uint64_t mask_ = 0;
};

constexpr uint8_t kRootVia = 0xff;
constexpr uint32_t kChunkParents = 4096;

/// Generators in expansion order: the 18 two-qubit gates, then (free-NOTs
/// mode only) the 3 NOT gates as cost-0 edges with via codes 18..20.
std::vector<Unpacked> expansion_generators() {
  std::vector<Unpacked> gens;
  for (const Gate& g : two_qubit_gates()) gens.push_back(from_partial_perm(gate_perm(g)));
  for (const Gate& g : not_gates()) gens.push_back(from_partial_perm(gate_perm(g)));
  return gens;
}

Gate gate_for_via(uint8_t via) {
  return via < 18 ? two_qubit_gates()[via] : not_gates()[via - 18];
}

Circuit circuit_of_state(const StateStore& store, uint32_t idx) {
  std::vector<uint8_t> vias;
  while (store.via(idx) != kRootVia) {
    vias.push_back(store.via(idx));
    idx = store.parent(idx);
  }
  Circuit c;
  c.reserve(vias.size());
  for (auto it = vias.rbegin(); it != vias.rend(); ++it) c.push_back(gate_for_via(*it));
  return c;
}

struct PendingHit {
  uint16_t perm_rank;
  uint32_t state;
};

}  // namespace

// ---------------------------------------------------------------------
// CostDatabase

CostDatabase CostDatabase::from_records(int max_cost, bool free_nots,
                                        std::vector<DbRecord> records) {
  if (max_cost < 0) throw std::invalid_argument("max_cost must be >= 0");
  std::sort(records.begin(), records.end(),
            [](const DbRecord& a, const DbRecord& b) { return a.perm_rank < b.perm_rank; });
  CostDatabase db;
  db.max_cost_ = max_cost;
  db.free_nots_ = free_nots;
  db.rank_index_.assign(kS8Order, -1);
  db.g_layers_.assign(max_cost + 1, {});
  for (size_t i = 0; i < records.size(); ++i) {
    const DbRecord& rec = records[i];
    std::string where = "record " + std::to_string(i) + " (rank " +
                        std::to_string(rec.perm_rank) + "): ";
    if (rec.perm_rank >= kS8Order) throw std::invalid_argument(where + "rank out of range");
    if (db.rank_index_[rec.perm_rank] != -1)
      throw std::invalid_argument(where + "duplicate rank");
    if (rec.cost > max_cost) throw std::invalid_argument(where + "cost exceeds max_cost");
    if (!free_nots) {
      for (const Gate& g : rec.witness) {
        if (g.kind == GateKind::Not)
          throw std::invalid_argument(where + "NOT gate in witness");
      }
    }
    if (circuit_cost(rec.witness) != rec.cost)
      throw std::invalid_argument(where + "witness cost does not match recorded cost");
    auto restriction = restricted_perm(circuit_perm(rec.witness));
    if (!restriction || rank(*restriction) != rec.perm_rank)
      throw std::invalid_argument(where + "witness does not restrict to its rank");
    db.rank_index_[rec.perm_rank] = static_cast<int32_t>(i);
    db.g_layers_[rec.cost].push_back(rec.perm_rank);
  }
  db.records_ = std::move(records);
  return db;
}

bool CostDatabase::g_complete() const {
  return records_.size() == static_cast<size_t>(free_nots_ ? kS8Order : kGroupOrderNotFree);
}

std::optional<DbRecord> CostDatabase::lookup(const BinPerm& g) const {
  if (rank_index_.empty()) return std::nullopt;
  int32_t i = rank_index_[rank(g)];
  if (i < 0) return std::nullopt;
  return records_[i];
}

std::optional<int> CostDatabase::cost_of(uint16_t perm_rank) const {
  if (rank_index_.empty() || perm_rank >= kS8Order) return std::nullopt;
  int32_t i = rank_index_[perm_rank];
  if (i < 0) return std::nullopt;
  return records_[i].cost;
}

const std::vector<uint16_t>& CostDatabase::g_layer(int k) const {
  if (k < 0 || k > max_cost_) throw std::out_of_range("cost layer out of range");
  return g_layers_[k];
}

// ---------------------------------------------------------------------
// Finding Algorithm: layered BFS over cascades.

FindingResult finding(const FindingOptions& options) {
  if (options.max_cost < -1) throw std::invalid_argument("max_cost must be >= 0 or -1");
  const std::vector<Unpacked> gens = expansion_generators();
  const int num_cost1 = 18;
  const int num_cost0 = options.free_nots ? 3 : 0;
  const int group_target = options.free_nots ? kS8Order : kGroupOrderNotFree;

  FindingResult result;
  StateStore store;
  std::vector<uint32_t> layer_offsets;  // layer k spans [offsets[k], offsets[k+1])
  std::array<int8_t, kS8Order> cost_by_rank;
  cost_by_rank.fill(-1);
  std::vector<DbRecord> records;
  uint64_t found_perms = 0;

  std::vector<PendingHit> pending;
  auto note_state = [&](uint32_t idx, const PackedKey& key) {
    if (auto r = packed_restriction_rank(key)) {
      if (cost_by_rank[*r] == -1) {
        cost_by_rank[*r] = 0;  // provisional; real cost assigned at commit
        pending.push_back({*r, idx});
      }
    }
  };

  // Saturate a layer under the cost-0 NOT generators (free-NOTs mode):
  // worklist over the layer's states, including ones appended here, so
  // NOT gates may follow any prefix.
  auto zero_close = [&](uint32_t layer_start) {
    if (num_cost0 == 0) return;
    for (uint32_t i = layer_start; i < store.size(); ++i) {
      Unpacked cur = unpack(store.key(i));
      for (int n = 0; n < num_cost0; ++n) {
        PackedKey child = pack(compose_with_gate(cur, gens[num_cost1 + n]));
        auto [idx, fresh] = store.find_or_insert(child, i, static_cast<uint8_t>(num_cost1 + n));
        if (fresh) note_state(idx, child);
      }
    }
  };

  // Layer 0: the identity cascade, plus its NOT closure in free-NOTs mode.
  layer_offsets.push_back(0);
  {
    PackedKey root = pack(from_partial_perm(PartialPerm::identity()));
    auto [idx, inserted] = store.find_or_insert(root, 0, kRootVia);
    note_state(idx, root);
    zero_close(0);
  }
  layer_offsets.push_back(static_cast<uint32_t>(store.size()));

  auto commit_layer = [&](int depth) {
    result.layers.push_back(LayerStats{
        depth, layer_offsets[depth + 1] - layer_offsets[depth], pending.size()});
    for (const PendingHit& hit : pending) {
      cost_by_rank[hit.perm_rank] = static_cast<int8_t>(depth);
      records.push_back(DbRecord{hit.perm_rank, static_cast<uint8_t>(depth), {}});
      records.back().witness = circuit_of_state(store, hit.state);
      ++found_perms;
    }
    pending.clear();
    result.completed_cost = depth;
    if (options.collect_layers) {
      std::vector<LayerMember> members;
      members.reserve(layer_offsets[depth + 1] - layer_offsets[depth]);
      for (uint32_t i = layer_offsets[depth]; i < layer_offsets[depth + 1]; ++i) {
        Unpacked u = unpack(store.key(i));
        members.push_back(LayerMember{
            PartialPerm::from_function(u.dom, [&](int x) { return u.img[x]; }),
            circuit_of_state(store, i)});
      }
      result.layer_members.push_back(std::move(members));
    }
  };
  commit_layer(0);

  const uint64_t chunk_buffer_bytes =
      uint64_t(std::max(options.threads, 1) + 2) * kChunkParents * num_cost1 * sizeof(PackedKey);

  int depth = 0;
  while (true) {
    if (options.max_cost >= 0 && depth >= options.max_cost) break;
    if (options.max_cost < 0 && found_perms >= static_cast<uint64_t>(group_target)) break;
    uint32_t frontier_begin = layer_offsets[depth];
    uint32_t frontier_end = layer_offsets[depth + 1];
    if (frontier_begin == frontier_end) {
      result.monoid_closed = true;
      break;
    }
    ++depth;

    bool budget_hit = false;
    uint32_t layer_start = static_cast<uint32_t>(store.size());
    uint32_t num_chunks =
        (frontier_end - frontier_begin + kChunkParents - 1) / kChunkParents;

    auto expand_chunk = [&](uint32_t c, std::vector<PackedKey>& out) {
      uint32_t begin = frontier_begin + c * kChunkParents;
      uint32_t end = std::min(begin + kChunkParents, frontier_end);
      out.clear();
      out.reserve(static_cast<size_t>(end - begin) * num_cost1);
      for (uint32_t i = begin; i < end; ++i) {
        Unpacked cur = unpack(store.key(i));
        for (int g = 0; g < num_cost1; ++g) out.push_back(pack(compose_with_gate(cur, gens[g])));
      }
    };

    auto merge_chunk = [&](uint32_t c, const std::vector<PackedKey>& cands) {
      if (budget_hit) return;
      if (store.memory_bytes() + chunk_buffer_bytes > options.memory_limit_bytes) {
        budget_hit = true;
        return;
      }
      uint32_t base_parent = frontier_begin + c * kChunkParents;
      for (size_t j = 0; j < cands.size(); ++j) {
        uint32_t parent = base_parent + static_cast<uint32_t>(j) / num_cost1;
        uint8_t via = static_cast<uint8_t>(j % num_cost1);
        auto [idx, fresh] = store.find_or_insert(cands[j], parent, via);
        if (fresh) note_state(idx, cands[j]);
      }
    };

    if (options.threads <= 1 || num_chunks <= 1) {
      std::vector<PackedKey> buf;
      for (uint32_t c = 0; c < num_chunks && !budget_hit; ++c) {
        expand_chunk(c, buf);
        merge_chunk(c, buf);
      }
    } else {
      // Workers expand disjoint chunks; the merge happens in chunk order,
      // so the result is identical to the sequential run.
      std::mutex mu;
      std::condition_variable produced, space;
      std::map<uint32_t, std::vector<PackedKey>> ready;
      std::atomic<uint32_t> next_chunk{0};
      uint32_t merge_next = 0;
      const uint32_t max_inflight = static_cast<uint32_t>(options.threads) + 2;

      auto worker = [&] {
        std::vector<PackedKey> buf;
        while (true) {
          uint32_t c = next_chunk.fetch_add(1);
          if (c >= num_chunks) return;
          expand_chunk(c, buf);
          std::unique_lock lk(mu);
          space.wait(lk, [&] { return c < merge_next + max_inflight; });
          ready[c] = std::move(buf);
          buf = {};
          produced.notify_all();
        }
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < options.threads; ++t) pool.emplace_back(worker);
      for (uint32_t m = 0; m < num_chunks; ++m) {
        std::vector<PackedKey> buf;
        {
          std::unique_lock lk(mu);
          produced.wait(lk, [&] { return ready.count(m) != 0; });
          buf = std::move(ready[m]);
          ready.erase(m);
          merge_next = m + 1;
          space.notify_all();
        }
        merge_chunk(m, buf);
      }
      for (auto& t : pool) t.join();
    }

    if (!budget_hit) {
      zero_close(layer_start);
      if (store.memory_bytes() + chunk_buffer_bytes > options.memory_limit_bytes)
        budget_hit = true;
    }

    if (budget_hit) {
      for (const PendingHit& hit : pending) cost_by_rank[hit.perm_rank] = -1;
      pending.clear();
      store.rollback_to(layer_start);
      result.status = FindingStatus::kBudgetExceeded;
      result.error = "memory budget exceeded while building layer " + std::to_string(depth) +
                     "; last completed layer is " + std::to_string(depth - 1);
      --depth;
      break;
    }

    layer_offsets.push_back(static_cast<uint32_t>(store.size()));
    commit_layer(depth);
  }

  int db_max_cost = (options.max_cost >= 0 && result.status == FindingStatus::kComplete)
                        ? options.max_cost
                        : result.completed_cost;
  result.db = CostDatabase::from_records(db_max_cost, options.free_nots, std::move(records));
  return result;
}

// ---------------------------------------------------------------------
// Theorem 2 machinery.

std::vector<BinPerm> s8_layer(const CostDatabase& db, int k) {
  if (db.free_nots()) throw std::invalid_argument("s8_layer needs a NOT-free database");
  std::vector<bool> seen(kS8Order, false);
  for (int mask = 0; mask < kNumNotLayers; ++mask) {
    BinPerm a = NotLayer{static_cast<uint8_t>(mask)}.as_binperm();
    for (uint16_t r : db.g_layer(k)) seen[rank(compose(a, unrank(r)))] = true;
  }
  std::vector<BinPerm> out;
  for (int r = 0; r < kS8Order; ++r) {
    if (seen[r]) out.push_back(unrank(r));
  }
  return out;
}

Theorem2Report verify_theorem2(const CostDatabase& db) {
  if (db.free_nots()) throw std::invalid_argument("verify_theorem2 needs a NOT-free database");
  Theorem2Report report;
  report.max_cost = db.max_cost();

  // (i) every (mask, cost-layer) pair lands on fresh S8 elements.
  std::vector<int16_t> provenance(kS8Order, -1);  // 8*cost + mask
  report.layers_disjoint = true;
  for (int k = 0; k <= db.max_cost(); ++k) {
    for (int mask = 0; mask < kNumNotLayers; ++mask) {
      BinPerm a = NotLayer{static_cast<uint8_t>(mask)}.as_binperm();
      for (uint16_t r : db.g_layer(k)) {
        uint16_t t = rank(compose(a, unrank(r)));
        if (provenance[t] != -1) {
          report.layers_disjoint = false;
          report.violations.push_back(
              "rank " + std::to_string(t) + " reached by mask " + std::to_string(mask) +
              " at cost " + std::to_string(k) + " and mask " +
              std::to_string(provenance[t] % kNumNotLayers) + " at cost " +
              std::to_string(provenance[t] / kNumNotLayers));
        } else {
          provenance[t] = static_cast<int16_t>(kNumNotLayers * k + mask);
          ++report.distinct_s8;
        }
      }
    }
  }

  // (ii) pairwise disjointness of the full cosets a*G[<=max].
  std::array<std::vector<bool>, kNumNotLayers> coset;
  for (int mask = 0; mask < kNumNotLayers; ++mask) {
    coset[mask].assign(kS8Order, false);
    BinPerm a = NotLayer{static_cast<uint8_t>(mask)}.as_binperm();
    for (const DbRecord& rec : db.records())
      coset[mask][rank(compose(a, unrank(rec.perm_rank)))] = true;
  }
  report.cosets_disjoint = true;
  for (int a = 0; a < kNumNotLayers && report.cosets_disjoint; ++a) {
    for (int b = a + 1; b < kNumNotLayers && report.cosets_disjoint; ++b) {
      for (int r = 0; r < kS8Order; ++r) {
        if (coset[a][r] && coset[b][r]) {
          report.cosets_disjoint = false;
          report.violations.push_back("cosets of masks " + std::to_string(a) + " and " +
                                      std::to_string(b) + " intersect at rank " +
                                      std::to_string(r));
          break;
        }
      }
    }
  }

  // Exactly one of the 8 residuals of every covered element lies in G.
  report.residual_partition_ok = true;
  for (int t = 0; t < kS8Order; ++t) {
    if (provenance[t] == -1) continue;
    BinPerm target = unrank(t);
    int hits = 0;
    for (int mask = 0; mask < kNumNotLayers; ++mask) {
      BinPerm residual = compose(NotLayer{static_cast<uint8_t>(mask)}.as_binperm(), target);
      if (db.cost_of(rank(residual))) ++hits;
    }
    if (hits != 1) {
      report.residual_partition_ok = false;
      report.violations.push_back("rank " + std::to_string(t) + " has " + std::to_string(hits) +
                                  " residuals in G");
    }
  }

  if (db.g_complete()) {
    report.completeness_checked = true;
    report.g_size_ok = db.size() == kGroupOrderNotFree;
    report.s8_cover_ok = report.distinct_s8 == kS8Order;
    if (!report.g_size_ok)
      report.violations.push_back("|G| = " + std::to_string(db.size()) + ", want 5040");
    if (!report.s8_cover_ok)
      report.violations.push_back("S8 coverage = " + std::to_string(report.distinct_s8) +
                                  ", want 40320");
  }
  return report;
}

// ---------------------------------------------------------------------
// Expressing Algorithm.

namespace {

bool verify_synthesis(const Synthesis& s, const BinPerm& target) {
  for (const Gate& g : s.circuit) {
    if (g.kind == GateKind::Not) return false;
  }
  if (circuit_cost(s.circuit) != s.cost) return false;
  auto restriction = restricted_perm(circuit_perm(s.circuit));
  if (!restriction) return false;
  BinPerm rebuilt = s.side == NotSide::kLeft
                        ? compose(s.not_layer.as_binperm(), *restriction)
                        : compose(*restriction, s.not_layer.as_binperm());
  return rebuilt == target;
}

/// DFS for one NOT-free word of exactly `remaining` more gates whose
/// restriction equals `target`.  Prefixes that ban a binary entry can
/// never recover, so they are pruned.
bool dfs_word(const PartialPerm& current, int remaining, const BinPerm& target, Circuit& word) {
  if ((current.domain_mask() & binary_entry_mask()) != binary_entry_mask()) return false;
  if (remaining == 0) {
    auto restriction = restricted_perm(current);
    return restriction && *restriction == target;
  }
  for (const Gate& g : two_qubit_gates()) {
    word.push_back(g);
    if (dfs_word(compose(current, gate_perm(g)), remaining - 1, target, word)) return true;
    word.pop_back();
  }
  return false;
}

}  // namespace

std::optional<Synthesis> expressing(const BinPerm& g, int cb, const CostDatabase* db,
                                    NotSide side) {
  if (cb < 0) throw std::invalid_argument("cost bound must be >= 0");
  if (db && db->free_nots()) throw std::invalid_argument("expressing needs a NOT-free database");

  // Residual for mask a: the NOT-free circuit h with g = a*h (left) or
  // g = h*a (right).  NOT layers are involutions, so a^-1 = a.
  std::array<BinPerm, kNumNotLayers> residuals;
  for (int mask = 0; mask < kNumNotLayers; ++mask) {
    BinPerm a = NotLayer{static_cast<uint8_t>(mask)}.as_binperm();
    residuals[mask] = side == NotSide::kLeft ? compose(a, g) : compose(g, a);
  }

  int dfs_from = 0;
  if (db) {
    int limit = std::min(cb, db->max_cost());
    for (int k = 0; k <= limit; ++k) {
      for (int mask = 0; mask < kNumNotLayers; ++mask) {
        auto rec = db->lookup(residuals[mask]);
        if (rec && rec->cost == k) {
          Synthesis s{NotLayer{static_cast<uint8_t>(mask)}, rec->witness, k, side};
          if (!verify_synthesis(s, g)) throw std::logic_error("database witness failed re-verification");
          return s;
        }
      }
    }
    if (cb <= db->max_cost()) return std::nullopt;
    dfs_from = db->max_cost() + 1;
  }

  for (int k = dfs_from; k <= cb; ++k) {
    for (int mask = 0; mask < kNumNotLayers; ++mask) {
      Circuit word;
      if (dfs_word(PartialPerm::identity(), k, residuals[mask], word)) {
        Synthesis s{NotLayer{static_cast<uint8_t>(mask)}, std::move(word), k, side};
        if (!verify_synthesis(s, g)) throw std::logic_error("search witness failed re-verification");
        return s;
      }
    }
  }
  return std::nullopt;
}

namespace {

void dfs_enumerate(const PartialPerm& current, int remaining, const BinPerm& g, Circuit& word,
                   std::vector<Synthesis>& out) {
  if ((current.domain_mask() & binary_entry_mask()) != binary_entry_mask()) return;
  if (remaining == 0) {
    auto restriction = restricted_perm(current);
    if (!restriction) return;
    BinPerm layer = compose(g, inverse(*restriction));
    uint8_t mask = layer.images[0];
    for (int x = 0; x < kNumPatterns; ++x) {
      if (layer.images[x] != (x ^ mask)) return;  // not a NOT layer
    }
    out.push_back(Synthesis{NotLayer{mask}, word, circuit_cost(word)});
    return;
  }
  for (const Gate& gate : two_qubit_gates()) {
    word.push_back(gate);
    dfs_enumerate(compose(current, gate_perm(gate)), remaining - 1, g, word, out);
    word.pop_back();
  }
}

}  // namespace

std::vector<Synthesis> enumerate_min_impls(const BinPerm& g, int k) {
  if (k < 0) throw std::invalid_argument("length must be >= 0");
  std::vector<Synthesis> out;
  Circuit word;
  dfs_enumerate(PartialPerm::identity(), k, g, word, out);
  return out;
}

// ---------------------------------------------------------------------
// G[4] classification.

namespace {

struct ProfileFlags {
  bool all_cnot = false;
  bool three_cv_one_cnot = false;
  bool other = false;
  bool any = false;
};

void dfs_profile(const PartialPerm& current, int remaining, int n_cnot, int n_cv,
                 const std::vector<bool>& in_g4, std::map<uint16_t, ProfileFlags>& profiles) {
  if ((current.domain_mask() & binary_entry_mask()) != binary_entry_mask()) return;
  if (remaining == 0) {
    auto restriction = restricted_perm(current);
    if (!restriction) return;
    uint16_t r = rank(*restriction);
    if (!in_g4[r]) return;
    ProfileFlags& f = profiles[r];
    f.any = true;
    if (n_cnot == 4)
      f.all_cnot = true;
    else if (n_cnot == 1 && n_cv == 3)
      f.three_cv_one_cnot = true;
    else
      f.other = true;
    return;
  }
  for (const Gate& gate : two_qubit_gates()) {
    dfs_profile(compose(current, gate_perm(gate)), remaining - 1,
                n_cnot + (gate.kind == GateKind::Cnot), n_cv + (gate.kind != GateKind::Cnot),
                in_g4, profiles);
  }
}

}  // namespace

G4Classification classify_g4(const CostDatabase& db) {
  if (db.free_nots()) throw std::invalid_argument("classify_g4 needs a NOT-free database");
  if (db.max_cost() < 4) throw std::invalid_argument("classify_g4 needs a database of cost >= 4");

  const std::vector<uint16_t>& g4 = db.g_layer(4);
  std::vector<bool> in_g4(kS8Order, false);
  for (uint16_t r : g4) in_g4[r] = true;

  std::map<uint16_t, ProfileFlags> profiles;
  dfs_profile(PartialPerm::identity(), 4, 0, 0, in_g4, profiles);

  G4Classification out;
  for (uint16_t r : g4) {
    if (profiles[r].all_cnot)
      out.feynman_only.push_back(r);
    else
      out.mixed.push_back(r);
  }
  for (uint16_t r : out.mixed) {
    const ProfileFlags& f = profiles[r];
    out.mixed_profile_3cv_1cnot.push_back(f.any && f.three_cv_one_cnot && !f.other);
    if (!is_universal(unrank(r))) out.non_universal_mixed.push_back(r);
  }

  std::vector<bool> grouped(kS8Order, false);
  for (uint16_t r : out.mixed) {
    if (grouped[r]) continue;
    std::vector<uint16_t> orbit;
    for (const WirePerm& p : all_wire_perms()) {
      uint16_t c = rank(conjugate_by_wire_perm(unrank(r), p));
      if (!grouped[c]) {
        grouped[c] = true;
        orbit.push_back(c);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace qsynth
