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
#include <optional>
#include <string>
#include <vector>

#include "qsynth/binperm.hpp"
#include "qsynth/gate.hpp"

namespace qsynth {

inline constexpr int kGroupOrderNotFree = 5040;  // |S8| / |N|

/// Which side of the NOT-free circuit the NOT layer sits on.  Left is
/// the Theorem-style default (NOT layer applied first); right exists for
/// experimentation and yields an equally valid decomposition.
enum class NotSide { kLeft, kRight };

/// One discovered minimum-cost realization: target = NOT layer applied
/// first (NotSide::kLeft) or last, around a NOT-free two-qubit circuit.
struct Synthesis {
  NotLayer not_layer;
  Circuit circuit;
  int cost = 0;
  NotSide side = NotSide::kLeft;
};

struct DbRecord {
  uint16_t perm_rank = 0;
  uint8_t cost = 0;
  Circuit witness;
};

/// Materialized cost tables: for every discovered S8 element, its minimum
/// two-qubit cost and one witness circuit, indexed per cost layer.
class CostDatabase {
 public:
  CostDatabase() = default;

  /// Validates every record (witness evaluates and restricts to its rank,
  /// witness length matches cost, witnesses are NOT-free unless the
  /// database was built with free NOT generators).  Throws
  /// std::invalid_argument naming the first offending record.
  static CostDatabase from_records(int max_cost, bool free_nots, std::vector<DbRecord> records);

  int max_cost() const { return max_cost_; }
  bool free_nots() const { return free_nots_; }
  size_t size() const { return records_.size(); }

  /// All minimum costs are final: every element of the NOT-free group
  /// (or of S8, with free NOTs) has been discovered.
  bool g_complete() const;

  std::optional<DbRecord> lookup(const BinPerm& g) const;
  std::optional<int> cost_of(uint16_t perm_rank) const;

  /// Ranks of G[k], ascending.  k in [0, max_cost].
  const std::vector<uint16_t>& g_layer(int k) const;

  /// Records sorted by rank.
  const std::vector<DbRecord>& records() const { return records_; }

  /// Generator-set identifier, fixed for this gate library.
  static constexpr const char* kGeneratorVersion = "cnot,cv,cvdg";
  static constexpr const char* kCompositionOrder = "notfirst";

 private:
  int max_cost_ = -1;
  bool free_nots_ = false;
  std::vector<DbRecord> records_;                 // sorted by perm_rank
  std::vector<int32_t> rank_index_;               // rank -> records_ position or -1
  std::vector<std::vector<uint16_t>> g_layers_;   // per-cost ranks, ascending
};

struct LayerStats {
  int depth = 0;
  uint64_t states = 0;        // distinct partial permutations first seen here
  uint64_t new_binperms = 0;  // |G[depth]|
};

struct FindingOptions {
  /// Highest cost layer to build; -1 runs until every minimum cost is
  /// final (no new reversible functions can appear deeper).
  int max_cost = 7;
  /// Also expand the three NOT gates as cost-0 generators (0/1-cost
  /// shortest path search).  Validation mode only.
  bool free_nots = false;
  int threads = 1;
  /// Approximate ceiling on search memory; exceeding it aborts the run
  /// after the last completed layer.
  uint64_t memory_limit_bytes = uint64_t{4} << 30;
  /// Export every search layer's members and witnesses (memory heavy;
  /// meant for tests at small depths).
  bool collect_layers = false;
};

enum class FindingStatus { kComplete, kBudgetExceeded };

/// One member of a search layer: a cascade's partial permutation first
/// reached at this layer's cost, with its witness gate word.
struct LayerMember {
  PartialPerm perm;
  Circuit witness;
};

struct FindingResult {
  CostDatabase db;
  std::vector<LayerStats> layers;
  FindingStatus status = FindingStatus::kComplete;
  int completed_cost = -1;   // last fully built layer
  bool monoid_closed = false;  // frontier emptied: the whole cascade monoid was enumerated
  std::string error;         // set when status != kComplete
  std::vector<std::vector<LayerMember>> layer_members;  // only with collect_layers
};

/// Layered breadth-first search over cascades of the 18 two-qubit gates,
/// deduplicated by exact partial-permutation equality.  Each layer's
/// binary-preserving restrictions that are not already known at a lower
/// cost become G[k].  Deterministic for any thread count.
FindingResult finding(const FindingOptions& options = {});

/// { a * g : a in N, g in G[k] }, NOT layer applied first.  Sorted by
/// rank.  Throws std::invalid_argument for k out of range or a free-NOTs
/// database.
std::vector<BinPerm> s8_layer(const CostDatabase& db, int k);

struct Theorem2Report {
  int max_cost = 0;
  uint64_t distinct_s8 = 0;          // |union of all s8 layers|
  bool layers_disjoint = false;      // across costs and NOT masks
  bool cosets_disjoint = false;      // a*G[<=k] vs b*G[<=k] for a != b
  bool residual_partition_ok = false;  // exactly one residual in G per target
  bool completeness_checked = false;   // database had every element
  bool g_size_ok = false;              // |G| == 5040 (when complete)
  bool s8_cover_ok = false;            // 40320 covered (when complete)
  std::vector<std::string> violations;

  bool ok() const {
    return layers_disjoint && cosets_disjoint && residual_partition_ok &&
           (!completeness_checked || (g_size_ok && s8_cover_ok));
  }
};

/// Checks the left-coset decomposition on everything the database covers.
Theorem2Report verify_theorem2(const CostDatabase& db);

/// Minimum-cost synthesis of g as NOT layer + NOT-free circuit with total
/// two-qubit cost <= cb.  Uses the database where it covers the bound and
/// falls back to iterative-deepening DFS beyond it.  Returns nullopt when
/// the cost bound is exceeded.  The result is re-verified by evaluation.
std::optional<Synthesis> expressing(const BinPerm& g, int cb, const CostDatabase* db = nullptr,
                                    NotSide side = NotSide::kLeft);

/// Every NOT-free gate word of length exactly k realizing g up to an
/// input-side NOT layer, in lexicographic generator order.
std::vector<Synthesis> enumerate_min_impls(const BinPerm& g, int k);

struct G4Classification {
  std::vector<uint16_t> feynman_only;  // members with an all-CNOT length-4 word
  std::vector<uint16_t> mixed;         // the rest
  /// For each mixed member, true iff every length-4 word realizing it
  /// uses exactly three CV/CVDG gates and one CNOT.
  std::vector<bool> mixed_profile_3cv_1cnot;
  std::vector<uint16_t> non_universal_mixed;    // expected empty
  std::vector<std::vector<uint16_t>> orbits;    // mixed members under wire relabeling
};

/// Splits G[4] by witness composition and checks the universality and
/// wire-symmetry structure of the non-Feynman members.
G4Classification classify_g4(const CostDatabase& db);

}  // namespace qsynth
