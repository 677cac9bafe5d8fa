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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qsynth/binperm.hpp"
#include "qsynth/engine.hpp"
#include "qsynth/io.hpp"
#include "qsynth/mvl.hpp"

namespace {

// Exit codes: 0 success, 1 bound exceeded / verification failed,
// 2 input error, 3 resource budget exceeded.
constexpr int kExitOk = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

qsynth::BinPerm perm_from_inline(const std::string& text) {
  // Accept both the file form ("perm: 0 1 ...") and bare images.
  return qsynth::parse_perm(text.find('\n') == std::string::npos ? text + "\n" : text);
}

qsynth::FindingResult run_finding(int max_cost, bool free_nots, int threads,
                                  uint64_t memory_limit_mb) {
  qsynth::FindingOptions options;
  options.max_cost = max_cost;
  options.free_nots = free_nots;
  options.threads = threads;
  options.memory_limit_bytes = memory_limit_mb << 20;
  qsynth::FindingResult result = qsynth::finding(options);
  if (result.status == qsynth::FindingStatus::kBudgetExceeded) throw BudgetError(result.error);
  return result;
}

qsynth::CostDatabase load_or_build_db(const std::string& db_path, int max_cost, int threads,
                                      uint64_t memory_limit_mb) {
  if (!db_path.empty()) {
    qsynth::CostDatabase db = qsynth::load_db(db_path);
    if (db.max_cost() < max_cost)
      throw InputError("database max_cost " + std::to_string(db.max_cost()) +
                       " is below the requested cost " + std::to_string(max_cost));
    return db;
  }
  return run_finding(max_cost, false, threads, memory_limit_mb).db;
}

std::string describe_mask(const qsynth::NotLayer& layer) {
  std::string wires;
  for (int w = 0; w < qsynth::kNumWires; ++w) {
    if (layer.acts_on_wire(w)) {
      if (!wires.empty()) wires += ",";
      wires += std::to_string(w);
    }
  }
  std::string out = std::to_string(layer.mask);
  out += wires.empty() ? " (no NOT gates)" : " (NOT on wires " + wires + ")";
  return out;
}

std::string format_entry_values(int entry) {
  qsynth::Entry e = qsynth::entry_from_index(entry);
  std::string out = "(";
  for (int w = 0; w < qsynth::kNumWires; ++w) {
    if (w) out += ",";
    out += qsynth::to_string(e.wires[w]);
  }
  out += ")";
  return out;
}

int cmd_table(int max_cost, bool free_nots, const std::string& db_path, int threads,
              uint64_t memory_limit_mb) {
  if (free_nots && !db_path.empty())
    throw InputError("--free-nots tables are always computed, not loaded");
  if (free_nots) {
    qsynth::FindingResult result = run_finding(max_cost, true, threads, memory_limit_mb);
    std::cout << "cost\treachable (NOT gates free)\n";
    for (int k = 0; k <= result.db.max_cost(); ++k)
      std::cout << k << '\t' << result.db.g_layer(k).size() << '\n';
    return kExitOk;
  }
  qsynth::CostDatabase db = load_or_build_db(db_path, max_cost, threads, memory_limit_mb);
  std::cout << "cost\t|G[k]|\t|S8[k]|\n";
  for (int k = 0; k <= max_cost; ++k)
    std::cout << k << '\t' << db.g_layer(k).size() << '\t' << qsynth::s8_layer(db, k).size()
              << '\n';
  return kExitOk;
}

void print_synthesis(const qsynth::Synthesis& s) {
  std::cout << "not-mask: " << describe_mask(s.not_layer) << '\n';
  std::cout << "cost: " << s.cost << '\n';
  if (s.circuit.empty())
    std::cout << "# empty circuit\n";
  else
    std::cout << qsynth::format_circuit(s.circuit);
}

int cmd_synth(const qsynth::BinPerm& target, int bound, bool bound_given, bool all_at_min,
              const std::string& db_path) {
  std::optional<qsynth::CostDatabase> db;
  if (!db_path.empty()) db = qsynth::load_db(db_path);
  if (!bound_given && db) bound = db->max_cost();

  std::cout << "target " << qsynth::format_perm(target);
  auto result = qsynth::expressing(target, bound, db ? &*db : nullptr);
  if (!result) {
    std::cout << "no realization within cost bound " << bound << '\n';
    return kExitNotFound;
  }
  print_synthesis(*result);
  if (all_at_min) {
    std::vector<qsynth::Synthesis> all = qsynth::enumerate_min_impls(target, result->cost);
    std::cout << "implementations at cost " << result->cost << ": " << all.size() << '\n';
    for (size_t i = 0; i < all.size(); ++i) {
      std::cout << "--- implementation " << (i + 1) << " ---\n";
      print_synthesis(all[i]);
    }
  }
  return kExitOk;
}

int cmd_eval(const std::string& circuit_path, const std::string& inputs) {
  qsynth::Circuit circuit = qsynth::parse_circuit(read_file(circuit_path));
  qsynth::PartialPerm perm = qsynth::circuit_perm(circuit);
  std::cout << "gates: " << circuit.size() << "\ncost: " << qsynth::circuit_cost(circuit)
            << '\n';
  if (inputs == "binary") {
    int banned = 0;
    for (int pat = 0; pat < qsynth::kNumPatterns; ++pat) {
      int entry = qsynth::entry_of_pattern(pat);
      std::cout << "input " << pat << " " << format_entry_values(entry) << " -> ";
      if (auto image = perm.apply(entry)) {
        std::cout << *image << " " << format_entry_values(*image) << '\n';
      } else {
        std::cout << "banned\n";
        ++banned;
      }
    }
    std::cout << "banned inputs: " << banned << '\n';
    if (auto restricted = qsynth::restricted_perm(perm))
      std::cout << "restricted " << qsynth::format_perm(*restricted);
    else
      std::cout << "not a binary-reversible circuit (banned input or non-binary output)\n";
  } else if (inputs == "all") {
    int banned = 0;
    for (int entry = 0; entry < qsynth::kNumEntries; ++entry) {
      std::cout << "entry " << entry << " " << format_entry_values(entry) << " -> ";
      if (auto image = perm.apply(entry)) {
        std::cout << *image << " " << format_entry_values(*image) << '\n';
      } else {
        std::cout << "banned\n";
        ++banned;
      }
    }
    std::cout << "banned entries: " << banned << '\n';
  } else {
    throw InputError("--inputs must be 'binary' or 'all'");
  }
  return kExitOk;
}

int cmd_universal(const std::string& circuit_path, const std::string& perm_text) {
  qsynth::BinPerm perm;
  if (!circuit_path.empty()) {
    auto restricted = qsynth::restricted_perm(qsynth::circuit_perm(
        qsynth::parse_circuit(read_file(circuit_path))));
    if (!restricted)
      throw InputError("circuit is not binary-reversible (banned input or non-binary output)");
    perm = *restricted;
  } else {
    perm = perm_from_inline(perm_text);
  }
  std::cout << qsynth::format_perm(perm);
  bool universal = qsynth::is_universal(perm);
  std::cout << "universal: " << (universal ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_verify_theorem2(const std::string& db_path) {
  qsynth::CostDatabase db = qsynth::load_db(db_path);
  qsynth::Theorem2Report report = qsynth::verify_theorem2(db);
  std::cout << "layers: 0.." << report.max_cost << '\n';
  std::cout << "distinct S8 elements: " << report.distinct_s8 << '\n';
  std::cout << "layer disjointness: " << (report.layers_disjoint ? "ok" : "VIOLATED") << '\n';
  std::cout << "coset disjointness: " << (report.cosets_disjoint ? "ok" : "VIOLATED") << '\n';
  std::cout << "residual partition: " << (report.residual_partition_ok ? "ok" : "VIOLATED")
            << '\n';
  if (report.completeness_checked) {
    std::cout << "|G| = " << db.size() << (report.g_size_ok ? " (ok)" : " (VIOLATED)") << '\n';
    std::cout << "S8 coverage = " << report.distinct_s8
              << (report.s8_cover_ok ? " (ok)" : " (VIOLATED)") << '\n';
  } else {
    std::cout << "completeness: not checked (database covers costs 0.." << report.max_cost
              << " only)\n";
  }
  for (const std::string& v : report.violations) std::cout << "violation: " << v << '\n';
  std::cout << "theorem2: " << (report.ok() ? "ok" : "VIOLATED") << '\n';
  return report.ok() ? kExitOk : kExitNotFound;
}

int cmd_classify_g4(const std::string& db_path) {
  qsynth::CostDatabase db = qsynth::load_db(db_path);
  qsynth::G4Classification c = qsynth::classify_g4(db);
  std::cout << "|G[4]| = " << (c.feynman_only.size() + c.mixed.size()) << '\n';
  std::cout << "with all-CNOT implementation: " << c.feynman_only.size() << '\n';
  std::cout << "with 3 CV/CVDG + 1 CNOT only: " << c.mixed.size() << '\n';
  size_t universal = c.mixed.size() - c.non_universal_mixed.size();
  std::cout << "universal among the latter: " << universal << "/" << c.mixed.size() << '\n';
  std::cout << "orbits under wire relabeling: " << c.orbits.size() << '\n';
  for (size_t i = 0; i < c.orbits.size(); ++i) {
    const auto& orbit = c.orbits[i];
    std::cout << "orbit " << (i + 1) << " (size " << orbit.size() << "), representative "
              << qsynth::format_perm(qsynth::unrank(orbit.front()));
  }
  return kExitOk;
}

int cmd_db_build(int max_cost, const std::string& out_path, int threads,
                 uint64_t memory_limit_mb) {
  qsynth::FindingOptions options;
  options.max_cost = max_cost;
  options.threads = threads;
  options.memory_limit_bytes = memory_limit_mb << 20;
  qsynth::FindingResult result = qsynth::finding(options);
  for (const qsynth::LayerStats& layer : result.layers)
    std::cout << "layer " << layer.depth << ": " << layer.states << " cascades, "
              << layer.new_binperms << " new functions\n";
  if (result.monoid_closed) std::cout << "search closed: no new cascades exist\n";
  if (result.db.g_complete())
    std::cout << "all " << result.db.size() << " reachable functions have final costs\n";
  qsynth::save_db(result.db, out_path);
  std::cout << "wrote " << out_path << " (" << result.db.size() << " records, max_cost "
            << result.db.max_cost() << ")\n";
  if (result.status == qsynth::FindingStatus::kBudgetExceeded) {
    std::cerr << "error: " << result.error << "; wrote the partial database\n";
    return kExitBudget;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qsynth: exact minimum-cost synthesis of 3-bit reversible functions\n"
      "over NOT, CNOT, controlled-V and controlled-V+ gates.\n"
      "Wires are numbered 0..2; input patterns are encoded 4*v0 + 2*v1 + v2\n"
      "(wire 0 most significant).  NOT gates are free; every two-qubit gate\n"
      "costs 1.  NOT masks use the pattern bit weights (wire 0 <-> 4)."};
  app.require_subcommand(1);

  // table
  auto* table = app.add_subcommand("table", "Print the |G[k]| / |S8[k]| cost table");
  int table_max_cost = 7;
  bool table_free_nots = false;
  std::string table_db;
  int table_threads = 1;
  uint64_t table_mem = 4096;
  table->add_option("--max-cost", table_max_cost, "Highest cost layer")->check(CLI::Range(0, 31));
  table->add_flag("--free-nots", table_free_nots,
                  "Count with NOT gates as free generators (validation mode)");
  table->add_option("--db", table_db, "Use an existing database file");
  table->add_option("--threads", table_threads, "Search worker threads")->check(CLI::Range(1, 256));
  table->add_option("--memory-limit", table_mem, "Search memory ceiling in MiB");

  // synth
  auto* synth = app.add_subcommand("synth", "Synthesize a reversible function at minimum cost");
  std::string synth_name, synth_perm, synth_perm_file, synth_db;
  int synth_bound = 7;
  bool synth_all = false;
  auto* opt_name = synth->add_option("--name", synth_name, "Well-known target: toffoli, peres, identity");
  auto* opt_perm = synth->add_option("--perm", synth_perm, "Inline permutation, e.g. \"0 1 2 3 4 5 7 6\"");
  auto* opt_perm_file = synth->add_option("--perm-file", synth_perm_file, "Permutation file");
  opt_name->excludes(opt_perm)->excludes(opt_perm_file);
  opt_perm->excludes(opt_perm_file);
  auto* opt_bound = synth->add_option(
      "--bound", synth_bound, "Cost bound cb (default 7, or the database's max cost with --db)");
  opt_bound->check(CLI::Range(0, 31));
  synth->add_flag("--all-at-min", synth_all, "Enumerate every implementation at the minimum cost");
  synth->add_option("--db", synth_db, "Database file for lookups");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a circuit file");
  std::string eval_circuit, eval_inputs = "binary";
  eval->add_option("--circuit", eval_circuit, "Circuit file")->required();
  eval->add_option("--inputs", eval_inputs, "binary (default) or all");

  // universal
  auto* universal = app.add_subcommand("universal", "Universality test for a function");
  std::string uni_circuit, uni_perm;
  auto* opt_uc = universal->add_option("--circuit", uni_circuit, "Circuit file");
  auto* opt_up = universal->add_option("--perm", uni_perm, "Inline permutation");
  opt_uc->excludes(opt_up);

  // classify-g4
  auto* classify = app.add_subcommand("classify-g4", "Analyze the structure of G[4]");
  std::string classify_db;
  classify->add_option("--db", classify_db, "Database file (max_cost >= 4)")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Verify database properties");
  bool verify_t2 = false;
  std::string verify_db;
  verify->add_flag("--theorem2", verify_t2, "Check the NOT-coset decomposition");
  verify->add_option("--db", verify_db, "Database file")->required();

  // db build
  auto* db_cmd = app.add_subcommand("db", "Database maintenance");
  auto* db_build = db_cmd->add_subcommand("build", "Build and save a cost database");
  int build_max_cost = 7;
  std::string build_out;
  int build_threads = 1;
  uint64_t build_mem = 4096;
  db_build->add_option("--max-cost", build_max_cost,
                       "Highest cost layer (-1: run until all costs are final)")
      ->check(CLI::Range(-1, 31));
  db_build->add_option("--out", build_out, "Output path")->required();
  db_build->add_option("--threads", build_threads, "Search worker threads")->check(CLI::Range(1, 256));
  db_build->add_option("--memory-limit", build_mem, "Search memory ceiling in MiB");
  db_cmd->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table) {
      return cmd_table(table_max_cost, table_free_nots, table_db, table_threads, table_mem);
    }
    if (*synth) {
      qsynth::BinPerm target;
      if (!synth_name.empty())
        target = qsynth::named_perm(synth_name);
      else if (!synth_perm.empty())
        target = perm_from_inline(synth_perm);
      else if (!synth_perm_file.empty())
        target = qsynth::parse_perm(read_file(synth_perm_file));
      else
        throw InputError("one of --name, --perm, --perm-file is required");
      return cmd_synth(target, synth_bound, opt_bound->count() > 0, synth_all, synth_db);
    }
    if (*eval) return cmd_eval(eval_circuit, eval_inputs);
    if (*universal) {
      if (uni_circuit.empty() && uni_perm.empty())
        throw InputError("one of --circuit, --perm is required");
      return cmd_universal(uni_circuit, uni_perm);
    }
    if (*classify) return cmd_classify_g4(classify_db);
    if (*verify) {
      if (!verify_t2) throw InputError("nothing to verify; pass --theorem2");
      return cmd_verify_theorem2(verify_db);
    }
    if (*db_build) return cmd_db_build(build_max_cost, build_out, build_threads, build_mem);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const qsynth::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const qsynth::db_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
