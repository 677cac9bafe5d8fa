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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qsynth/binperm.hpp"
#include "qsynth/engine.hpp"
#include "qsynth/gate.hpp"

namespace qsynth {

/// Parse failure with 1-based line/column of the offending token.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Database file failure; record() is the 1-based record number when the
/// failure concerns a specific record, 0 otherwise.
class db_error : public std::runtime_error {
 public:
  explicit db_error(const std::string& message, size_t record = 0)
      : std::runtime_error(message), record_(record) {}

  size_t record() const { return record_; }

 private:
  size_t record_;
};

// Circuit files: one gate per line (`NOT(t)`, `CNOT(c,t)`, `CV(c,t)`,
// `CVDG(c,t)`), `#` comments, blank lines ignored, top gate applied first.
Circuit parse_circuit(std::string_view text);
std::string format_gate(const Gate& g);
std::string format_circuit(const Circuit& c);

// Perm files: `perm: p0 p1 ... p7`, images of input patterns 0..7.
BinPerm parse_perm(std::string_view text);
std::string format_perm(const BinPerm& p);

// Database files: header
//   qsynthdb v1 max_cost=<K> generators=cnot,cv,cvdg order=notfirst
// then `<rank> <cost> <gate tokens...>` per record, ranks ascending.
// Parsing re-verifies every witness.
std::string format_db(const CostDatabase& db);
CostDatabase parse_db(std::string_view text);

void save_db(const CostDatabase& db, const std::filesystem::path& path);
CostDatabase load_db(const std::filesystem::path& path);

}  // namespace qsynth
