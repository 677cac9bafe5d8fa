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

#include "qsynth/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace qsynth {

namespace {

struct LineCursor {
  std::string_view text;
  int line;
  size_t pos = 0;  // 0-based within the line

  int column() const { return static_cast<int>(pos) + 1; }

  void skip_spaces() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool at_end() const { return pos >= text.size(); }

  char peek() const { return text[pos]; }

  void expect(char c, const char* what) {
    if (at_end() || text[pos] != c)
      throw parse_error(line, column(), std::string("expected ") + what);
    ++pos;
  }

  int parse_int(const char* what) {
    skip_spaces();
    size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw parse_error(line, static_cast<int>(start) + 1,
                                        std::string("expected ") + what);
    int value = 0;
    std::from_chars(text.data() + start, text.data() + pos, value);
    return value;
  }
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string_view strip_comment(std::string_view line) {
  size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
    line.remove_suffix(1);
  return line;
}

Gate parse_gate_token(LineCursor& cur) {
  cur.skip_spaces();
  size_t name_start = cur.pos;
  while (!cur.at_end() && cur.peek() >= 'A' && cur.peek() <= 'Z') ++cur.pos;
  std::string_view name = cur.text.substr(name_start, cur.pos - name_start);

  GateKind kind;
  if (name == "NOT")
    kind = GateKind::Not;
  else if (name == "CNOT")
    kind = GateKind::Cnot;
  else if (name == "CV")
    kind = GateKind::Cv;
  else if (name == "CVDG")
    kind = GateKind::Cvdag;
  else
    throw parse_error(cur.line, static_cast<int>(name_start) + 1,
                      "unknown gate name '" + std::string(name) + "'");

  cur.expect('(', "'('");
  if (kind == GateKind::Not) {
    int wire_col = cur.column();
    int t = cur.parse_int("target wire");
    if (t < 0 || t >= kNumWires)
      throw parse_error(cur.line, wire_col, "wire index must be 0..2");
    cur.skip_spaces();
    cur.expect(')', "')'");
    return Gate::make_not(t);
  }
  int control_col = cur.column();
  int c = cur.parse_int("control wire");
  if (c < 0 || c >= kNumWires)
    throw parse_error(cur.line, control_col, "wire index must be 0..2");
  cur.skip_spaces();
  cur.expect(',', "','");
  int target_col = cur.column();
  int t = cur.parse_int("target wire");
  if (t < 0 || t >= kNumWires)
    throw parse_error(cur.line, target_col, "wire index must be 0..2");
  if (t == c) throw parse_error(cur.line, target_col, "control equals target");
  cur.skip_spaces();
  cur.expect(')', "')'");
  switch (kind) {
    case GateKind::Cnot: return Gate::cnot(c, t);
    case GateKind::Cv: return Gate::cv(c, t);
    default: return Gate::cvdag(c, t);
  }
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Circuit circuit;
  std::vector<std::string_view> lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view body = strip_comment(lines[i]);
    LineCursor cur{body, static_cast<int>(i) + 1};
    cur.skip_spaces();
    if (cur.at_end()) continue;
    circuit.push_back(parse_gate_token(cur));
    cur.skip_spaces();
    if (!cur.at_end())
      throw parse_error(cur.line, cur.column(), "trailing characters after gate");
  }
  return circuit;
}

std::string format_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::Not: return "NOT(" + std::to_string(g.target) + ")";
    case GateKind::Cnot:
      return "CNOT(" + std::to_string(g.control) + "," + std::to_string(g.target) + ")";
    case GateKind::Cv:
      return "CV(" + std::to_string(g.control) + "," + std::to_string(g.target) + ")";
    case GateKind::Cvdag:
      return "CVDG(" + std::to_string(g.control) + "," + std::to_string(g.target) + ")";
  }
  return "";
}

std::string format_circuit(const Circuit& c) {
  std::string out;
  for (const Gate& g : c) {
    out += format_gate(g);
    out += '\n';
  }
  return out;
}

BinPerm parse_perm(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  size_t idx = 0;
  std::string_view body;
  int line_no = 1;
  for (; idx < lines.size(); ++idx) {
    body = strip_comment(lines[idx]);
    LineCursor probe{body, static_cast<int>(idx) + 1};
    probe.skip_spaces();
    if (!probe.at_end()) {
      line_no = static_cast<int>(idx) + 1;
      break;
    }
  }
  if (idx == lines.size()) throw parse_error(1, 1, "empty permutation");
  for (size_t j = idx + 1; j < lines.size(); ++j) {
    std::string_view rest = strip_comment(lines[j]);
    LineCursor probe{rest, static_cast<int>(j) + 1};
    probe.skip_spaces();
    if (!probe.at_end())
      throw parse_error(probe.line, probe.column(), "unexpected second line");
  }

  LineCursor cur{body, line_no};
  cur.skip_spaces();
  if (body.substr(cur.pos).starts_with("perm:")) cur.pos += 5;
  std::array<int, kNumPatterns> images{};
  std::array<int, kNumPatterns> columns{};
  for (int i = 0; i < kNumPatterns; ++i) {
    cur.skip_spaces();
    columns[i] = cur.column();
    images[i] = cur.parse_int("permutation image");
  }
  cur.skip_spaces();
  if (!cur.at_end())
    throw parse_error(cur.line, cur.column(), "trailing characters after permutation");

  uint8_t seen = 0;
  for (int i = 0; i < kNumPatterns; ++i) {
    if (images[i] < 0 || images[i] >= kNumPatterns)
      throw parse_error(line_no, columns[i], "image out of range 0..7");
    if ((seen >> images[i]) & 1)
      throw parse_error(line_no, columns[i],
                        "duplicate image " + std::to_string(images[i]));
    seen |= uint8_t(1u << images[i]);
  }
  return BinPerm::from_images(images);
}

std::string format_perm(const BinPerm& p) {
  std::string out = "perm:";
  for (int i = 0; i < kNumPatterns; ++i) {
    out += ' ';
    out += std::to_string(p.images[i]);
  }
  out += '\n';
  return out;
}

std::string format_db(const CostDatabase& db) {
  if (db.free_nots())
    throw db_error("cannot save a free-NOTs database (validation mode only)");
  std::string out = "qsynthdb v1 max_cost=" + std::to_string(db.max_cost()) +
                    " generators=" + CostDatabase::kGeneratorVersion +
                    " order=" + CostDatabase::kCompositionOrder + "\n";
  for (const DbRecord& rec : db.records()) {
    out += std::to_string(rec.perm_rank);
    out += ' ';
    out += std::to_string(rec.cost);
    for (const Gate& g : rec.witness) {
      out += ' ';
      out += format_gate(g);
    }
    out += '\n';
  }
  return out;
}

CostDatabase parse_db(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty()) throw db_error("empty database");

  std::string_view header_line = lines[0];
  if (!header_line.empty() && header_line.back() == '\r') header_line.remove_suffix(1);
  std::string want_gens = std::string("generators=") + CostDatabase::kGeneratorVersion;
  std::string want_order = std::string("order=") + CostDatabase::kCompositionOrder;
  int max_cost = -1;
  {
    std::istringstream header{std::string(header_line)};
    std::string magic, version, token;
    header >> magic >> version;
    if (magic != "qsynthdb") throw db_error("not a qsynthdb file");
    if (version != "v1") throw db_error("unsupported database version '" + version + "'");
    bool have_gens = false, have_order = false;
    while (header >> token) {
      if (token.starts_with("max_cost=")) {
        std::string value = token.substr(9);
        if (value.empty() || value.size() > 4 ||
            value.find_first_not_of("0123456789") != std::string::npos)
          throw db_error("bad max_cost header field '" + token + "'");
        max_cost = std::stoi(value);
      } else if (token == want_gens) {
        have_gens = true;
      } else if (token == want_order) {
        have_order = true;
      } else {
        throw db_error("unrecognized header field '" + token + "'");
      }
    }
    if (max_cost < 0) throw db_error("missing max_cost header field");
    if (!have_gens) throw db_error("generator set mismatch (want " + want_gens + ")");
    if (!have_order) throw db_error("composition order mismatch (want " + want_order + ")");
  }

  std::vector<DbRecord> records;
  int64_t last_rank = -1;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (i + 1 != lines.size())
        throw db_error("blank line inside database body", records.size() + 1);
      continue;
    }
    size_t record_no = records.size() + 1;
    LineCursor cur{line, static_cast<int>(i) + 1};
    DbRecord rec;
    int r = cur.parse_int("rank");
    int cost = cur.parse_int("cost");
    if (r < 0 || r >= kS8Order)
      throw db_error("record " + std::to_string(record_no) + ": rank out of range", record_no);
    if (r <= last_rank)
      throw db_error("record " + std::to_string(record_no) + ": ranks not strictly ascending",
                     record_no);
    last_rank = r;
    rec.perm_rank = static_cast<uint16_t>(r);
    rec.cost = static_cast<uint8_t>(cost);
    cur.skip_spaces();
    while (!cur.at_end()) {
      rec.witness.push_back(parse_gate_token(cur));
      cur.skip_spaces();
    }
    records.push_back(std::move(rec));
  }

  try {
    return CostDatabase::from_records(max_cost, false, std::move(records));
  } catch (const std::invalid_argument& e) {
    throw db_error(std::string("database verification failed: ") + e.what());
  }
}

void save_db(const CostDatabase& db, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw db_error("cannot open '" + path.string() + "' for writing");
  std::string text = format_db(db);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw db_error("write failed for '" + path.string() + "'");
}

CostDatabase load_db(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw db_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_db(buffer.str());
}

}  // namespace qsynth
