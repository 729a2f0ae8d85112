// Copyright 2026 The Tracepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tracepriv/pairfile.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace tracepriv {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json event_to_json(const Event& e) {
  switch (e.kind) {
    case Event::Kind::kMeeting: return ordered_json::array({"m", e.a, e.b});
    case Event::Kind::kInfection: return ordered_json::array({"i", e.a});
    case Event::Kind::kEmpty: return ordered_json::array({"d"});
  }
  return ordered_json::array({"d"});
}

Event event_from_json(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_string()) {
    throw PairParseError(where + ": event must be a tagged array");
  }
  const std::string tag = j[0].get<std::string>();
  if (tag == "d") {
    if (j.size() != 1) throw PairParseError(where + ": empty event takes no arguments");
    return Event::empty();
  }
  if (tag == "i") {
    if (j.size() != 2 || !j[1].is_string()) {
      throw PairParseError(where + ": infection needs one user");
    }
    return Event::infection(j[1].get<std::string>());
  }
  if (tag == "m") {
    if (j.size() != 3 || !j[1].is_string() || !j[2].is_string()) {
      throw PairParseError(where + ": meeting needs two users");
    }
    return Event::meeting(j[1].get<std::string>(), j[2].get<std::string>());
  }
  throw PairParseError(where + ": unknown event tag '" + tag + "'");
}

ordered_json events_to_json(const Batch& b) {
  ordered_json out = ordered_json::array();
  for (const Event& e : b.events) out.push_back(event_to_json(e));
  return out;
}

}  // namespace

std::string emit_pair(const ScenarioPair& pair) {
  ordered_json j;
  j["t"] = pair.config.retention;
  j["l"] = pair.config.batch_length;
  j["users"] = pair.config.users;
  ordered_json corrupted = ordered_json::object();
  for (const auto& [u, from] : pair.corruption.corrupted_from) corrupted[u] = from;
  j["corrupted"] = corrupted;
  ordered_json batches = ordered_json::array();
  for (int k = 1; k <= pair.s0.batch_count(); ++k) {
    ordered_json b;
    b["s0"] = events_to_json(pair.s0.batch(k));
    b["s1"] = events_to_json(pair.s1.batch(k));
    batches.push_back(std::move(b));
  }
  j["batches"] = batches;
  return j.dump(2) + "\n";
}

ScenarioPair parse_pair(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PairParseError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw PairParseError("top level must be an object");
  for (const char* key : {"t", "l", "users", "corrupted", "batches"}) {
    if (!j.contains(key)) throw PairParseError(std::string("missing field '") + key + "'");
  }

  ScenarioPair pair;
  if (!j["t"].is_number_integer() || j["t"].get<int>() < 1) {
    throw PairParseError("field 't': retention must be an integer >= 1");
  }
  pair.config.retention = j["t"].get<int>();
  if (!j["l"].is_number_integer() || j["l"].get<int>() < 1) {
    throw PairParseError("field 'l': batch length must be an integer >= 1");
  }
  pair.config.batch_length = j["l"].get<int>();

  if (!j["users"].is_array()) throw PairParseError("field 'users': must be an array");
  for (const auto& u : j["users"]) {
    if (!u.is_string() || u.get<std::string>().empty()) {
      throw PairParseError("field 'users': user ids must be nonempty strings");
    }
    pair.config.users.push_back(u.get<std::string>());
  }

  if (!j["corrupted"].is_object()) throw PairParseError("field 'corrupted': must be an object");
  for (const auto& [user, from] : j["corrupted"].items()) {
    if (!from.is_number_integer() || from.get<int>() < 1) {
      throw PairParseError("field 'corrupted." + user + "': batch index must be >= 1");
    }
    pair.corruption.corrupted_from[user] = from.get<int>();
  }

  if (!j["batches"].is_array()) throw PairParseError("field 'batches': must be an array");
  int index = 0;
  for (const auto& b : j["batches"]) {
    const std::string where = "batches[" + std::to_string(index) + "]";
    if (!b.is_object() || !b.contains("s0") || !b.contains("s1")) {
      throw PairParseError(where + ": each batch needs 's0' and 's1'");
    }
    Batch b0, b1;
    int pos = 0;
    for (const auto& e : b["s0"]) {
      b0.events.push_back(event_from_json(e, where + ".s0[" + std::to_string(pos++) + "]"));
    }
    pos = 0;
    for (const auto& e : b["s1"]) {
      b1.events.push_back(event_from_json(e, where + ".s1[" + std::to_string(pos++) + "]"));
    }
    pair.s0.batches.push_back(std::move(b0));
    pair.s1.batches.push_back(std::move(b1));
    ++index;
  }
  return pair;
}

ScenarioPair load_pair_file(const std::string& path) {
  return parse_pair(read_text_file(path));
}

void write_pair_file(const std::string& path, const ScenarioPair& pair) {
  write_text_file(path, emit_pair(pair));
}

namespace {

std::string cell_string(const MatrixReport& report, ProtocolId p, Vantage v, NotionId n) {
  auto it = report.cells.find({p, v, n});
  return it == report.cells.end() ? "UNKNOWN" : to_string(it->second);
}

}  // namespace

std::string matrix_to_csv(const MatrixReport& report) {
  std::ostringstream os;
  os << "protocol,vantage";
  for (NotionId n : kAllNotions) os << ',' << to_string(n);
  os << ",location,pseudonym-lifetime\n";
  for (ProtocolId p : kAllProtocols) {
    for (Vantage v : {Vantage::kCorruptedClients, Vantage::kServer}) {
      os << to_string(p) << ',' << to_string(v);
      for (NotionId n : kAllNotions) {
        std::string cell = cell_string(report, p, v, n);
        // UNKNOWN notes may carry arbitrary text; keep the CSV single-token.
        if (cell.rfind("UNKNOWN", 0) == 0) cell = "UNKNOWN";
        os << ',' << cell;
      }
      os << ',' << protocol_location_use(p) << ',' << protocol_pseudonym_lifetime(p) << '\n';
    }
  }
  return os.str();
}

std::string matrix_to_text(const MatrixReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"protocol", "vantage"};
  for (NotionId n : kAllNotions) header.push_back(to_string(n));
  header.push_back("location");
  header.push_back("pseudonyms");
  rows.push_back(header);
  for (ProtocolId p : kAllProtocols) {
    for (Vantage v : {Vantage::kCorruptedClients, Vantage::kServer}) {
      std::vector<std::string> row = {to_string(p), to_string(v)};
      for (NotionId n : kAllNotions) {
        std::string cell = cell_string(report, p, v, n);
        if (cell.rfind("UNKNOWN", 0) == 0) cell = "UNKNOWN";
        row.push_back(cell);
      }
      row.push_back(protocol_location_use(p));
      row.push_back(protocol_pseudonym_lifetime(p));
      rows.push_back(std::move(row));
    }
  }
  std::vector<size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(widths[i]) + 2) << row[i];
    }
    os << '\n';
  }
  os << "\nHOLD-EVIDENCE(n): canonical transcripts equal on n sampled valid pairs"
        " (evidence, not proof).\n";
  return os.str();
}

std::string experiment_record(const MatrixReport& report) {
  ordered_json j;
  j["seed"] = report.params.seed;
  j["pair_budget"] = report.params.pair_budget;
  j["trials_per_arm"] = report.params.trials_per_arm;
  j["confidence_delta"] = kConfidenceDelta;
  j["break_threshold"] = kBreakThreshold;
  j["differ_mode"] = report.params.mode == DifferMode::kLiteral ? "literal" : "default";
  j["psi_mode"] = report.params.options.psi_mode == PsiMode::kPsiCa ? "psi-ca" : "psi";
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tracepriv
