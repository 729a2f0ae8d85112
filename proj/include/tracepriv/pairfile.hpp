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

#pragma once

#include <stdexcept>
#include <string>

#include "tracepriv/game.hpp"

namespace tracepriv {

// Scenario-pair text format (JSON): retention t, nominal batch length l, the
// user universe, the corruption map (user -> first corrupted batch, 1-based),
// and per batch the two aligned event lists. Event encodings:
//   meeting   ["m", user, user]
//   infection ["i", user]
//   empty     ["d"]
// The files double as cross-language test vectors, so emission is stable:
// fixed key order, two-space indent, trailing newline.

struct PairParseError : std::runtime_error {
  explicit PairParseError(const std::string& what) : std::runtime_error(what) {}
};

std::string emit_pair(const ScenarioPair& pair);
ScenarioPair parse_pair(const std::string& text);  // throws PairParseError

ScenarioPair load_pair_file(const std::string& path);
void write_pair_file(const std::string& path, const ScenarioPair& pair);

// Matrix report emission: machine-readable CSV and aligned text, plus the
// experiment-record sidecar holding everything needed for exact reproduction.
std::string matrix_to_csv(const MatrixReport& report);
std::string matrix_to_text(const MatrixReport& report);
std::string experiment_record(const MatrixReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace tracepriv
