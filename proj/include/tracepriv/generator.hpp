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

#include "tracepriv/notions.hpp"
#include "tracepriv/rng.hpp"

namespace tracepriv {

struct GenParams {
  int user_count = 8;
  int batch_count = 4;       // K
  int batch_length = 4;      // l
  int retention = 3;         // t
  double corrupted_fraction = 0.25;
  double meeting_density = 0.3;   // probability a position holds a meeting
  double infection_rate = 0.1;    // probability a user gets infected at all
  int max_attempts = 500;
};

struct GenerationFailure : std::runtime_error {
  explicit GenerationFailure(const std::string& what) : std::runtime_error(what) {}
};

// Builds a random well-formed scenario pair that is valid for `notion`:
// generate a base scenario, copy it, and perturb the copy only in ways the
// notion leaves unprotected, rejecting any attempt that fails the validity
// check. Every returned pair passes check_well_formed and
// check_valid(notion). Throws GenerationFailure when max_attempts runs out.
ScenarioPair gen_valid_pair(NotionId notion, const GenParams& params, RngStream& rng);

// A random well-formed pair without any validity targeting (both scenarios
// share only their shape); used for oracle comparison and fuzzing.
ScenarioPair gen_well_formed_pair(const GenParams& params, RngStream& rng);

}  // namespace tracepriv
