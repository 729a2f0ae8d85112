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

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracepriv/properties.hpp"

namespace tracepriv {

// The seven privacy notions, each a fixed conjunction of properties that both
// scenarios of a valid query must share. A notion higher in the hierarchy
// imposes fewer constraints on the adversary's choice (it protects more).
enum class NotionId {
  kPInd,       // P-IND   : UL
  kIInd,       // I-IND   : E_i, UL
  kICountInd,  // I#-IND  : E_i, |U_i|, UL
  kMInd,       // M-IND   : E_m, UL
  kMExclIInd,  // M\I-IND : E_m, M_i, UL
  kRInd,       // R-IND   : E_m, |M|, M_c, UL
  kRExclIInd,  // R\I-IND : E_m, |M|, M_c, M_i, UL
};

inline constexpr NotionId kAllNotions[] = {
    NotionId::kPInd,      NotionId::kIInd, NotionId::kICountInd, NotionId::kMInd,
    NotionId::kMExclIInd, NotionId::kRInd, NotionId::kRExclIInd,
};

std::string to_string(NotionId n);
// Accepts the canonical names (P-IND, I-IND, I#-IND, M-IND, M\I-IND, R-IND,
// R\I-IND) plus the portable aliases MhI-IND and RhI-IND.
std::optional<NotionId> parse_notion(std::string_view name);
std::vector<std::string> notion_names();

struct NotionDef {
  NotionId id;
  std::vector<PropertyId> properties;  // always contains kUnavoidableLoss
};

const NotionDef& notion_def(NotionId n);

struct ValidityResult {
  bool valid = true;
  int first_failing_batch = 0;
  std::vector<Violation> violations;  // all violations of the failing batch
};

// Evaluates every property of the notion at every batch k = 1..K and reports
// the first failing batch with all of its violations. Throws
// std::invalid_argument if the pair is not well-formed (malformed input is a
// different failure class than an invalid query).
ValidityResult check_valid(const ScenarioPair& pair, NotionId notion,
                           DifferMode mode = DifferMode::kDefault);

// Direct hierarchy edges as (stronger, weaker): the stronger notion protects
// strictly more. Every pair valid for the weaker notion's (larger) property
// set is valid for the stronger notion's subset.
const std::vector<std::pair<NotionId, NotionId>>& hierarchy_edges();
const std::set<std::pair<NotionId, NotionId>>& hierarchy_closure();

// True iff validity under the weaker notion implies validity under the
// stronger one for this pair (the direction the hierarchy guarantees).
// Throws std::invalid_argument when (stronger, weaker) is not a closure edge.
bool check_subsumption(const ScenarioPair& pair, NotionId stronger, NotionId weaker,
                       DifferMode mode = DifferMode::kDefault);

}  // namespace tracepriv
