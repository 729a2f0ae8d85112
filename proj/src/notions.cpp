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

#include "tracepriv/notions.hpp"

#include <algorithm>

namespace tracepriv {

std::string to_string(NotionId n) {
  switch (n) {
    case NotionId::kPInd: return "P-IND";
    case NotionId::kIInd: return "I-IND";
    case NotionId::kICountInd: return "I#-IND";
    case NotionId::kMInd: return "M-IND";
    case NotionId::kMExclIInd: return "M\\I-IND";
    case NotionId::kRInd: return "R-IND";
    case NotionId::kRExclIInd: return "R\\I-IND";
  }
  return "?";
}

std::optional<NotionId> parse_notion(std::string_view name) {
  for (NotionId n : kAllNotions) {
    if (name == to_string(n)) return n;
  }
  if (name == "MhI-IND") return NotionId::kMExclIInd;
  if (name == "RhI-IND") return NotionId::kRExclIInd;
  return std::nullopt;
}

std::vector<std::string> notion_names() {
  std::vector<std::string> out;
  for (NotionId n : kAllNotions) out.push_back(to_string(n));
  return out;
}

const NotionDef& notion_def(NotionId n) {
  using P = PropertyId;
  static const std::vector<NotionDef> kDefs = {
      {NotionId::kPInd, {P::kUnavoidableLoss}},
      {NotionId::kIInd, {P::kEqualExceptInfected, P::kUnavoidableLoss}},
      {NotionId::kICountInd,
       {P::kEqualExceptInfected, P::kNumInfected, P::kUnavoidableLoss}},
      {NotionId::kMInd, {P::kEqualExceptMeetings, P::kUnavoidableLoss}},
      {NotionId::kMExclIInd,
       {P::kEqualExceptMeetings, P::kMeetingsOfInfected, P::kUnavoidableLoss}},
      {NotionId::kRInd,
       {P::kEqualExceptMeetings, P::kNumMeetings, P::kMeetingsOfCorrupted,
        P::kUnavoidableLoss}},
      {NotionId::kRExclIInd,
       {P::kEqualExceptMeetings, P::kNumMeetings, P::kMeetingsOfCorrupted,
        P::kMeetingsOfInfected, P::kUnavoidableLoss}},
  };
  return kDefs.at(static_cast<size_t>(n));
}

ValidityResult check_valid(const ScenarioPair& pair, NotionId notion, DifferMode mode) {
  const auto wf = check_well_formed(pair);
  if (!wf.empty()) {
    throw std::invalid_argument("check_valid: pair is not well-formed: " + wf.front().rule +
                                " (" + wf.front().detail + ")");
  }
  ValidityResult r;
  const NotionDef& def = notion_def(notion);
  for (int k = 1; k <= pair.batch_count(); ++k) {
    std::vector<Violation> at_k;
    for (PropertyId p : def.properties) {
      PropertyResult pr = eval_property(p, pair, k, mode);
      at_k.insert(at_k.end(), pr.violations.begin(), pr.violations.end());
    }
    if (!at_k.empty()) {
      r.valid = false;
      r.first_failing_batch = k;
      r.violations = std::move(at_k);
      return r;
    }
  }
  return r;
}

const std::vector<std::pair<NotionId, NotionId>>& hierarchy_edges() {
  static const std::vector<std::pair<NotionId, NotionId>> kEdges = {
      {NotionId::kPInd, NotionId::kMInd},       {NotionId::kPInd, NotionId::kIInd},
      {NotionId::kIInd, NotionId::kICountInd},  {NotionId::kMInd, NotionId::kMExclIInd},
      {NotionId::kMInd, NotionId::kRInd},       {NotionId::kRInd, NotionId::kRExclIInd},
      {NotionId::kMExclIInd, NotionId::kRExclIInd},
  };
  return kEdges;
}

const std::set<std::pair<NotionId, NotionId>>& hierarchy_closure() {
  static const std::set<std::pair<NotionId, NotionId>> kClosure = [] {
    std::set<std::pair<NotionId, NotionId>> closure(hierarchy_edges().begin(),
                                                    hierarchy_edges().end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [a, b] : std::set<std::pair<NotionId, NotionId>>(closure)) {
        for (const auto& [c, d] : std::set<std::pair<NotionId, NotionId>>(closure)) {
          if (b == c && closure.insert({a, d}).second) changed = true;
        }
      }
    }
    return closure;
  }();
  return kClosure;
}

bool check_subsumption(const ScenarioPair& pair, NotionId stronger, NotionId weaker,
                       DifferMode mode) {
  if (!hierarchy_closure().count({stronger, weaker})) {
    throw std::invalid_argument("check_subsumption: (" + to_string(stronger) + ", " +
                                to_string(weaker) + ") is not a hierarchy edge");
  }
  if (!check_valid(pair, weaker, mode).valid) return true;  // vacuous
  return check_valid(pair, stronger, mode).valid;
}

}  // namespace tracepriv
