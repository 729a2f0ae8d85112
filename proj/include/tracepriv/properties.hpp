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

#include <set>
#include <string>
#include <vector>

#include "tracepriv/model.hpp"

namespace tracepriv {

// Executable per-batch validity predicates. Each one takes (pair, k) and
// checks the k-th batches under the assumption that batches 1..k-1 were
// already accepted; a whole-pair check is the conjunction over k.

enum class PropertyId {
  kEqualExceptInfected,        // every position holding a meeting is identical
  kEqualExceptMeetings,        // every position holding an infection is identical
  kNumInfected,                // per-batch infection counts match
  kNumMeetings,                // per-batch meeting counts match
  kMeetingsOfInfected,         // no infected user has differing meetings in-window
  kMeetingsOfCorrupted,        // no corrupted user has differing meetings in-window
  kNotifiedCorrupted,          // same corrupted users are notified at-risk
  kCorruptedMeetCorrupted,     // same corrupted-corrupted meetings in-window
  kCorruptedInfections,        // same corrupted users infected this batch
  kCorruptedMeetingFrequency,  // per corrupted user, same in-window meeting count
  kMeetingWithCorrupted,       // co-meeting structure of corrupted users matches
  kUnavoidableLoss,            // conjunction of the five properties above
};

std::string to_string(PropertyId p);

// The five components whose conjunction is kUnavoidableLoss.
const std::vector<PropertyId>& unavoidable_loss_components();

// How the set of users-with-differing-meetings treats a position where one
// scenario has a meeting and the other does not. kDefault (conservative) adds
// the meeting's participants; kLiteral only considers positions where both
// scenarios hold meetings.
enum class DifferMode { kDefault, kLiteral };

struct Violation {
  PropertyId property;
  int batch = 0;
  std::string detail;
};

struct PropertyResult {
  bool ok = true;
  std::vector<Violation> violations;
};

// Users involved in a meeting that differs between the two scenarios at some
// position of the window [k-t+1, k].
std::set<UserId> differing_users(const ScenarioPair& pair, int k, DifferMode mode);

// Users meeting (within the retention window ending at k) any user whose
// infection event sits in batch k of `s`. With `corrupted_only`, intersected
// with the corrupted set at k.
std::set<UserId> notified_users(const Scenario& s, int k, int t);
std::set<UserId> notified_users(const Scenario& s, int k, int t,
                                const CorruptionTimeline& corruption, bool corrupted_only);

PropertyResult prop_equal_except_infected(const ScenarioPair& pair, int k);
PropertyResult prop_equal_except_meetings(const ScenarioPair& pair, int k);
PropertyResult prop_num_infected(const ScenarioPair& pair, int k);
PropertyResult prop_num_meetings(const ScenarioPair& pair, int k);
PropertyResult prop_meetings_of_infected(const ScenarioPair& pair, int k, DifferMode mode);
PropertyResult prop_meetings_of_corrupted(const ScenarioPair& pair, int k, DifferMode mode);
PropertyResult prop_notified_corrupted(const ScenarioPair& pair, int k);
PropertyResult prop_corrupted_meet_corrupted(const ScenarioPair& pair, int k);
PropertyResult prop_corrupted_infections(const ScenarioPair& pair, int k);
PropertyResult prop_corrupted_meeting_frequency(const ScenarioPair& pair, int k);
PropertyResult prop_meeting_with_corrupted(const ScenarioPair& pair, int k);
PropertyResult prop_unavoidable_loss(const ScenarioPair& pair, int k);

PropertyResult eval_property(PropertyId p, const ScenarioPair& pair, int k, DifferMode mode);

}  // namespace tracepriv
