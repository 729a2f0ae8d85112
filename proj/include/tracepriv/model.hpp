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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tracepriv {

// Event/batch/scenario data model. Batches are 1-indexed throughout (batch k,
// position j), matching the retention-window arithmetic [k-t+1, k]. All types
// are immutable values after construction; every operation here is pure.

using UserId = std::string;

struct Event {
  enum class Kind { kEmpty, kMeeting, kInfection };

  Kind kind = Kind::kEmpty;
  // Meetings are stored in canonical order (a < b); meetings are symmetric,
  // so m(B,A) and m(A,B) are the same event. Infections use `a` only.
  UserId a;
  UserId b;

  static Event empty() { return Event{}; }
  static Event meeting(UserId u, UserId v) {
    Event e;
    e.kind = Kind::kMeeting;
    if (v < u) std::swap(u, v);
    e.a = std::move(u);
    e.b = std::move(v);
    return e;
  }
  static Event infection(UserId u) {
    Event e;
    e.kind = Kind::kInfection;
    e.a = std::move(u);
    return e;
  }

  bool is_meeting() const { return kind == Kind::kMeeting; }
  bool is_infection() const { return kind == Kind::kInfection; }
  bool is_empty() const { return kind == Kind::kEmpty; }
  bool involves(const UserId& u) const {
    if (is_meeting()) return a == u || b == u;
    if (is_infection()) return a == u;
    return false;
  }

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event&, const Event&) = default;
};

std::string to_string(const Event& e);

struct Batch {
  std::vector<Event> events;  // positions j = 1..length()

  int length() const { return static_cast<int>(events.size()); }
  // 1-indexed access.
  const Event& at(int j) const { return events.at(static_cast<size_t>(j - 1)); }
};

struct Scenario {
  std::vector<Batch> batches;  // indices k = 1..batch_count()

  int batch_count() const { return static_cast<int>(batches.size()); }
  const Batch& batch(int k) const { return batches.at(static_cast<size_t>(k - 1)); }
  const Event& at(int k, int j) const { return batch(k).at(j); }

  // Users infected in batch k (each infection event occurs at most once per
  // user over the whole scenario).
  std::set<UserId> infected_in_batch(int k) const;
  // Batch index of u's infection event, if any.
  std::optional<int> infection_batch(const UserId& u) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Corruption is monotone: once corrupted, a user stays corrupted. The map
// holds the first batch index for which the user counts as corrupted.
struct CorruptionTimeline {
  std::map<UserId, int> corrupted_from;

  bool is_corrupted(const UserId& u, int k) const {
    auto it = corrupted_from.find(u);
    return it != corrupted_from.end() && it->second <= k;
  }
  std::set<UserId> corrupted_at(int k) const;
  bool ever_corrupted(const UserId& u) const {
    return corrupted_from.count(u) != 0;
  }

  friend bool operator==(const CorruptionTimeline&, const CorruptionTimeline&) = default;
};

struct GameConfig {
  int retention = 1;     // t, in batches (>= 1)
  int batch_length = 1;  // nominal l (>= 1); printed examples may vary per batch
  std::vector<UserId> users;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// The adversary's two alternative worlds plus the corruption timeline they
// share. Position j of batch k in s0 is aligned with position j of batch k
// in s1; all per-position checks quantify over that alignment.
struct ScenarioPair {
  Scenario s0;
  Scenario s1;
  CorruptionTimeline corruption;
  GameConfig config;

  const Scenario& scenario(int bit) const { return bit == 0 ? s0 : s1; }
  int batch_count() const { return s0.batch_count(); }

  friend bool operator==(const ScenarioPair&, const ScenarioPair&) = default;
};

struct WellFormednessViolation {
  int scenario = -1;  // 0, 1, or -1 for pair-level shape problems
  int batch = 0;      // 0 when no single batch is implicated
  int position = 0;
  std::string rule;
  std::string detail;
};

// Returns every violated well-formedness rule; empty means the pair is OK.
// Checks, per scenario: meetings have two distinct users, no duplicate
// meeting inside one batch, at most one infection per user, no meeting of a
// user in a batch strictly after her infection batch (self-isolation), all
// users drawn from the declared universe; and for the pair: equal batch
// counts and equal per-batch lengths.
std::vector<WellFormednessViolation> check_well_formed(const ScenarioPair& pair);

inline int window_start(int k, int t) { return k - t + 1 > 1 ? k - t + 1 : 1; }

struct WindowEvent {
  int batch = 0;
  int position = 0;
  Event event;
};

// All events of batches [max(1, k-t+1), k] in (batch, position) order.
// Throws std::out_of_range unless 1 <= k <= batch_count.
std::vector<WindowEvent> window(const Scenario& s, int k, int t);

// Positions of meetings involving `user` within a window, as (batch, position).
std::set<std::pair<int, int>> meetings_of(const UserId& user,
                                          const std::vector<WindowEvent>& events);

}  // namespace tracepriv
