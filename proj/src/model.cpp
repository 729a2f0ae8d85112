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

#include "tracepriv/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracepriv {

std::string to_string(const Event& e) {
  switch (e.kind) {
    case Event::Kind::kEmpty:
      return "<>";
    case Event::Kind::kMeeting:
      return "m(" + e.a + "," + e.b + ")";
    case Event::Kind::kInfection:
      return "i(" + e.a + ")";
  }
  return "?";
}

std::set<UserId> Scenario::infected_in_batch(int k) const {
  std::set<UserId> out;
  for (const Event& e : batch(k).events) {
    if (e.is_infection()) out.insert(e.a);
  }
  return out;
}

std::optional<int> Scenario::infection_batch(const UserId& u) const {
  for (int k = 1; k <= batch_count(); ++k) {
    for (const Event& e : batch(k).events) {
      if (e.is_infection() && e.a == u) return k;
    }
  }
  return std::nullopt;
}

std::set<UserId> CorruptionTimeline::corrupted_at(int k) const {
  std::set<UserId> out;
  for (const auto& [u, from] : corrupted_from) {
    if (from <= k) out.insert(u);
  }
  return out;
}

namespace {

void check_scenario(const Scenario& s, int which, const std::set<UserId>& universe,
                    std::vector<WellFormednessViolation>& out) {
  std::map<UserId, int> infection_batch;
  for (int k = 1; k <= s.batch_count(); ++k) {
    std::set<Event> seen_meetings;
    const Batch& b = s.batch(k);
    for (int j = 1; j <= b.length(); ++j) {
      const Event& e = b.at(j);
      if (e.is_empty()) continue;
      if (!universe.empty()) {
        if (!universe.count(e.a) || (e.is_meeting() && !universe.count(e.b))) {
          out.push_back({which, k, j, "unknown user",
                         to_string(e) + " references a user outside the declared universe"});
        }
      }
      if (e.is_meeting()) {
        if (e.a == e.b) {
          out.push_back({which, k, j, "self meeting", to_string(e)});
          continue;
        }
        if (!seen_meetings.insert(e).second) {
          out.push_back({which, k, j, "duplicate meeting in batch", to_string(e)});
        }
      } else {
        auto [it, fresh] = infection_batch.emplace(e.a, k);
        if (!fresh) {
          out.push_back({which, k, j, "duplicate infection",
                         "i(" + e.a + ") already occurred in batch " + std::to_string(it->second)});
        }
      }
    }
  }
  // Infected users self-isolate: no meetings strictly after the infection batch.
  for (int k = 1; k <= s.batch_count(); ++k) {
    const Batch& b = s.batch(k);
    for (int j = 1; j <= b.length(); ++j) {
      const Event& e = b.at(j);
      if (!e.is_meeting()) continue;
      for (const UserId* u : {&e.a, &e.b}) {
        auto it = infection_batch.find(*u);
        if (it != infection_batch.end() && k > it->second) {
          out.push_back({which, k, j, "meeting after infection",
                         *u + " was infected in batch " + std::to_string(it->second) +
                             " but meets in batch " + std::to_string(k)});
        }
      }
    }
  }
}

}  // namespace

std::vector<WellFormednessViolation> check_well_formed(const ScenarioPair& pair) {
  std::vector<WellFormednessViolation> out;
  if (pair.config.retention < 1) {
    out.push_back({-1, 0, 0, "retention", "retention must be >= 1"});
  }
  if (pair.s0.batch_count() != pair.s1.batch_count()) {
    out.push_back({-1, 0, 0, "batch count mismatch",
                   std::to_string(pair.s0.batch_count()) + " vs " +
                       std::to_string(pair.s1.batch_count())});
  } else {
    for (int k = 1; k <= pair.s0.batch_count(); ++k) {
      if (pair.s0.batch(k).length() != pair.s1.batch(k).length()) {
        out.push_back({-1, k, 0, "batch length mismatch",
                       std::to_string(pair.s0.batch(k).length()) + " vs " +
                           std::to_string(pair.s1.batch(k).length())});
      }
    }
  }
  std::set<UserId> universe(pair.config.users.begin(), pair.config.users.end());
  for (const UserId& u : pair.config.users) {
    if (u.empty()) out.push_back({-1, 0, 0, "empty user id", ""});
  }
  check_scenario(pair.s0, 0, universe, out);
  check_scenario(pair.s1, 1, universe, out);
  return out;
}

std::vector<WindowEvent> window(const Scenario& s, int k, int t) {
  if (k < 1 || k > s.batch_count()) {
    throw std::out_of_range("window: batch index " + std::to_string(k) + " out of range [1, " +
                            std::to_string(s.batch_count()) + "]");
  }
  std::vector<WindowEvent> out;
  for (int b = window_start(k, t); b <= k; ++b) {
    const Batch& batch = s.batch(b);
    for (int j = 1; j <= batch.length(); ++j) {
      out.push_back({b, j, batch.at(j)});
    }
  }
  return out;
}

std::set<std::pair<int, int>> meetings_of(const UserId& user,
                                          const std::vector<WindowEvent>& events) {
  std::set<std::pair<int, int>> out;
  for (const WindowEvent& we : events) {
    if (we.event.is_meeting() && we.event.involves(user)) {
      out.insert({we.batch, we.position});
    }
  }
  return out;
}

}  // namespace tracepriv
