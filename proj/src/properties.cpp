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

#include "tracepriv/properties.hpp"

#include <algorithm>
#include <map>

namespace tracepriv {

std::string to_string(PropertyId p) {
  switch (p) {
    case PropertyId::kEqualExceptInfected: return "equal-except-infected";
    case PropertyId::kEqualExceptMeetings: return "equal-except-meetings";
    case PropertyId::kNumInfected: return "num-infected";
    case PropertyId::kNumMeetings: return "num-meetings";
    case PropertyId::kMeetingsOfInfected: return "meetings-of-infected";
    case PropertyId::kMeetingsOfCorrupted: return "meetings-of-corrupted";
    case PropertyId::kNotifiedCorrupted: return "notified-corrupted";
    case PropertyId::kCorruptedMeetCorrupted: return "corrupted-meet-corrupted";
    case PropertyId::kCorruptedInfections: return "corrupted-infections";
    case PropertyId::kCorruptedMeetingFrequency: return "corrupted-meeting-frequency";
    case PropertyId::kMeetingWithCorrupted: return "meeting-with-corrupted";
    case PropertyId::kUnavoidableLoss: return "unavoidable-loss";
  }
  return "?";
}

const std::vector<PropertyId>& unavoidable_loss_components() {
  static const std::vector<PropertyId> kComponents = {
      PropertyId::kNotifiedCorrupted,          PropertyId::kCorruptedMeetCorrupted,
      PropertyId::kCorruptedInfections,        PropertyId::kCorruptedMeetingFrequency,
      PropertyId::kMeetingWithCorrupted,
  };
  return kComponents;
}

namespace {

std::string user_set_to_string(const std::set<UserId>& s) {
  std::string out = "{";
  for (const UserId& u : s) {
    if (out.size() > 1) out += ",";
    out += u;
  }
  return out + "}";
}

std::string position_to_string(int batch, int pos) {
  return "batch " + std::to_string(batch) + " position " + std::to_string(pos);
}

}  // namespace

std::set<UserId> differing_users(const ScenarioPair& pair, int k, DifferMode mode) {
  std::set<UserId> out;
  const int t = pair.config.retention;
  for (int b = window_start(k, t); b <= k; ++b) {
    const Batch& b0 = pair.s0.batch(b);
    const Batch& b1 = pair.s1.batch(b);
    const int len = std::min(b0.length(), b1.length());
    for (int j = 1; j <= len; ++j) {
      const Event& e0 = b0.at(j);
      const Event& e1 = b1.at(j);
      if (e0.is_meeting() && e1.is_meeting()) {
        if (e0 != e1) {
          out.insert(e0.a);
          out.insert(e0.b);
          out.insert(e1.a);
          out.insert(e1.b);
        }
      } else if (mode == DifferMode::kDefault && (e0.is_meeting() || e1.is_meeting())) {
        const Event& m = e0.is_meeting() ? e0 : e1;
        out.insert(m.a);
        out.insert(m.b);
      }
    }
  }
  return out;
}

std::set<UserId> notified_users(const Scenario& s, int k, int t) {
  std::set<UserId> out;
  const std::set<UserId> infected = s.infected_in_batch(k);
  if (infected.empty()) return out;
  for (const WindowEvent& we : window(s, k, t)) {
    if (!we.event.is_meeting()) continue;
    if (infected.count(we.event.a)) out.insert(we.event.b);
    if (infected.count(we.event.b)) out.insert(we.event.a);
  }
  return out;
}

std::set<UserId> notified_users(const Scenario& s, int k, int t,
                                const CorruptionTimeline& corruption, bool corrupted_only) {
  std::set<UserId> out = notified_users(s, k, t);
  if (!corrupted_only) return out;
  std::set<UserId> filtered;
  for (const UserId& u : out) {
    if (corruption.is_corrupted(u, k)) filtered.insert(u);
  }
  return filtered;
}

PropertyResult prop_equal_except_infected(const ScenarioPair& pair, int k) {
  PropertyResult r;
  const Batch& b0 = pair.s0.batch(k);
  const Batch& b1 = pair.s1.batch(k);
  const int len = std::min(b0.length(), b1.length());
  for (int j = 1; j <= len; ++j) {
    const Event& e0 = b0.at(j);
    const Event& e1 = b1.at(j);
    if ((e0.is_meeting() || e1.is_meeting()) && e0 != e1) {
      r.ok = false;
      r.violations.push_back({PropertyId::kEqualExceptInfected, k,
                              "meeting position differs at " + position_to_string(k, j) + ": " +
                                  to_string(e0) + " vs " + to_string(e1)});
    }
  }
  return r;
}

PropertyResult prop_equal_except_meetings(const ScenarioPair& pair, int k) {
  PropertyResult r;
  const Batch& b0 = pair.s0.batch(k);
  const Batch& b1 = pair.s1.batch(k);
  const int len = std::min(b0.length(), b1.length());
  for (int j = 1; j <= len; ++j) {
    const Event& e0 = b0.at(j);
    const Event& e1 = b1.at(j);
    if ((e0.is_infection() || e1.is_infection()) && e0 != e1) {
      r.ok = false;
      r.violations.push_back({PropertyId::kEqualExceptMeetings, k,
                              "infection position differs at " + position_to_string(k, j) + ": " +
                                  to_string(e0) + " vs " + to_string(e1)});
    }
  }
  return r;
}

PropertyResult prop_num_infected(const ScenarioPair& pair, int k) {
  PropertyResult r;
  const auto n0 = pair.s0.infected_in_batch(k).size();
  const auto n1 = pair.s1.infected_in_batch(k).size();
  if (n0 != n1) {
    r.ok = false;
    r.violations.push_back({PropertyId::kNumInfected, k,
                            "infection counts differ: " + std::to_string(n0) + " vs " +
                                std::to_string(n1)});
  }
  return r;
}

PropertyResult prop_num_meetings(const ScenarioPair& pair, int k) {
  PropertyResult r;
  auto count = [&](const Scenario& s) {
    int n = 0;
    for (const Event& e : s.batch(k).events) n += e.is_meeting() ? 1 : 0;
    return n;
  };
  const int n0 = count(pair.s0);
  const int n1 = count(pair.s1);
  if (n0 != n1) {
    r.ok = false;
    r.violations.push_back({PropertyId::kNumMeetings, k,
                            "meeting counts differ: " + std::to_string(n0) + " vs " +
                                std::to_string(n1)});
  }
  return r;
}

PropertyResult prop_meetings_of_infected(const ScenarioPair& pair, int k, DifferMode mode) {
  PropertyResult r;
  const std::set<UserId> differing = differing_users(pair, k, mode);
  std::set<UserId> infected = pair.s0.infected_in_batch(k);
  const std::set<UserId> infected1 = pair.s1.infected_in_batch(k);
  infected.insert(infected1.begin(), infected1.end());
  std::set<UserId> bad;
  for (const UserId& u : infected) {
    if (differing.count(u)) bad.insert(u);
  }
  if (!bad.empty()) {
    r.ok = false;
    r.violations.push_back({PropertyId::kMeetingsOfInfected, k,
                            "infected users with differing meetings in-window: " +
                                user_set_to_string(bad)});
  }
  return r;
}

PropertyResult prop_meetings_of_corrupted(const ScenarioPair& pair, int k, DifferMode mode) {
  PropertyResult r;
  const std::set<UserId> differing = differing_users(pair, k, mode);
  std::set<UserId> bad;
  for (const UserId& u : differing) {
    if (pair.corruption.is_corrupted(u, k)) bad.insert(u);
  }
  if (!bad.empty()) {
    r.ok = false;
    r.violations.push_back({PropertyId::kMeetingsOfCorrupted, k,
                            "corrupted users with differing meetings in-window: " +
                                user_set_to_string(bad)});
  }
  return r;
}

PropertyResult prop_notified_corrupted(const ScenarioPair& pair, int k) {
  PropertyResult r;
  const int t = pair.config.retention;
  const auto n0 = notified_users(pair.s0, k, t, pair.corruption, /*corrupted_only=*/true);
  const auto n1 = notified_users(pair.s1, k, t, pair.corruption, /*corrupted_only=*/true);
  if (n0 != n1) {
    r.ok = false;
    r.violations.push_back({PropertyId::kNotifiedCorrupted, k,
                            "notified corrupted users differ: " + user_set_to_string(n0) +
                                " vs " + user_set_to_string(n1)});
  }
  return r;
}

namespace {

std::set<std::pair<UserId, UserId>> corrupted_pairs_in_window(const Scenario& s,
                                                              const CorruptionTimeline& corruption,
                                                              int k, int t) {
  std::set<std::pair<UserId, UserId>> out;
  for (const WindowEvent& we : window(s, k, t)) {
    const Event& e = we.event;
    if (e.is_meeting() && corruption.is_corrupted(e.a, k) && corruption.is_corrupted(e.b, k)) {
      out.insert({e.a, e.b});  // already canonical (a < b)
    }
  }
  return out;
}

}  // namespace

PropertyResult prop_corrupted_meet_corrupted(const ScenarioPair& pair, int k) {
  PropertyResult r;
  const int t = pair.config.retention;
  const auto p0 = corrupted_pairs_in_window(pair.s0, pair.corruption, k, t);
  const auto p1 = corrupted_pairs_in_window(pair.s1, pair.corruption, k, t);
  if (p0 != p1) {
    auto fmt = [](const std::set<std::pair<UserId, UserId>>& ps) {
      std::string out = "{";
      for (const auto& [a, b] : ps) {
        if (out.size() > 1) out += ",";
        out += "(" + a + "," + b + ")";
      }
      return out + "}";
    };
    r.ok = false;
    r.violations.push_back({PropertyId::kCorruptedMeetCorrupted, k,
                            "corrupted-corrupted meetings in-window differ: " + fmt(p0) + " vs " +
                                fmt(p1)});
  }
  return r;
}

PropertyResult prop_corrupted_infections(const ScenarioPair& pair, int k) {
  PropertyResult r;
  auto corrupted_infected = [&](const Scenario& s) {
    std::set<UserId> out;
    for (const UserId& u : s.infected_in_batch(k)) {
      if (pair.corruption.is_corrupted(u, k)) out.insert(u);
    }
    return out;
  };
  const auto c0 = corrupted_infected(pair.s0);
  const auto c1 = corrupted_infected(pair.s1);
  if (c0 != c1) {
    r.ok = false;
    r.violations.push_back({PropertyId::kCorruptedInfections, k,
                            "corrupted infections differ: " + user_set_to_string(c0) + " vs " +
                                user_set_to_string(c1)});
  }
  return r;
}

PropertyResult prop_corrupted_meeting_frequency(const ScenarioPair& pair, int k) {
  PropertyResult r;
  const int t = pair.config.retention;
  const auto w0 = window(pair.s0, k, t);
  const auto w1 = window(pair.s1, k, t);
  for (const UserId& u : pair.corruption.corrupted_at(k)) {
    const auto n0 = meetings_of(u, w0).size();
    const auto n1 = meetings_of(u, w1).size();
    if (n0 != n1) {
      r.ok = false;
      r.violations.push_back({PropertyId::kCorruptedMeetingFrequency, k,
                              u + " has " + std::to_string(n0) + " vs " + std::to_string(n1) +
                                  " meetings in-window"});
    }
  }
  return r;
}

namespace {

// Partner of `c` at position j of the batch, if the event is a meeting
// involving c.
std::optional<UserId> partner_at(const Batch& batch, const UserId& c, int j) {
  const Event& e = batch.at(j);
  if (!e.is_meeting() || !e.involves(c)) return std::nullopt;
  return e.a == c ? e.b : e.a;
}

// One direction of the co-meeting check: whenever two distinct corrupted
// users meet a common user at positions (j, j') of the from-batch, the
// to-batch must hold a common user of the same health class (infected in this
// batch vs not) at the same two positions.
void check_co_meeting_direction(const ScenarioPair& pair, int k, int from_bit,
                                PropertyResult& r) {
  const Batch& from = pair.scenario(from_bit).batch(k);
  const Batch& to = pair.scenario(1 - from_bit).batch(k);
  const std::set<UserId> inf_from = pair.scenario(from_bit).infected_in_batch(k);
  const std::set<UserId> inf_to = pair.scenario(1 - from_bit).infected_in_batch(k);
  const std::set<UserId> corrupted = pair.corruption.corrupted_at(k);
  const int len = std::min(from.length(), to.length());

  for (const UserId& c : corrupted) {
    for (const UserId& c2 : corrupted) {
      if (c == c2) continue;
      for (int j = 1; j <= len; ++j) {
        const auto u_c = partner_at(from, c, j);
        if (!u_c) continue;
        for (int j2 = 1; j2 <= len; ++j2) {
          const auto u_c2 = partner_at(from, c2, j2);
          if (!u_c2 || *u_c != *u_c2) continue;
          const bool infected = inf_from.count(*u_c) != 0;
          const auto v_c = partner_at(to, c, j);
          const auto v_c2 = partner_at(to, c2, j2);
          const bool matched = v_c && v_c2 && *v_c == *v_c2 &&
                               (inf_to.count(*v_c) != 0) == infected;
          if (!matched) {
            r.ok = false;
            r.violations.push_back(
                {PropertyId::kMeetingWithCorrupted, k,
                 "scenario " + std::to_string(from_bit) + ": " + c + " and " + c2 +
                     " both meet " + *u_c + " at positions " + std::to_string(j) + "," +
                     std::to_string(j2) + " with no matching common " +
                     (infected ? "infected" : "healthy") + " partner in the other scenario"});
          }
        }
      }
    }
  }
}

}  // namespace

PropertyResult prop_meeting_with_corrupted(const ScenarioPair& pair, int k) {
  PropertyResult r;
  check_co_meeting_direction(pair, k, 0, r);
  check_co_meeting_direction(pair, k, 1, r);
  return r;
}

PropertyResult prop_unavoidable_loss(const ScenarioPair& pair, int k) {
  PropertyResult r;
  for (PropertyId p : unavoidable_loss_components()) {
    PropertyResult sub = eval_property(p, pair, k, DifferMode::kDefault);
    if (!sub.ok) {
      r.ok = false;
      r.violations.insert(r.violations.end(), sub.violations.begin(), sub.violations.end());
    }
  }
  return r;
}

PropertyResult eval_property(PropertyId p, const ScenarioPair& pair, int k, DifferMode mode) {
  switch (p) {
    case PropertyId::kEqualExceptInfected: return prop_equal_except_infected(pair, k);
    case PropertyId::kEqualExceptMeetings: return prop_equal_except_meetings(pair, k);
    case PropertyId::kNumInfected: return prop_num_infected(pair, k);
    case PropertyId::kNumMeetings: return prop_num_meetings(pair, k);
    case PropertyId::kMeetingsOfInfected: return prop_meetings_of_infected(pair, k, mode);
    case PropertyId::kMeetingsOfCorrupted: return prop_meetings_of_corrupted(pair, k, mode);
    case PropertyId::kNotifiedCorrupted: return prop_notified_corrupted(pair, k);
    case PropertyId::kCorruptedMeetCorrupted: return prop_corrupted_meet_corrupted(pair, k);
    case PropertyId::kCorruptedInfections: return prop_corrupted_infections(pair, k);
    case PropertyId::kCorruptedMeetingFrequency:
      return prop_corrupted_meeting_frequency(pair, k);
    case PropertyId::kMeetingWithCorrupted: return prop_meeting_with_corrupted(pair, k);
    case PropertyId::kUnavoidableLoss: return prop_unavoidable_loss(pair, k);
  }
  return {};
}

}  // namespace tracepriv
