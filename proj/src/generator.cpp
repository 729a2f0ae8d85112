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

#include "tracepriv/generator.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace tracepriv {

namespace {

std::vector<UserId> make_user_names(int n) {
  std::vector<UserId> out;
  for (int i = 0; i < n; ++i) {
    std::string name(1, static_cast<char>('A' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    out.push_back(name);
  }
  return out;
}

struct GenContext {
  GenParams params;
  GameConfig config;
  CorruptionTimeline corruption;
  std::set<UserId> ever_corrupted;
};

Scenario random_scenario(const GenContext& ctx, RngStream& rng) {
  const auto& p = ctx.params;
  Scenario s;
  s.batches.resize(static_cast<size_t>(p.batch_count));
  for (auto& b : s.batches) b.events.resize(static_cast<size_t>(p.batch_length));

  for (int k = 1; k <= p.batch_count; ++k) {
    std::set<Event> in_batch;
    for (int j = 1; j <= p.batch_length; ++j) {
      if (!rng.chance(p.meeting_density)) continue;
      for (int attempt = 0; attempt < 4; ++attempt) {
        const UserId& u = ctx.config.users[rng.uniform(ctx.config.users.size())];
        const UserId& v = ctx.config.users[rng.uniform(ctx.config.users.size())];
        if (u == v) continue;
        Event e = Event::meeting(u, v);
        if (in_batch.insert(e).second) {
          s.batches[static_cast<size_t>(k - 1)].events[static_cast<size_t>(j - 1)] = e;
          break;
        }
      }
    }
  }

  // Infections go into empty positions; the infected user's later meetings
  // are cleared to keep the self-isolation rule.
  for (const UserId& u : ctx.config.users) {
    if (!rng.chance(p.infection_rate)) continue;
    const int kb = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(p.batch_count)));
    auto& events = s.batches[static_cast<size_t>(kb - 1)].events;
    std::vector<size_t> empties;
    for (size_t j = 0; j < events.size(); ++j) {
      if (events[j].is_empty()) empties.push_back(j);
    }
    if (empties.empty()) continue;
    events[empties[rng.uniform(empties.size())]] = Event::infection(u);
    for (int k = kb + 1; k <= p.batch_count; ++k) {
      for (Event& e : s.batches[static_cast<size_t>(k - 1)].events) {
        if (e.is_meeting() && e.involves(u)) e = Event::empty();
      }
    }
  }
  return s;
}

// --- perturbation helpers -------------------------------------------------

std::set<UserId> infected_users(const Scenario& s) {
  std::set<UserId> out;
  for (const Batch& b : s.batches) {
    for (const Event& e : b.events) {
      if (e.is_infection()) out.insert(e.a);
    }
  }
  return out;
}

// Union-find roots of the batch's meeting graph.
std::map<UserId, UserId> component_roots(const Batch& batch) {
  std::map<UserId, UserId> parent;
  std::function<UserId(const UserId&)> find = [&](const UserId& u) -> UserId {
    auto it = parent.find(u);
    if (it == parent.end() || it->second == u) return u;
    UserId root = find(it->second);
    parent[u] = root;
    return root;
  };
  for (const Event& e : batch.events) {
    if (!e.is_meeting()) continue;
    UserId ra = find(e.a);
    UserId rb = find(e.b);
    if (ra != rb) parent[ra] = rb;
  }
  std::map<UserId, UserId> roots;
  for (const auto& [u, _] : parent) roots[u] = find(u);
  return roots;
}

// Membership of u's component within one batch (u alone if unmet).
std::set<UserId> component_of(const Batch& batch, const UserId& u) {
  auto roots = component_roots(batch);
  std::set<UserId> out{u};
  auto it = roots.find(u);
  if (it == roots.end()) return out;
  for (const auto& [v, r] : roots) {
    if (r == it->second) out.insert(v);
  }
  return out;
}

struct Perturber {
  const GenContext& ctx;
  Scenario& s1;
  const Scenario& s0;
  RngStream& rng;
  std::set<UserId> tainted;  // ever infected in either scenario, or corrupted

  Perturber(const GenContext& ctx_, Scenario& s1_, const Scenario& s0_, RngStream& rng_)
      : ctx(ctx_), s1(s1_), s0(s0_), rng(rng_) {
    refresh_tainted();
  }

  void refresh_tainted() {
    tainted = ctx.ever_corrupted;
    for (const UserId& u : infected_users(s0)) tainted.insert(u);
    for (const UserId& u : infected_users(s1)) tainted.insert(u);
  }

  bool is_clean(const UserId& u) const { return !tainted.count(u); }

  bool component_free_of(const Batch& batch, const UserId& u,
                         const std::set<UserId>& bad) const {
    for (const UserId& m : component_of(batch, u)) {
      if (bad.count(m)) return false;
    }
    return true;
  }

  std::set<UserId> ever_infected_set() const {
    std::set<UserId> out = infected_users(s0);
    for (const UserId& u : infected_users(s1)) out.insert(u);
    return out;
  }

  Batch& batch(int k) { return s1.batches[static_cast<size_t>(k - 1)]; }

  int random_batch() const {
    return 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(s1.batch_count())));
  }

  const UserId& random_user() const {
    return ctx.config.users[rng.uniform(ctx.config.users.size())];
  }

  bool meeting_exists(const Batch& b, const Event& e) const {
    return std::find(b.events.begin(), b.events.end(), e) != b.events.end();
  }

  // Swap two clean users inside one batch's meetings (a transposition keeps
  // the meeting graph isomorphic, which no vantage can see through fresh
  // per-batch pseudonyms or component labels).
  bool rename_users(bool avoid_corrupted_partners, bool avoid_infected_partners) {
    const int k = random_batch();
    Batch& b = batch(k);
    const std::set<UserId> infected = ever_infected_set();
    std::vector<UserId> eligible;
    for (const UserId& u : ctx.config.users) {
      if (!is_clean(u)) continue;
      bool blocked = false;
      for (const Event& e : b.events) {
        if (!e.is_meeting() || !e.involves(u)) continue;
        const UserId& other = e.a == u ? e.b : e.a;
        if (avoid_corrupted_partners && ctx.ever_corrupted.count(other)) blocked = true;
        if (avoid_infected_partners && infected.count(other)) blocked = true;
      }
      if (!blocked) eligible.push_back(u);
    }
    if (eligible.size() < 2) return false;
    const UserId u = eligible[rng.uniform(eligible.size())];
    UserId v = eligible[rng.uniform(eligible.size())];
    if (u == v) return false;
    bool changed = false;
    for (Event& e : b.events) {
      if (!e.is_meeting()) continue;
      UserId a = e.a == u ? v : e.a == v ? u : e.a;
      UserId bb = e.b == u ? v : e.b == v ? u : e.b;
      Event swapped = Event::meeting(a, bb);
      if (swapped != e) {
        e = swapped;
        changed = true;
      }
    }
    // A swap may collide with an existing meeting; the validity check will
    // not see it, so rule duplicates out here.
    std::set<Event> seen;
    for (const Event& e : b.events) {
      if (e.is_meeting() && !seen.insert(e).second) return false;
    }
    return changed;
  }

  // Re-target an infection event to another clean user nobody corrupted met
  // within the retention window.
  bool swap_infection() {
    std::vector<std::pair<int, int>> infections;
    for (int k = 1; k <= s1.batch_count(); ++k) {
      const Batch& b = batch(k);
      for (int j = 1; j <= b.length(); ++j) {
        if (b.at(j).is_infection()) infections.push_back({k, j});
      }
    }
    if (infections.empty()) return false;
    const auto [k, j] = infections[rng.uniform(infections.size())];
    const UserId old_user = batch(k).at(j).a;
    if (ctx.ever_corrupted.count(old_user) || met_by_corrupted_in_window(old_user, k)) {
      return false;
    }
    const std::set<UserId> infected = infected_users(s1);
    for (int attempt = 0; attempt < 6; ++attempt) {
      const UserId v = random_user();
      if (v == old_user || !is_clean(v) || infected.count(v)) continue;
      if (met_by_corrupted_in_window(v, k)) continue;
      if (has_meetings_after(v, k)) continue;
      batch(k).events[static_cast<size_t>(j - 1)] = Event::infection(v);
      return true;
    }
    return false;
  }

  // Add or remove one infection event (changes the per-batch count).
  bool change_infection_count() {
    if (rng.uniform(2) == 0) {
      // remove
      std::vector<std::pair<int, int>> removable;
      for (int k = 1; k <= s1.batch_count(); ++k) {
        const Batch& b = batch(k);
        for (int j = 1; j <= b.length(); ++j) {
          const Event& e = b.at(j);
          if (e.is_infection() && !ctx.ever_corrupted.count(e.a) &&
              !met_by_corrupted_in_window(e.a, k)) {
            removable.push_back({k, j});
          }
        }
      }
      if (removable.empty()) return false;
      const auto [k, j] = removable[rng.uniform(removable.size())];
      batch(k).events[static_cast<size_t>(j - 1)] = Event::empty();
      return true;
    }
    // add
    const int k = random_batch();
    Batch& b = batch(k);
    std::vector<int> empties;
    for (int j = 1; j <= b.length(); ++j) {
      if (b.at(j).is_empty()) empties.push_back(j);
    }
    if (empties.empty()) return false;
    const std::set<UserId> infected = infected_users(s1);
    for (int attempt = 0; attempt < 6; ++attempt) {
      const UserId v = random_user();
      if (!is_clean(v) || infected.count(v)) continue;
      if (met_by_corrupted_in_window(v, k) || has_meetings_after(v, k)) continue;
      b.events[static_cast<size_t>(empties[rng.uniform(empties.size())] - 1)] =
          Event::infection(v);
      return true;
    }
    return false;
  }

  // Add or remove a meeting between clean users inside a component that
  // contains neither corrupted nor ever-infected users.
  bool change_meeting_count() {
    const std::set<UserId> infected = ever_infected_set();
    std::set<UserId> bad = ctx.ever_corrupted;
    bad.insert(infected.begin(), infected.end());
    const int k = random_batch();
    Batch& b = batch(k);
    if (rng.uniform(2) == 0) {
      std::vector<int> removable;
      for (int j = 1; j <= b.length(); ++j) {
        const Event& e = b.at(j);
        if (e.is_meeting() && is_clean(e.a) && is_clean(e.b) &&
            component_free_of(b, e.a, bad)) {
          removable.push_back(j);
        }
      }
      if (removable.empty()) return false;
      b.events[static_cast<size_t>(removable[rng.uniform(removable.size())] - 1)] =
          Event::empty();
      return true;
    }
    std::vector<int> empties;
    for (int j = 1; j <= b.length(); ++j) {
      if (b.at(j).is_empty()) empties.push_back(j);
    }
    if (empties.empty()) return false;
    for (int attempt = 0; attempt < 6; ++attempt) {
      const UserId u = random_user();
      const UserId v = random_user();
      if (u == v || !is_clean(u) || !is_clean(v)) continue;
      if (!component_free_of(b, u, bad) || !component_free_of(b, v, bad)) continue;
      Event e = Event::meeting(u, v);
      if (meeting_exists(b, e)) continue;
      b.events[static_cast<size_t>(empties[rng.uniform(empties.size())] - 1)] = e;
      return true;
    }
    return false;
  }

  // Replace one meeting between clean users with another such meeting in the
  // same batch (preserves the total count for the social-graph notions).
  bool rewire_clean_meeting() {
    const std::set<UserId> infected = ever_infected_set();
    std::set<UserId> bad = ctx.ever_corrupted;
    bad.insert(infected.begin(), infected.end());
    const int k = random_batch();
    Batch& b = batch(k);
    std::vector<int> candidates;
    for (int j = 1; j <= b.length(); ++j) {
      const Event& e = b.at(j);
      if (e.is_meeting() && is_clean(e.a) && is_clean(e.b) &&
          component_free_of(b, e.a, bad)) {
        candidates.push_back(j);
      }
    }
    if (candidates.empty()) return false;
    const int j = candidates[rng.uniform(candidates.size())];
    for (int attempt = 0; attempt < 6; ++attempt) {
      const UserId u = random_user();
      const UserId v = random_user();
      if (u == v || !is_clean(u) || !is_clean(v)) continue;
      if (!component_free_of(b, u, bad) || !component_free_of(b, v, bad)) continue;
      Event e = Event::meeting(u, v);
      if (meeting_exists(b, e)) continue;
      b.events[static_cast<size_t>(j - 1)] = e;
      return true;
    }
    return false;
  }

  // Swap a corrupted user's partner for another clean user, away from any
  // component holding an infected user.
  bool rewire_corrupted_partner() {
    const std::set<UserId> infected = ever_infected_set();
    const int k = random_batch();
    Batch& b = batch(k);
    std::vector<int> candidates;
    for (int j = 1; j <= b.length(); ++j) {
      const Event& e = b.at(j);
      if (!e.is_meeting()) continue;
      const bool ca = ctx.ever_corrupted.count(e.a) != 0;
      const bool cb = ctx.ever_corrupted.count(e.b) != 0;
      if (ca == cb) continue;  // exactly one corrupted endpoint
      const UserId& other = ca ? e.b : e.a;
      if (!is_clean(other)) continue;
      if (!component_free_of(b, e.a, infected)) continue;
      candidates.push_back(j);
    }
    if (candidates.empty()) return false;
    const int j = candidates[rng.uniform(candidates.size())];
    const Event old = b.at(j);
    const UserId c = ctx.ever_corrupted.count(old.a) ? old.a : old.b;
    for (int attempt = 0; attempt < 6; ++attempt) {
      const UserId v = random_user();
      if (v == c || !is_clean(v)) continue;
      if (!component_free_of(b, v, infected)) continue;
      Event e = Event::meeting(c, v);
      if (meeting_exists(b, e)) continue;
      b.events[static_cast<size_t>(j - 1)] = e;
      return true;
    }
    return false;
  }

  // Swap an infected user's partner for another clean user; only inside
  // components with no corrupted member and exactly this one infected member.
  bool rewire_infected_partner() {
    const std::set<UserId> infected = ever_infected_set();
    const int k = random_batch();
    Batch& b = batch(k);
    std::vector<int> candidates;
    for (int j = 1; j <= b.length(); ++j) {
      const Event& e = b.at(j);
      if (!e.is_meeting()) continue;
      const bool ia = infected.count(e.a) != 0;
      const bool ib = infected.count(e.b) != 0;
      if (ia == ib) continue;  // exactly one infected endpoint
      const UserId& w = ia ? e.a : e.b;
      const UserId& other = ia ? e.b : e.a;
      if (!is_clean(other)) continue;
      const std::set<UserId> comp = component_of(b, w);
      bool ok = true;
      for (const UserId& m : comp) {
        if (ctx.ever_corrupted.count(m)) ok = false;
        if (infected.count(m) && m != w) ok = false;
      }
      if (ok) candidates.push_back(j);
    }
    if (candidates.empty()) return false;
    const int j = candidates[rng.uniform(candidates.size())];
    const Event old = b.at(j);
    const UserId w = infected.count(old.a) ? old.a : old.b;
    std::set<UserId> bad = ctx.ever_corrupted;
    bad.insert(infected.begin(), infected.end());
    for (int attempt = 0; attempt < 6; ++attempt) {
      const UserId v = random_user();
      if (v == w || !is_clean(v)) continue;
      if (!component_free_of(b, v, bad)) continue;
      Event e = Event::meeting(w, v);
      if (meeting_exists(b, e)) continue;
      b.events[static_cast<size_t>(j - 1)] = e;
      return true;
    }
    return false;
  }

  bool met_by_corrupted_in_window(const UserId& u, int k) const {
    const int lo = window_start(k, ctx.params.retention);
    for (const Scenario* s : {&s0, &s1}) {
      for (int b = lo; b <= std::min(k, s->batch_count()); ++b) {
        for (const Event& e : s->batch(b).events) {
          if (!e.is_meeting() || !e.involves(u)) continue;
          const UserId& other = e.a == u ? e.b : e.a;
          if (ctx.ever_corrupted.count(other)) return true;
        }
      }
    }
    return false;
  }

  bool has_meetings_after(const UserId& u, int k) const {
    for (int b = k + 1; b <= s1.batch_count(); ++b) {
      for (const Event& e : s1.batch(b).events) {
        if (e.is_meeting() && e.involves(u)) return true;
      }
    }
    return false;
  }
};

enum class Op {
  kRename,
  kSwapInfection,
  kChangeInfectionCount,
  kChangeMeetingCount,
  kRewireCleanMeeting,
  kRewireCorruptedPartner,
  kRewireInfectedPartner,
};

std::vector<Op> menu_for(NotionId notion) {
  switch (notion) {
    case NotionId::kPInd:
      return {Op::kRename, Op::kSwapInfection, Op::kChangeInfectionCount,
              Op::kChangeMeetingCount, Op::kRewireCorruptedPartner,
              Op::kRewireInfectedPartner};
    case NotionId::kIInd:
      return {Op::kSwapInfection, Op::kChangeInfectionCount};
    case NotionId::kICountInd:
      return {Op::kSwapInfection};
    case NotionId::kMInd:
      return {Op::kRename, Op::kChangeMeetingCount, Op::kRewireCorruptedPartner,
              Op::kRewireInfectedPartner};
    case NotionId::kMExclIInd:
      return {Op::kRename, Op::kChangeMeetingCount, Op::kRewireCorruptedPartner};
    case NotionId::kRInd:
      return {Op::kRename, Op::kRewireCleanMeeting, Op::kRewireInfectedPartner};
    case NotionId::kRExclIInd:
      return {Op::kRename, Op::kRewireCleanMeeting};
  }
  return {};
}

bool apply_op(Perturber& p, NotionId notion, Op op) {
  const bool social = notion == NotionId::kRInd || notion == NotionId::kRExclIInd;
  const bool protect_infected =
      notion == NotionId::kMExclIInd || notion == NotionId::kRExclIInd;
  switch (op) {
    case Op::kRename:
      return p.rename_users(/*avoid_corrupted_partners=*/social,
                            /*avoid_infected_partners=*/protect_infected);
    case Op::kSwapInfection: return p.swap_infection();
    case Op::kChangeInfectionCount: return p.change_infection_count();
    case Op::kChangeMeetingCount: return p.change_meeting_count();
    case Op::kRewireCleanMeeting: return p.rewire_clean_meeting();
    case Op::kRewireCorruptedPartner: return p.rewire_corrupted_partner();
    case Op::kRewireInfectedPartner: return p.rewire_infected_partner();
  }
  return false;
}

GenContext make_context(const GenParams& params, RngStream& rng) {
  GenContext ctx;
  ctx.params = params;
  ctx.config.retention = params.retention;
  ctx.config.batch_length = params.batch_length;
  ctx.config.users = make_user_names(params.user_count);
  const int corrupted =
      static_cast<int>(params.corrupted_fraction * params.user_count + 0.5);
  std::vector<UserId> shuffled = ctx.config.users;
  for (size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.uniform(i)]);
  }
  for (int i = 0; i < corrupted && i < static_cast<int>(shuffled.size()); ++i) {
    const int from = rng.chance(0.8) || params.batch_count == 0
                         ? 1
                         : 1 + static_cast<int>(rng.uniform(
                                   static_cast<std::uint64_t>(params.batch_count)));
    ctx.corruption.corrupted_from[shuffled[static_cast<size_t>(i)]] = from;
    ctx.ever_corrupted.insert(shuffled[static_cast<size_t>(i)]);
  }
  return ctx;
}

}  // namespace

ScenarioPair gen_well_formed_pair(const GenParams& params, RngStream& rng) {
  GenContext ctx = make_context(params, rng);
  ScenarioPair pair;
  pair.config = ctx.config;
  pair.corruption = ctx.corruption;
  pair.s0 = random_scenario(ctx, rng);
  pair.s1 = random_scenario(ctx, rng);
  return pair;
}

ScenarioPair gen_valid_pair(NotionId notion, const GenParams& params, RngStream& rng) {
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    GenContext ctx = make_context(params, rng);
    ScenarioPair pair;
    pair.config = ctx.config;
    pair.corruption = ctx.corruption;
    pair.s0 = random_scenario(ctx, rng);
    pair.s1 = pair.s0;

    if (params.batch_count > 0) {
      Perturber perturber(ctx, pair.s1, pair.s0, rng);
      const std::vector<Op> menu = menu_for(notion);
      const int wanted = 1 + static_cast<int>(rng.uniform(3));
      int applied = 0;
      for (int i = 0; i < wanted * 4 && applied < wanted; ++i) {
        const Op op = menu[rng.uniform(menu.size())];
        if (apply_op(perturber, notion, op)) {
          ++applied;
          perturber.refresh_tainted();
        }
      }
    }

    if (!check_well_formed(pair).empty()) continue;
    if (check_valid(pair, notion).valid) return pair;
  }
  throw GenerationFailure(
      "gen_valid_pair: no valid pair for " + to_string(notion) + " after " +
      std::to_string(params.max_attempts) + " attempts (users=" +
      std::to_string(params.user_count) + " K=" + std::to_string(params.batch_count) +
      " l=" + std::to_string(params.batch_length) + " t=" + std::to_string(params.retention) +
      ")");
}

}  // namespace tracepriv
