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

#include "tracepriv/protocols.hpp"

#include <algorithm>
#include <functional>

#include "tracepriv/properties.hpp"

namespace tracepriv {

std::string to_string(ProtocolId p) {
  switch (p) {
    case ProtocolId::kCentralLocation: return "central-location";
    case ProtocolId::kCentralComparison: return "central-comparison";
    case ProtocolId::kTokenList: return "token-list";
    case ProtocolId::kKeyChain: return "key-chain";
    case ProtocolId::kRegionPsi: return "region-psi";
  }
  return "?";
}

std::optional<ProtocolId> parse_protocol(std::string_view name) {
  for (ProtocolId p : kAllProtocols) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

std::optional<Vantage> parse_vantage(std::string_view name) {
  if (name == "clients") return Vantage::kCorruptedClients;
  if (name == "server") return Vantage::kServer;
  return std::nullopt;
}

std::string protocol_location_use(ProtocolId p) {
  switch (p) {
    case ProtocolId::kCentralLocation: return "exact";
    case ProtocolId::kRegionPsi: return "region";
    default: return "no";
  }
}

std::string protocol_pseudonym_lifetime(ProtocolId p) {
  switch (p) {
    case ProtocolId::kCentralLocation: return "forever";
    case ProtocolId::kCentralComparison: return "one-batch";
    case ProtocolId::kTokenList: return "one-batch";
    case ProtocolId::kKeyChain: return "one-batch-derived";
    case ProtocolId::kRegionPsi: return "none";
  }
  return "?";
}

const Observation& pick(const VantageObservations& obs, Vantage v) {
  return v == Vantage::kCorruptedClients ? obs.clients : obs.server;
}

Label derive_token(const Label& key, int batch) {
  std::uint64_t z = key.lo ^ (static_cast<std::uint64_t>(batch) * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  std::uint64_t hi = key.hi ^ (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Label{hi ^ (hi >> 31), z ^ (z >> 31)};
}

namespace {

// Fresh unique labels per run; the model enforces uniqueness outright instead
// of relying on 128-bit collision odds.
class LabelPool {
 public:
  explicit LabelPool(RngStream& rng) : rng_(rng) {}

  Label fresh() {
    for (;;) {
      Label l{rng_.next(), rng_.next()};
      if (used_.insert(l).second) return l;
    }
  }

 private:
  RngStream& rng_;
  std::set<Label> used_;
};

using TokenFn = std::function<Label(const UserId&, int)>;

// What the colluding client adversary can name at a given batch: a corrupted
// device's data is visible live from its corruption batch on, and its stored
// window of the preceding t batches is handed over at corruption time.
bool client_knows(const CorruptionTimeline& corruption, const UserId& u, int batch, int t) {
  auto it = corruption.corrupted_from.find(u);
  return it != corruption.corrupted_from.end() && batch >= it->second - t + 1;
}

LabelSlot token_slot(const Label& value, const UserId& owner, int batch,
                     const CorruptionTimeline& corruption, int t) {
  LabelSlot slot;
  slot.value = value;
  if (client_knows(corruption, owner, batch, t)) {
    slot.owner = owner + "@" + std::to_string(batch);
  }
  return slot;
}

// Broadcast hearing shared by the token protocols: every meeting involving a
// client the adversary controls contributes one heard token per controlled
// side, or an identity record when both ends are corrupted in that batch.
void emit_broadcast_hearing(const Scenario& s, const CorruptionTimeline& corruption,
                            const GameConfig& config, const TokenFn& token_of,
                            std::vector<Record>& out) {
  const int t = config.retention;
  for (int k = 1; k <= s.batch_count(); ++k) {
    for (const Event& e : s.batch(k).events) {
      if (!e.is_meeting()) continue;
      if (corruption.is_corrupted(e.a, k) && corruption.is_corrupted(e.b, k)) {
        Record r;
        r.batch = k;
        r.kind = RecordKind::kCorruptedMeet;
        r.users = {e.a, e.b};
        out.push_back(std::move(r));
        continue;
      }
      for (const auto& [observer, partner] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        if (!client_knows(corruption, observer, k, t)) continue;
        Record r;
        r.batch = k;
        r.kind = RecordKind::kHeardToken;
        r.observer = observer;
        r.labels = {token_slot(token_of(partner, k), partner, k, corruption, t)};
        r.nums = {0};  // co-observer count, filled below
        out.push_back(std::move(r));
      }
    }
  }
  // Co-observer counts: two corrupted users meeting one user hear one token.
  std::map<std::pair<int, Label>, std::int64_t> counts;
  for (const Record& r : out) {
    if (r.kind == RecordKind::kHeardToken) counts[{r.batch, r.labels[0].value}]++;
  }
  for (Record& r : out) {
    if (r.kind == RecordKind::kHeardToken) r.nums[0] = counts[{r.batch, r.labels[0].value}];
  }
}

void emit_at_risk(const Scenario& s, const CorruptionTimeline& corruption,
                  const GameConfig& config, std::vector<Record>& out) {
  for (int k = 1; k <= s.batch_count(); ++k) {
    for (const UserId& u :
         notified_users(s, k, config.retention, corruption, /*corrupted_only=*/true)) {
      Record r;
      r.batch = k;
      r.kind = RecordKind::kAtRiskBit;
      r.observer = u;
      out.push_back(std::move(r));
    }
  }
}

// Anonymous published list for the token-list and key-chain models: infected
// users' pseudonym material plus local matching by the controlled clients.
// The match links the stored heard token (and the batch the client stored it
// in) to the publication.
void emit_decentralized_publication(const Scenario& s, const CorruptionTimeline& corruption,
                                    const GameConfig& config, const TokenFn& token_of,
                                    bool keyed, const std::map<UserId, Label>* keys,
                                    VantageObservations& obs) {
  const int t = config.retention;
  // The published list only shows up in the clients vantage while some
  // controlled client can fetch it (board entries live for t batches).
  auto clients_see_publication = [&](int k) {
    for (const auto& [u, from] : corruption.corrupted_from) {
      if (from <= k + t - 1) return true;
    }
    return false;
  };
  for (int k = 1; k <= s.batch_count(); ++k) {
    for (const UserId& u : s.infected_in_batch(k)) {
      const int lo = window_start(k, t);
      Record server_r;
      server_r.batch = k;
      server_r.kind = RecordKind::kAnonUpload;
      Record client_r;
      client_r.batch = k;
      client_r.kind = RecordKind::kPublishedGroup;
      if (keyed) {
        const Label key = keys->at(u);
        server_r.labels = {{key, ""}};
        server_r.nums = {lo, k};
        client_r.labels = {token_slot(key, u, k, corruption, t)};
        client_r.nums = {lo, k};
      } else {
        for (int b = lo; b <= k; ++b) {
          const Label token = token_of(u, b);
          server_r.labels.push_back({token, ""});
          server_r.nums.push_back(b);
          client_r.labels.push_back(token_slot(token, u, b, corruption, t));
          client_r.nums.push_back(b);
        }
      }
      obs.server.records.push_back(std::move(server_r));
      if (clients_see_publication(k)) obs.clients.records.push_back(std::move(client_r));

      for (int b = lo; b <= k; ++b) {
        for (const Event& e : s.batch(b).events) {
          if (!e.is_meeting() || !e.involves(u)) continue;
          const UserId other = e.a == u ? e.b : e.a;
          if (!client_knows(corruption, other, b, t)) continue;
          if (corruption.is_corrupted(other, b) && corruption.is_corrupted(u, b)) {
            continue;  // the identity-level corrupted-meet record covers this
          }
          Record m;
          m.batch = k;
          m.kind = RecordKind::kMatch;
          m.observer = other;
          m.nums = {b};
          m.labels = {token_slot(token_of(u, b), u, b, corruption, t)};
          obs.clients.records.push_back(std::move(m));
        }
      }
    }
  }
}

// Per-batch connected components of the meeting graph, singletons included.
std::vector<std::vector<UserId>> batch_components(const Scenario& s, int k,
                                                  const std::vector<UserId>& universe) {
  std::map<UserId, UserId> parent;
  std::function<UserId(const UserId&)> find = [&](const UserId& u) -> UserId {
    auto it = parent.find(u);
    if (it == parent.end() || it->second == u) return u;
    UserId root = find(it->second);
    parent[u] = root;
    return root;
  };
  for (const Event& e : s.batch(k).events) {
    if (e.is_meeting()) {
      UserId ra = find(e.a);
      UserId rb = find(e.b);
      if (ra != rb) parent[ra] = rb;
    }
  }
  std::map<UserId, std::vector<UserId>> groups;
  for (const UserId& u : universe) groups[find(u)].push_back(u);
  std::vector<std::vector<UserId>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

Label RegionLabeler::get(int batch, const std::vector<UserId>& members, RngStream& rng) {
  auto [it, fresh] = memo_.try_emplace({batch, members});
  if (fresh) {
    for (;;) {
      Label l{rng.next(), rng.next()};
      if (used_.insert(l).second) {
        it->second = l;
        break;
      }
    }
  }
  return it->second;
}

VantageObservations observe_central(const Scenario& s, const CorruptionTimeline& corruption,
                                    const GameConfig& config, RngStream& rng) {
  (void)rng;  // true identities, no pseudonyms
  VantageObservations obs;
  obs.clients.vantage = Vantage::kCorruptedClients;
  obs.server.vantage = Vantage::kServer;

  for (int k = 1; k <= s.batch_count(); ++k) {
    for (const Event& e : s.batch(k).events) {
      if (e.is_empty()) continue;
      Record r;
      r.batch = k;
      r.kind = RecordKind::kServerEvent;
      r.nums = {e.is_meeting() ? 0 : 1};
      r.users = e.is_meeting() ? std::vector<UserId>{e.a, e.b} : std::vector<UserId>{e.a};
      obs.server.records.push_back(std::move(r));
    }
    // Clients only hold their own meeting tally and the at-risk alert; they
    // share data with the server, never with each other.
    for (const UserId& u : corruption.corrupted_at(k)) {
      int count = 0;
      for (const Event& e : s.batch(k).events) count += e.is_meeting() && e.involves(u);
      Record r;
      r.batch = k;
      r.kind = RecordKind::kMeetingCount;
      r.observer = u;
      r.nums = {count};
      obs.clients.records.push_back(std::move(r));
    }
  }
  emit_at_risk(s, corruption, config, obs.clients.records);
  return obs;
}

VantageObservations observe_pepp(const Scenario& s, const CorruptionTimeline& corruption,
                                 const GameConfig& config, RngStream& rng) {
  VantageObservations obs;
  obs.clients.vantage = Vantage::kCorruptedClients;
  obs.server.vantage = Vantage::kServer;
  LabelPool pool(rng);
  std::map<std::pair<UserId, int>, Label> tokens;
  TokenFn token_of = [&](const UserId& u, int b) {
    auto [it, fresh] = tokens.try_emplace({u, b});
    if (fresh) it->second = pool.fresh();
    return it->second;
  };

  emit_broadcast_hearing(s, corruption, config, token_of, obs.clients.records);
  emit_at_risk(s, corruption, config, obs.clients.records);

  // On a positive test the server receives the tokens the infected user
  // collected over the retention window and inverts them to identities,
  // learns the uploader's identity, and notifies the at-risk users directly.
  const int t = config.retention;
  for (int k = 1; k <= s.batch_count(); ++k) {
    const std::set<UserId> infected = s.infected_in_batch(k);
    for (const UserId& u : infected) {
      Record r;
      r.batch = k;
      r.kind = RecordKind::kServerUpload;
      r.observer = u;
      for (const WindowEvent& we : window(s, k, t)) {
        if (we.event.is_meeting() && we.event.involves(u)) {
          r.users.push_back(we.event.a == u ? we.event.b : we.event.a);
        }
      }
      std::sort(r.users.begin(), r.users.end());
      obs.server.records.push_back(std::move(r));
    }
    if (!infected.empty()) {
      const std::set<UserId> notified = notified_users(s, k, t);
      Record r;
      r.batch = k;
      r.kind = RecordKind::kServerNotify;
      r.users.assign(notified.begin(), notified.end());
      obs.server.records.push_back(std::move(r));
    }
  }
  return obs;
}

VantageObservations observe_canetti(const Scenario& s, const CorruptionTimeline& corruption,
                                    const GameConfig& config, RngStream& rng) {
  VantageObservations obs;
  obs.clients.vantage = Vantage::kCorruptedClients;
  obs.server.vantage = Vantage::kServer;
  LabelPool pool(rng);
  std::map<std::pair<UserId, int>, Label> tokens;
  TokenFn token_of = [&](const UserId& u, int b) {
    auto [it, fresh] = tokens.try_emplace({u, b});
    if (fresh) it->second = pool.fresh();
    return it->second;
  };

  emit_broadcast_hearing(s, corruption, config, token_of, obs.clients.records);
  emit_decentralized_publication(s, corruption, config, token_of, /*keyed=*/false, nullptr, obs);
  return obs;
}

VantageObservations observe_dp3t(const Scenario& s, const CorruptionTimeline& corruption,
                                 const GameConfig& config, RngStream& rng) {
  VantageObservations obs;
  obs.clients.vantage = Vantage::kCorruptedClients;
  obs.server.vantage = Vantage::kServer;
  LabelPool pool(rng);

  std::map<UserId, Label> keys;
  for (const UserId& u : config.users) keys[u] = pool.fresh();
  TokenFn token_of = [&](const UserId& u, int b) { return derive_token(keys.at(u), b); };

  emit_broadcast_hearing(s, corruption, config, token_of, obs.clients.records);
  emit_decentralized_publication(s, corruption, config, token_of, /*keyed=*/true, &keys, obs);
  return obs;
}

VantageObservations observe_mit(const Scenario& s, const CorruptionTimeline& corruption,
                                const GameConfig& config, RngStream& rng, PsiMode psi_mode,
                                RegionLabeler* shared_labeler) {
  VantageObservations obs;
  obs.clients.vantage = Vantage::kCorruptedClients;
  obs.server.vantage = Vantage::kServer;
  RegionLabeler local;
  RegionLabeler& labeler = shared_labeler ? *shared_labeler : local;
  const int t = config.retention;

  // region_of[k][u] = label of u's meeting-graph component in batch k.
  std::vector<std::map<UserId, Label>> region_of(static_cast<size_t>(s.batch_count()) + 1);
  for (int k = 1; k <= s.batch_count(); ++k) {
    for (const auto& members : batch_components(s, k, config.users)) {
      const Label l = labeler.get(k, members, rng);
      for (const UserId& u : members) region_of[static_cast<size_t>(k)][u] = l;
    }
  }
  auto region = [&](const UserId& u, int b) { return region_of[static_cast<size_t>(b)].at(u); };

  for (int k = 1; k <= s.batch_count(); ++k) {
    const std::set<UserId> infected = s.infected_in_batch(k);
    // Each infected user publishes her obfuscated (region, batch) tuples of
    // the window as one anonymous group; the database is a set.
    std::set<std::pair<Label, int>> published;
    for (const UserId& u : infected) {
      Record r;
      r.batch = k;
      r.kind = RecordKind::kAnonUpload;
      for (int b = window_start(k, t); b <= k; ++b) {
        r.labels.push_back({region(u, b), ""});
        r.nums.push_back(b);
        published.insert({region(u, b), b});
      }
      obs.server.records.push_back(std::move(r));
    }
    if (infected.empty()) continue;

    // Corrupted clients intersect their own tuples with the database. PSI
    // returns the matched set elements, PSI-CA only how many matched.
    for (const UserId& c : corruption.corrupted_at(k)) {
      std::vector<std::pair<Label, int>> matches;
      for (int b = window_start(k, t); b <= k; ++b) {
        const Label r = region(c, b);
        if (published.count({r, b})) matches.push_back({r, b});
      }
      if (psi_mode == PsiMode::kPsiCa) {
        Record r;
        r.batch = k;
        r.kind = RecordKind::kMatchCount;
        r.observer = c;
        r.nums = {static_cast<std::int64_t>(matches.size())};
        obs.clients.records.push_back(std::move(r));
      } else {
        for (const auto& [label, b] : matches) {
          Record r;
          r.batch = k;
          r.kind = RecordKind::kMatch;
          r.observer = c;
          r.nums = {b};
          r.labels = {{label, ""}};  // matched values are comparable across clients
          obs.clients.records.push_back(std::move(r));
        }
      }
    }
  }
  return obs;
}

VantageObservations observe(ProtocolId protocol, const Scenario& s,
                            const CorruptionTimeline& corruption, const GameConfig& config,
                            RngStream& rng, const SimOptions& options,
                            RegionLabeler* shared_labeler) {
  switch (protocol) {
    case ProtocolId::kCentralLocation: return observe_central(s, corruption, config, rng);
    case ProtocolId::kCentralComparison: return observe_pepp(s, corruption, config, rng);
    case ProtocolId::kTokenList: return observe_canetti(s, corruption, config, rng);
    case ProtocolId::kKeyChain: return observe_dp3t(s, corruption, config, rng);
    case ProtocolId::kRegionPsi:
      return observe_mit(s, corruption, config, rng, options.psi_mode, shared_labeler);
  }
  return {};
}

}  // namespace tracepriv
