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

#include "tracepriv/attacks.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "tracepriv/corpus.hpp"
#include "tracepriv/properties.hpp"

namespace tracepriv {

namespace {

// Claims are closed upward: a template valid under N is valid under every
// notion above N, and the same rule distinguishes it there.
std::vector<NotionId> close_upward(std::vector<NotionId> direct) {
  std::set<NotionId> out(direct.begin(), direct.end());
  for (NotionId n : direct) {
    for (const auto& [stronger, weaker] : hierarchy_closure()) {
      if (weaker == n) out.insert(stronger);
    }
  }
  return {out.begin(), out.end()};
}

// Picks the template whose direct notion sits below `notion` (or equals it).
std::function<ScenarioPair(NotionId)> dispatch_templates(
    std::vector<std::pair<NotionId, ScenarioPair>> templates) {
  return [templates = std::move(templates)](NotionId notion) {
    for (const auto& [direct, pair] : templates) {
      if (direct == notion || hierarchy_closure().count({notion, direct})) return pair;
    }
    return templates.front().second;
  };
}

// --- observation digests used by the decision rules ------------------------

using EventDigest = std::vector<std::tuple<int, std::int64_t, std::vector<UserId>>>;

EventDigest digest_server_events(const Observation& obs) {
  EventDigest out;
  for (const Record& r : obs.records) {
    if (r.kind == RecordKind::kServerEvent) out.push_back({r.batch, r.nums.at(0), r.users});
  }
  std::sort(out.begin(), out.end());
  return out;
}

EventDigest expected_server_events(const Scenario& s) {
  EventDigest out;
  for (int k = 1; k <= s.batch_count(); ++k) {
    for (const Event& e : s.batch(k).events) {
      if (e.is_empty()) continue;
      out.push_back({k, e.is_meeting() ? 0 : 1,
                     e.is_meeting() ? std::vector<UserId>{e.a, e.b} : std::vector<UserId>{e.a}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Match structure a colluding client set can read off directly: which
// observer matched at which encounter batch (or how many matches in the
// cardinality-only mode).
using MatchDigest = std::vector<std::tuple<int, int, std::string, std::int64_t>>;

MatchDigest digest_matches(const Observation& obs) {
  MatchDigest out;
  for (const Record& r : obs.records) {
    if (r.kind == RecordKind::kMatch) {
      out.push_back({0, r.batch, r.observer, r.nums.at(0)});
    } else if (r.kind == RecordKind::kMatchCount) {
      out.push_back({1, r.batch, r.observer, r.nums.at(0)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Upload-group counts per batch.
std::map<int, int> digest_upload_counts(const Observation& obs) {
  std::map<int, int> out;
  for (const Record& r : obs.records) {
    if (r.kind == RecordKind::kAnonUpload) out[r.batch]++;
  }
  return out;
}

std::map<int, int> expected_upload_counts(const Scenario& s) {
  std::map<int, int> out;
  for (int k = 1; k <= s.batch_count(); ++k) {
    const auto infected = s.infected_in_batch(k);
    if (!infected.empty()) out[k] = static_cast<int>(infected.size());
  }
  return out;
}

// Identity payloads a fully inverting server stores: per infection the
// uploader and her window partners, plus the notified sets.
using ContactDigest = std::vector<std::tuple<int, std::string, std::vector<UserId>>>;

ContactDigest digest_contact_graph(const Observation& obs) {
  ContactDigest out;
  for (const Record& r : obs.records) {
    if (r.kind == RecordKind::kServerUpload) {
      out.push_back({r.batch, "u:" + r.observer, r.users});
    } else if (r.kind == RecordKind::kServerNotify) {
      out.push_back({r.batch, "n", r.users});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ContactDigest expected_contact_graph(const Scenario& s, int t) {
  ContactDigest out;
  for (int k = 1; k <= s.batch_count(); ++k) {
    const auto infected = s.infected_in_batch(k);
    for (const UserId& u : infected) {
      std::vector<UserId> partners;
      for (const WindowEvent& we : window(s, k, t)) {
        if (we.event.is_meeting() && we.event.involves(u)) {
          partners.push_back(we.event.a == u ? we.event.b : we.event.a);
        }
      }
      std::sort(partners.begin(), partners.end());
      out.push_back({k, "u:" + u, std::move(partners)});
    }
    if (!infected.empty()) {
      const auto notified = notified_users(s, k, t);
      out.push_back({k, "n", {notified.begin(), notified.end()}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Collision structure of the published region tuples: the batch's uploads
// with labels renamed by first occurrence.
Transcript digest_region_uploads(const Observation& obs) {
  Observation uploads;
  uploads.vantage = obs.vantage;
  for (const Record& r : obs.records) {
    if (r.kind == RecordKind::kAnonUpload) uploads.records.push_back(r);
  }
  return canonicalize(uploads);
}

// Simulates scenario 0 with a private rng; decision rules compare digests
// against this reference.
VantageObservations simulate_reference(const ScenarioPair& pair, ProtocolId protocol,
                                       const SimOptions& options) {
  RngStream rng(0x5245464552454e43ULL);
  return observe(protocol, pair.s0, pair.corruption, pair.config, rng, options);
}

// --- the attack registry ---------------------------------------------------

std::vector<AttackSpec> build_registry() {
  std::vector<AttackSpec> attacks;

  // Full event log comparison by an all-seeing provider.
  {
    AttackSpec a;
    a.name = "omniscient-server";
    a.protocols = {ProtocolId::kCentralLocation};
    a.vantage = Vantage::kServer;
    a.claimed = close_upward({NotionId::kICountInd, NotionId::kRExclIInd});
    const ScenarioPair icount_tpl =
        PairBuilder()
            .retention(3)
            .users({"A", "B", "C"})
            .corrupt("A")
            .batch({ev_m("A", "B")}, {ev_m("A", "B")})
            .batch({ev_m("A", "B")}, {ev_m("A", "B")})
            .batch({ev_m("A", "C")}, {ev_m("A", "C")})
            .batch({ev_i("B")}, {ev_i("C")})
            .build();
    const ScenarioPair rexcl_tpl = PairBuilder()
                                       .retention(3)
                                       .users({"A", "B", "C", "D"})
                                       .corrupt("A")
                                       .batch({ev_m("B", "C")}, {ev_m("B", "D")})
                                       .build();
    a.template_for = dispatch_templates({{NotionId::kICountInd, icount_tpl},
                                         {NotionId::kRExclIInd, rexcl_tpl}});
    a.make_adversary = [](const ScenarioPair& pair, ProtocolId, const SimOptions&) {
      const EventDigest expected = expected_server_events(pair.s0);
      return Adversary{"omniscient-server", [expected](const Observation& obs) {
                         return digest_server_events(obs) == expected ? 0 : 1;
                       }};
    };
    attacks.push_back(std::move(a));
  }

  // Local matching tells a client in which batch she met an infected user.
  {
    AttackSpec a;
    a.name = "match-batch";
    a.protocols = {ProtocolId::kTokenList, ProtocolId::kKeyChain, ProtocolId::kRegionPsi};
    a.vantage = Vantage::kCorruptedClients;
    a.claimed = close_upward({NotionId::kMInd, NotionId::kICountInd});
    const ScenarioPair swap_tpl = PairBuilder()
                                      .retention(3)
                                      .users({"A", "B", "C"})
                                      .corrupt("A")
                                      .batch({ev_m("A", "B")}, {ev_m("A", "C")})
                                      .batch({ev_m("A", "C")}, {ev_m("A", "B")})
                                      .batch({ev_i("B")}, {ev_i("B")})
                                      .build();
    const ScenarioPair ident_tpl = PairBuilder()
                                       .retention(3)
                                       .users({"A", "B", "C"})
                                       .corrupt("A")
                                       .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                       .batch({ev_m("A", "C")}, {ev_m("A", "C")})
                                       .batch({ev_i("B")}, {ev_i("C")})
                                       .build();
    a.template_for = dispatch_templates(
        {{NotionId::kMInd, swap_tpl}, {NotionId::kICountInd, ident_tpl}});
    a.make_adversary = [](const ScenarioPair& pair, ProtocolId protocol,
                          const SimOptions& options) {
      const MatchDigest expected =
          digest_matches(simulate_reference(pair, protocol, options).clients);
      return Adversary{"match-batch", [expected](const Observation& obs) {
                         return digest_matches(obs) == expected ? 0 : 1;
                       }};
    };
    attacks.push_back(std::move(a));
  }

  // The provider counts anonymous uploads and learns how many users tested
  // positive in each batch.
  {
    AttackSpec a;
    a.name = "count-uploads";
    a.protocols = {ProtocolId::kTokenList, ProtocolId::kKeyChain};
    a.vantage = Vantage::kServer;
    a.claimed = close_upward({NotionId::kIInd});
    const ScenarioPair count_tpl = PairBuilder()
                                       .retention(3)
                                       .users({"A", "B", "C"})
                                       .corrupt("A")
                                       .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                       .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                       .batch({ev_m("A", "C")}, {ev_m("A", "C")})
                                       .batch({ev_i("B"), ev_i("C")}, {ev_i("C"), ev_d()})
                                       .build();
    a.template_for = dispatch_templates({{NotionId::kIInd, count_tpl}});
    a.make_adversary = [](const ScenarioPair& pair, ProtocolId, const SimOptions&) {
      const std::map<int, int> expected = expected_upload_counts(pair.s0);
      return Adversary{"count-uploads", [expected](const Observation& obs) {
                         return digest_upload_counts(obs) == expected ? 0 : 1;
                       }};
    };
    attacks.push_back(std::move(a));
  }

  // An inverting provider reads uploader identities and their contacts.
  {
    AttackSpec a;
    a.name = "server-contact-graph";
    a.protocols = {ProtocolId::kCentralComparison};
    a.vantage = Vantage::kServer;
    a.claimed = close_upward({NotionId::kRInd, NotionId::kICountInd});
    const ScenarioPair r_tpl = PairBuilder()
                                   .retention(3)
                                   .users({"A", "B", "C", "D"})
                                   .corrupt("A")
                                   .batch({ev_m("A", "C"), ev_m("B", "C")},
                                          {ev_m("A", "C"), ev_m("C", "D")})
                                   .batch({ev_i("B")}, {ev_i("B")})
                                   .build();
    const ScenarioPair ident_tpl = PairBuilder()
                                       .retention(3)
                                       .users({"A", "B", "C"})
                                       .corrupt("A")
                                       .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                       .batch({ev_m("A", "C")}, {ev_m("A", "C")})
                                       .batch({ev_i("B")}, {ev_i("C")})
                                       .build();
    a.template_for = dispatch_templates(
        {{NotionId::kRInd, r_tpl}, {NotionId::kICountInd, ident_tpl}});
    a.make_adversary = [](const ScenarioPair& pair, ProtocolId, const SimOptions&) {
      const ContactDigest expected =
          expected_contact_graph(pair.s0, pair.config.retention);
      return Adversary{"server-contact-graph", [expected](const Observation& obs) {
                         return digest_contact_graph(obs) == expected ? 0 : 1;
                       }};
    };
    attacks.push_back(std::move(a));
  }

  // Colliding region tuples reveal which infected users were co-located.
  {
    AttackSpec a;
    a.name = "region-histogram";
    a.protocols = {ProtocolId::kRegionPsi};
    a.vantage = Vantage::kServer;
    a.claimed = close_upward({NotionId::kRInd, NotionId::kICountInd});
    const ScenarioPair r_tpl = PairBuilder()
                                   .retention(3)
                                   .users({"A", "B", "C", "D"})
                                   .corrupt("A")
                                   .batch({ev_m("B", "C")}, {ev_m("B", "D")})
                                   .batch({ev_i("B"), ev_i("C")}, {ev_i("B"), ev_i("C")})
                                   .build();
    const ScenarioPair ident_tpl = PairBuilder()
                                       .retention(3)
                                       .users({"A", "B", "C", "D"})
                                       .corrupt("A")
                                       .batch({ev_m("B", "C")}, {ev_m("B", "C")})
                                       .batch({ev_i("B"), ev_i("C")}, {ev_i("B"), ev_i("D")})
                                       .build();
    a.template_for = dispatch_templates(
        {{NotionId::kRInd, r_tpl}, {NotionId::kICountInd, ident_tpl}});
    a.make_adversary = [](const ScenarioPair& pair, ProtocolId protocol,
                          const SimOptions& options) {
      const Transcript expected =
          digest_region_uploads(simulate_reference(pair, protocol, options).server);
      return Adversary{"region-histogram", [expected](const Observation& obs) {
                         return digest_region_uploads(obs) == expected ? 0 : 1;
                       }};
    };
    attacks.push_back(std::move(a));
  }

  // Registration invariant: every template must be a valid query for every
  // notion the attack claims to break.
  for (const AttackSpec& a : attacks) {
    for (NotionId n : a.claimed) {
      const ScenarioPair tpl = a.template_for(n);
      if (!check_valid(tpl, n).valid) {
        throw std::logic_error("attack " + a.name + ": template invalid under " + to_string(n));
      }
    }
  }
  return attacks;
}

}  // namespace

const std::vector<AttackSpec>& attack_registry() {
  static const std::vector<AttackSpec> kRegistry = build_registry();
  return kRegistry;
}

std::vector<const AttackSpec*> attacks_for(ProtocolId protocol, Vantage vantage,
                                           NotionId notion) {
  std::vector<const AttackSpec*> out;
  for (const AttackSpec& a : attack_registry()) {
    if (a.vantage != vantage) continue;
    if (std::find(a.protocols.begin(), a.protocols.end(), protocol) == a.protocols.end()) {
      continue;
    }
    if (std::find(a.claimed.begin(), a.claimed.end(), notion) == a.claimed.end()) continue;
    out.push_back(&a);
  }
  return out;
}

}  // namespace tracepriv
