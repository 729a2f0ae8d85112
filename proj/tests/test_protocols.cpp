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

#include <doctest.h>

#include <set>

#include "tracepriv/corpus.hpp"
#include "tracepriv/game.hpp"
#include "tracepriv/generator.hpp"
#include "tracepriv/protocols.hpp"

using namespace tracepriv;

namespace {

const ScenarioPair& corpus_pair(const std::string& name) {
  for (const CorpusEntry& e : paper_corpus()) {
    if (e.name == name) return e.pair;
  }
  REQUIRE(false);
  static ScenarioPair dummy;
  return dummy;
}

int count_kind(const Observation& obs, RecordKind kind) {
  int n = 0;
  for (const Record& r : obs.records) n += r.kind == kind;
  return n;
}

VantageObservations run(ProtocolId p, const ScenarioPair& pair, int scenario_bit,
                        std::uint64_t seed = 42, PsiMode psi = PsiMode::kPsi) {
  RngStream rng(seed);
  SimOptions options;
  options.psi_mode = psi;
  return observe(p, pair.scenario(scenario_bit), pair.corruption, pair.config, rng, options);
}

}  // namespace

TEST_CASE("central: the provider sees every event with identities") {
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "B"})
                                .corrupt("A")
                                .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                .batch({ev_i("B")}, {ev_i("B")})
                                .build();
  const auto obs = run(ProtocolId::kCentralLocation, pair, 0);
  REQUIRE(count_kind(obs.server, RecordKind::kServerEvent) == 2);
  CHECK(obs.server.records[0].users == std::vector<UserId>{"A", "B"});

  // A met B within the window, so A is alerted when B tests positive.
  CHECK(count_kind(obs.clients, RecordKind::kAtRiskBit) == 1);

  const ScenarioPair empty = PairBuilder().retention(1).users({"A"}).corrupt("A").build();
  const auto none = run(ProtocolId::kCentralLocation, empty, 0);
  CHECK(none.server.records.empty());
  CHECK(none.clients.records.empty());
}

TEST_CASE("pepp: the provider resolves uploads to identities, clients only hear tokens") {
  const ScenarioPair& pair = corpus_pair("r-headline");
  const auto s0 = run(ProtocolId::kCentralComparison, pair, 0);
  const auto s1 = run(ProtocolId::kCentralComparison, pair, 1);

  // Scenario 0 has C meeting the infected B; scenario 1 does not.
  REQUIRE(count_kind(s0.server, RecordKind::kServerUpload) == 1);
  CHECK(s0.server.records.back().kind == RecordKind::kServerNotify);
  const EquivalenceResult eq =
      observational_equivalence(pair, ProtocolId::kCentralComparison, Vantage::kServer,
                                RngStream(7));
  CHECK_FALSE(eq.equal);

  // The colluding clients' view is identical across the two scenarios.
  const EquivalenceResult client_eq =
      observational_equivalence(pair, ProtocolId::kCentralComparison,
                                Vantage::kCorruptedClients, RngStream(7));
  CHECK(client_eq.equal);

  // No infection, nothing reaches the server.
  const ScenarioPair quiet = PairBuilder()
                                 .retention(3)
                                 .users({"A", "B"})
                                 .corrupt("A")
                                 .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                 .build();
  CHECK(run(ProtocolId::kCentralComparison, quiet, 0).server.records.empty());
}

TEST_CASE("pepp: clients on the top-notion example are indistinguishable") {
  const ScenarioPair& pair = corpus_pair("p-headline");
  const EquivalenceResult eq = observational_equivalence(
      pair, ProtocolId::kCentralComparison, Vantage::kCorruptedClients, RngStream(3));
  CHECK(eq.equal);
}

TEST_CASE("token-list: upload groups count infections; matches carry the encounter batch") {
  const ScenarioPair& count_pair = corpus_pair("i-infected-met-count");
  const auto s0 = run(ProtocolId::kTokenList, count_pair, 0);
  const auto s1 = run(ProtocolId::kTokenList, count_pair, 1);
  CHECK(count_kind(s0.server, RecordKind::kAnonUpload) == 2);
  CHECK(count_kind(s1.server, RecordKind::kAnonUpload) == 1);

  // A heard B's batch-1 token; B's infection in batch 3 publishes it.
  const ScenarioPair meet_then_infect = PairBuilder()
                                            .retention(3)
                                            .users({"A", "B"})
                                            .corrupt("A")
                                            .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                            .batch({ev_d()}, {ev_d()})
                                            .batch({ev_i("B")}, {ev_i("B")})
                                            .build();
  const auto obs = run(ProtocolId::kTokenList, meet_then_infect, 0);
  bool matched = false;
  for (const Record& r : obs.clients.records) {
    if (r.kind == RecordKind::kMatch) {
      matched = true;
      CHECK(r.batch == 3);
      CHECK(r.observer == "A");
      CHECK(r.nums[0] == 1);
    }
  }
  CHECK(matched);

  // Without any controlled client there is nothing to observe.
  ScenarioPair uncorrupted = meet_then_infect;
  uncorrupted.corruption.corrupted_from.clear();
  CHECK(run(ProtocolId::kTokenList, uncorrupted, 0).clients.records.empty());
}

TEST_CASE("key-chain: one key record per infected user and derived matching") {
  const ScenarioPair& count_pair = corpus_pair("i-infected-met-count");
  const auto s0 = run(ProtocolId::kKeyChain, count_pair, 0);
  const auto s1 = run(ProtocolId::kKeyChain, count_pair, 1);
  CHECK(count_kind(s0.server, RecordKind::kAnonUpload) == 2);
  CHECK(count_kind(s1.server, RecordKind::kAnonUpload) == 1);
  for (const Record& r : s0.server.records) {
    REQUIRE(r.labels.size() == 1);  // one key, not one token per batch
    CHECK(r.nums.size() == 2);      // validity bounds
  }
  // Derived matching finds the same contacts as the plain token list.
  CHECK(count_kind(s0.clients, RecordKind::kMatch) ==
        count_kind(run(ProtocolId::kTokenList, count_pair, 0).clients, RecordKind::kMatch));

  const Label key{123, 456};
  CHECK(derive_token(key, 3) == derive_token(key, 3));
  CHECK_FALSE(derive_token(key, 3) == derive_token(key, 4));
}

TEST_CASE("region-psi: co-located infected users produce colliding tuples") {
  // Batch 1 differs: infected B and C share a component in scenario 0 only.
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "B", "C", "D"})
                                .corrupt("A")
                                .batch({ev_m("B", "C")}, {ev_m("B", "D")})
                                .batch({ev_i("B"), ev_i("C")}, {ev_i("B"), ev_i("C")})
                                .build();
  const EquivalenceResult eq = observational_equivalence(pair, ProtocolId::kRegionPsi,
                                                         Vantage::kServer, RngStream(5));
  CHECK_FALSE(eq.equal);

  // The corrupted client in the infected user's component learns the batch.
  const ScenarioPair contact = PairBuilder()
                                   .retention(3)
                                   .users({"A", "B"})
                                   .corrupt("A")
                                   .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                   .batch({ev_i("B")}, {ev_i("B")})
                                   .build();
  const auto obs = run(ProtocolId::kRegionPsi, contact, 0);
  REQUIRE(count_kind(obs.clients, RecordKind::kMatch) >= 1);
  bool found_b1 = false;
  for (const Record& r : obs.clients.records) {
    if (r.kind == RecordKind::kMatch && r.nums[0] == 1) found_b1 = true;
  }
  CHECK(found_b1);

  // Cardinality-only mode reports counts instead of matched tuples.
  const auto ca = run(ProtocolId::kRegionPsi, contact, 0, 42, PsiMode::kPsiCa);
  CHECK(count_kind(ca.clients, RecordKind::kMatch) == 0);
  CHECK(count_kind(ca.clients, RecordKind::kMatchCount) >= 1);

  // No infections, nothing is published.
  const ScenarioPair quiet = PairBuilder()
                                 .retention(3)
                                 .users({"A", "B"})
                                 .corrupt("A")
                                 .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                 .build();
  CHECK(run(ProtocolId::kRegionPsi, quiet, 0).server.records.empty());
}

TEST_CASE("vantage separation") {
  RngStream rng(41);
  GenParams params;
  params.infection_rate = 0.3;
  for (int i = 0; i < 40; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    for (ProtocolId protocol : kAllProtocols) {
      const auto obs = run(protocol, pair, 0, 1000 + i);
      for (const Record& r : obs.server.records) {
        CHECK(r.kind != RecordKind::kHeardToken);
        CHECK(r.kind != RecordKind::kAtRiskBit);
        CHECK(r.kind != RecordKind::kMatch);
        CHECK(r.kind != RecordKind::kCorruptedMeet);
      }
      for (const Record& r : obs.clients.records) {
        CHECK(r.kind != RecordKind::kServerEvent);
        CHECK(r.kind != RecordKind::kServerUpload);
        CHECK(r.kind != RecordKind::kServerNotify);
        CHECK(r.kind != RecordKind::kAnonUpload);
      }
    }
  }
}

TEST_CASE("canonical transcripts are independent of the rng stream") {
  RngStream rng(43);
  GenParams params;
  params.infection_rate = 0.3;
  for (int i = 0; i < 30; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    for (ProtocolId protocol : kAllProtocols) {
      for (int bit : {0, 1}) {
        const auto a = run(protocol, pair, bit, 1);
        const auto b = run(protocol, pair, bit, 999);
        CHECK(canonicalize(a.server) == canonicalize(b.server));
        CHECK(canonicalize(a.clients) == canonicalize(b.clients));
      }
    }
  }
}

TEST_CASE("tokens are fresh per batch and shared between co-observers") {
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "A2", "B"})
                                .corrupt("A")
                                .corrupt("A2")
                                .batch({ev_m("A", "B"), ev_m("A2", "B")},
                                       {ev_m("A", "B"), ev_m("A2", "B")})
                                .batch({ev_m("A", "B"), ev_d()}, {ev_m("A", "B"), ev_d()})
                                .build();
  const auto obs = run(ProtocolId::kCentralComparison, pair, 0);
  std::map<int, std::set<Label>> tokens_by_batch;
  for (const Record& r : obs.clients.records) {
    if (r.kind == RecordKind::kHeardToken) {
      tokens_by_batch[r.batch].insert(r.labels[0].value);
      CHECK(r.nums[0] == (r.batch == 1 ? 2 : 1));  // co-observer count
    }
  }
  // Both observers heard the same batch-1 token; batch 2 used a fresh one.
  CHECK(tokens_by_batch[1].size() == 1);
  CHECK(tokens_by_batch[2].size() == 1);
  CHECK(*tokens_by_batch[1].begin() != *tokens_by_batch[2].begin());
}

TEST_CASE("corrupted users meeting each other are recorded by identity") {
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "A2"})
                                .corrupt("A")
                                .corrupt("A2")
                                .batch({ev_m("A", "A2")}, {ev_m("A", "A2")})
                                .build();
  for (ProtocolId protocol :
       {ProtocolId::kCentralComparison, ProtocolId::kTokenList, ProtocolId::kKeyChain}) {
    const auto obs = run(protocol, pair, 0);
    CHECK(count_kind(obs.clients, RecordKind::kCorruptedMeet) == 1);
    CHECK(count_kind(obs.clients, RecordKind::kHeardToken) == 0);
  }
}
