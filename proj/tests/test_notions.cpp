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

#include <algorithm>
#include <set>

#include "tracepriv/corpus.hpp"
#include "tracepriv/generator.hpp"
#include "tracepriv/notions.hpp"

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

bool properties_subset(NotionId a, NotionId b) {
  const auto& pa = notion_def(a).properties;
  const auto& pb = notion_def(b).properties;
  return std::all_of(pa.begin(), pa.end(), [&](PropertyId p) {
    return std::find(pb.begin(), pb.end(), p) != pb.end();
  });
}

}  // namespace

TEST_CASE("the seven notion definitions are exactly the fixed conjunctions") {
  using P = PropertyId;
  auto props = [](NotionId n) {
    const auto& v = notion_def(n).properties;
    return std::set<P>(v.begin(), v.end());
  };
  CHECK(props(NotionId::kPInd) == std::set<P>{P::kUnavoidableLoss});
  CHECK(props(NotionId::kIInd) == std::set<P>{P::kEqualExceptInfected, P::kUnavoidableLoss});
  CHECK(props(NotionId::kICountInd) ==
        std::set<P>{P::kEqualExceptInfected, P::kNumInfected, P::kUnavoidableLoss});
  CHECK(props(NotionId::kMInd) == std::set<P>{P::kEqualExceptMeetings, P::kUnavoidableLoss});
  CHECK(props(NotionId::kMExclIInd) ==
        std::set<P>{P::kEqualExceptMeetings, P::kMeetingsOfInfected, P::kUnavoidableLoss});
  CHECK(props(NotionId::kRInd) == std::set<P>{P::kEqualExceptMeetings, P::kNumMeetings,
                                              P::kMeetingsOfCorrupted, P::kUnavoidableLoss});
  CHECK(props(NotionId::kRExclIInd) ==
        std::set<P>{P::kEqualExceptMeetings, P::kNumMeetings, P::kMeetingsOfCorrupted,
                    P::kMeetingsOfInfected, P::kUnavoidableLoss});
}

TEST_CASE("notion names parse, including the portable aliases") {
  for (NotionId n : kAllNotions) {
    CHECK(parse_notion(to_string(n)) == n);
  }
  CHECK(parse_notion("I#-IND") == NotionId::kICountInd);
  CHECK(parse_notion("M\\I-IND") == NotionId::kMExclIInd);
  CHECK(parse_notion("MhI-IND") == NotionId::kMExclIInd);
  CHECK(parse_notion("RhI-IND") == NotionId::kRExclIInd);
  CHECK_FALSE(parse_notion("Q-IND").has_value());
}

TEST_CASE("validity verdicts on the catalogued examples") {
  const ScenarioPair& i_headline = corpus_pair("i-headline");
  CHECK(check_valid(i_headline, NotionId::kIInd).valid);

  // The same pair fails the count-revealing notion in its final batch.
  const ValidityResult r = check_valid(i_headline, NotionId::kICountInd);
  CHECK_FALSE(r.valid);
  CHECK(r.first_failing_batch == 4);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations[0].property == PropertyId::kNumInfected);

  CHECK(check_valid(corpus_pair("rexcl-honest-social-graph"), NotionId::kRExclIInd).valid);
}

TEST_CASE("check_valid reports the first failing batch") {
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "B", "C", "D"})
                                .corrupt("A")
                                .batch({ev_m("B", "C")}, {ev_m("B", "C")})
                                .batch({ev_m("B", "C")}, {ev_m("B", "D")})
                                .batch({ev_i("B")}, {ev_i("B")})
                                .build();
  const ValidityResult r = check_valid(pair, NotionId::kIInd);
  CHECK_FALSE(r.valid);
  CHECK(r.first_failing_batch == 2);
}

TEST_CASE("malformed pairs are rejected as a distinct failure class") {
  ScenarioPair pair = corpus_pair("i-headline");
  pair.s0.batches[0].events[0] = Event::meeting("A", "A");
  CHECK_THROWS_AS(check_valid(pair, NotionId::kIInd), std::invalid_argument);
}

TEST_CASE("hierarchy edges are exactly the seven arrows") {
  const std::set<std::pair<NotionId, NotionId>> expected = {
      {NotionId::kPInd, NotionId::kMInd},      {NotionId::kPInd, NotionId::kIInd},
      {NotionId::kIInd, NotionId::kICountInd}, {NotionId::kMInd, NotionId::kMExclIInd},
      {NotionId::kMInd, NotionId::kRInd},      {NotionId::kRInd, NotionId::kRExclIInd},
      {NotionId::kMExclIInd, NotionId::kRExclIInd},
  };
  const auto& edges = hierarchy_edges();
  CHECK(std::set<std::pair<NotionId, NotionId>>(edges.begin(), edges.end()) == expected);

  const auto& closure = hierarchy_closure();
  CHECK(closure.count({NotionId::kPInd, NotionId::kRExclIInd}));
  CHECK(closure.count({NotionId::kPInd, NotionId::kICountInd}));
  CHECK_FALSE(closure.count({NotionId::kICountInd, NotionId::kMInd}));
  CHECK_FALSE(closure.count({NotionId::kMInd, NotionId::kICountInd}));
  for (NotionId n : kAllNotions) {
    CHECK_FALSE(closure.count({n, n}));  // irreflexive
  }
}

TEST_CASE("along every edge the stronger notion's property set is contained") {
  for (const auto& [stronger, weaker] : hierarchy_closure()) {
    CHECK(properties_subset(stronger, weaker));
  }
}

TEST_CASE("subsumption: valid under the weaker notion implies valid under the stronger") {
  RngStream rng(29);
  GenParams params;
  for (const auto& [stronger, weaker] : hierarchy_edges()) {
    for (int i = 0; i < 50; ++i) {
      const ScenarioPair pair = gen_valid_pair(weaker, params, rng);
      CHECK(check_subsumption(pair, stronger, weaker));
    }
  }
}

TEST_CASE("subsumption is vacuous for pairs invalid under the weaker notion") {
  // Valid under M-IND but not under R-IND: the implication holds vacuously.
  const ScenarioPair& pair = corpus_pair("m-infected-meeting-count");
  CHECK_FALSE(check_valid(pair, NotionId::kRInd).valid);
  CHECK(check_subsumption(pair, NotionId::kMInd, NotionId::kRInd));
}

TEST_CASE("subsumption outside the hierarchy closure is a contract error") {
  const ScenarioPair& pair = corpus_pair("p-headline");
  CHECK_THROWS_AS(check_subsumption(pair, NotionId::kICountInd, NotionId::kMInd),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_subsumption(pair, NotionId::kMInd, NotionId::kPInd),
                  std::invalid_argument);
}

TEST_CASE("a pair valid under any notion is valid under the top notion") {
  RngStream rng(31);
  GenParams params;
  for (NotionId n : kAllNotions) {
    for (int i = 0; i < 30; ++i) {
      const ScenarioPair pair = gen_valid_pair(n, params, rng);
      CHECK(check_valid(pair, NotionId::kPInd).valid);
    }
  }
}

TEST_CASE("check_valid is deterministic") {
  RngStream rng(37);
  GenParams params;
  for (int i = 0; i < 20; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    for (NotionId n : kAllNotions) {
      const ValidityResult a = check_valid(pair, n);
      const ValidityResult b = check_valid(pair, n);
      CHECK(a.valid == b.valid);
      CHECK(a.first_failing_batch == b.first_failing_batch);
      CHECK(a.violations.size() == b.violations.size());
    }
  }
}
