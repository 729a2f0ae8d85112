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

#include "tracepriv/corpus.hpp"
#include "tracepriv/generator.hpp"
#include "tracepriv/model.hpp"

using namespace tracepriv;

namespace {

ScenarioPair base_pair() {
  return PairBuilder()
      .retention(3)
      .users({"A", "B", "C"})
      .corrupt("A")
      .batch({ev_m("A", "B")}, {ev_m("A", "B")})
      .build();
}

}  // namespace

TEST_CASE("meetings are symmetric and stored canonically") {
  CHECK(Event::meeting("B", "A") == Event::meeting("A", "B"));
  CHECK(Event::meeting("B", "A").a == "A");
  CHECK(Event::meeting("B", "A").b == "B");
}

TEST_CASE("duplicate infection is a well-formedness violation") {
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "B"})
                                .corrupt("A")
                                .batch({ev_i("B")}, {ev_d()})
                                .batch({ev_d()}, {ev_d()})
                                .batch({ev_i("B")}, {ev_d()})
                                .build();
  const auto violations = check_well_formed(pair);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "duplicate infection");
  CHECK(violations[0].scenario == 0);
  CHECK(violations[0].batch == 3);
}

TEST_CASE("duplicate meeting inside one batch is a violation") {
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "B", "C"})
                                .corrupt("A")
                                .batch({ev_d(), ev_d()}, {ev_m("A", "B"), ev_m("B", "A")})
                                .build();
  const auto violations = check_well_formed(pair);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "duplicate meeting in batch");
  CHECK(violations[0].scenario == 1);
}

TEST_CASE("meetings after an infection break self-isolation") {
  const ScenarioPair pair = PairBuilder()
                                .retention(3)
                                .users({"A", "B", "C"})
                                .corrupt("A")
                                .batch({ev_i("B")}, {ev_i("B")})
                                .batch({ev_m("B", "C")}, {ev_d()})
                                .build();
  const auto violations = check_well_formed(pair);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "meeting after infection");
}

TEST_CASE("batch shape mismatches are pair-level violations") {
  ScenarioPair pair = base_pair();
  pair.s1.batches.push_back({{ev_d()}});
  CHECK(check_well_formed(pair).size() == 1);

  ScenarioPair pair2 = base_pair();
  pair2.s1.batches[0].events.push_back(ev_d());
  const auto violations = check_well_formed(pair2);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "batch length mismatch");
}

TEST_CASE("the headline example pair is well-formed") {
  for (const CorpusEntry& e : paper_corpus()) {
    if (e.name == "p-headline") {
      CHECK(check_well_formed(e.pair).empty());
    }
  }
}

TEST_CASE("window clamps at the first batch") {
  Scenario s;
  s.batches = {{{ev_m("A", "B")}}, {{ev_m("A", "C")}}, {{ev_i("B")}}};

  SUBCASE("k=3, t=2 yields batches 2..3") {
    const auto w = window(s, 3, 2);
    REQUIRE(w.size() == 2);
    CHECK(w[0].batch == 2);
    CHECK(w[1].batch == 3);
  }
  SUBCASE("k=1 is just batch 1") {
    const auto w = window(s, 1, 5);
    REQUIRE(w.size() == 1);
    CHECK(w[0].batch == 1);
  }
  SUBCASE("t larger than history covers everything") {
    CHECK(window(s, 2, 5).size() == 2);
  }
  SUBCASE("out-of-range batch index throws") {
    CHECK_THROWS_AS(window(s, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(window(s, 4, 2), std::out_of_range);
  }
}

TEST_CASE("meetings_of counts positions, canonically") {
  Scenario s;
  s.batches = {{{ev_m("A", "B")}},
               {{ev_m("A", "B")}},
               {{ev_m("A", "B")}},
               {{ev_m("A", "C")}},
               {{ev_i("B")}}};
  CHECK(meetings_of("A", window(s, 4, 4)).size() == 4);
  CHECK(meetings_of("D", window(s, 4, 4)).empty());
  CHECK(meetings_of("B", window(s, 1, 1)).size() == 1);
}

TEST_CASE("windows are prefix-stable under appended batches") {
  RngStream rng(7);
  GenParams params;
  params.batch_count = 3;
  for (int i = 0; i < 50; ++i) {
    ScenarioPair pair = gen_well_formed_pair(params, rng);
    Scenario longer = pair.s0;
    longer.batches.push_back({{ev_d()}});
    for (int k = 1; k <= pair.s0.batch_count(); ++k) {
      for (int t = 1; t <= 4; ++t) {
        const auto a = window(pair.s0, k, t);
        const auto b = window(longer, k, t);
        REQUIRE(a.size() == b.size());
        for (size_t j = 0; j < a.size(); ++j) {
          CHECK(a[j].event == b[j].event);
        }
      }
    }
  }
}
