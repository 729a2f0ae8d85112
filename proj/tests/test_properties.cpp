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
#include <map>

#include "oracle.hpp"
#include "tracepriv/corpus.hpp"
#include "tracepriv/generator.hpp"
#include "tracepriv/properties.hpp"

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

ScenarioPair swapped(const ScenarioPair& pair) {
  ScenarioPair out = pair;
  std::swap(out.s0, out.s1);
  return out;
}

// Reference-free global renaming of users across the whole pair.
ScenarioPair relabeled(const ScenarioPair& pair, const std::map<UserId, UserId>& map) {
  auto rename = [&](const UserId& u) { return map.count(u) ? map.at(u) : u; };
  ScenarioPair out = pair;
  for (Scenario* s : {&out.s0, &out.s1}) {
    for (Batch& b : s->batches) {
      for (Event& e : b.events) {
        if (e.is_meeting()) {
          e = Event::meeting(rename(e.a), rename(e.b));
        } else if (e.is_infection()) {
          e = Event::infection(rename(e.a));
        }
      }
    }
  }
  out.corruption.corrupted_from.clear();
  for (const auto& [u, from] : pair.corruption.corrupted_from) {
    out.corruption.corrupted_from[rename(u)] = from;
  }
  for (UserId& u : out.config.users) u = rename(u);
  return out;
}

constexpr PropertyId kAllProperties[] = {
    PropertyId::kEqualExceptInfected,    PropertyId::kEqualExceptMeetings,
    PropertyId::kNumInfected,            PropertyId::kNumMeetings,
    PropertyId::kMeetingsOfInfected,     PropertyId::kMeetingsOfCorrupted,
    PropertyId::kNotifiedCorrupted,      PropertyId::kCorruptedMeetCorrupted,
    PropertyId::kCorruptedInfections,    PropertyId::kCorruptedMeetingFrequency,
    PropertyId::kMeetingWithCorrupted,   PropertyId::kUnavoidableLoss,
};

}  // namespace

TEST_CASE("equal-except-infected allows infection slots to differ") {
  CHECK(prop_equal_except_infected(corpus_pair("i-headline"), 4).ok);
  const ScenarioPair differs = corpus_pair("i-meetings-differ");
  CHECK_FALSE(prop_equal_except_infected(differs, 1).ok);

  const ScenarioPair blanks =
      PairBuilder().retention(3).users({"A"}).corrupt("A").batch({ev_d()}, {ev_d()}).build();
  CHECK(prop_equal_except_infected(blanks, 1).ok);
}

TEST_CASE("equal-except-meetings allows meeting slots to differ") {
  CHECK(prop_equal_except_meetings(corpus_pair("m-headline"), 1).ok);
  CHECK(prop_equal_except_meetings(corpus_pair("m-headline"), 3).ok);
  CHECK_FALSE(prop_equal_except_meetings(corpus_pair("m-infected-identity-differs"), 1).ok);
  CHECK(prop_equal_except_meetings(corpus_pair("mexcl-honest-meeting-count"), 1).ok);
}

TEST_CASE("per-batch infection counts") {
  CHECK(prop_num_infected(corpus_pair("icount-headline"), 4).ok);
  CHECK_FALSE(prop_num_infected(corpus_pair("i-infection-count-differs"), 2).ok);
  CHECK(prop_num_infected(corpus_pair("rexcl-honest-social-graph"), 1).ok);
}

TEST_CASE("per-batch meeting counts") {
  CHECK_FALSE(prop_num_meetings(corpus_pair("r-meeting-count-differs"), 1).ok);
  CHECK(prop_num_meetings(corpus_pair("r-headline"), 1).ok);
  const ScenarioPair blanks =
      PairBuilder().retention(3).users({"A"}).corrupt("A").batch({ev_d()}, {ev_d()}).build();
  CHECK(prop_num_meetings(blanks, 1).ok);
}

TEST_CASE("differing users, conservative vs literal") {
  const ScenarioPair headline = corpus_pair("mexcl-headline");
  const auto d = differing_users(headline, 2, DifferMode::kDefault);
  CHECK(d.count("A"));
  CHECK(d.count("C"));
  CHECK(d.count("D"));
  CHECK_FALSE(d.count("B"));

  const ScenarioPair identical = corpus_pair("i-headline");
  CHECK(differing_users(identical, 3, DifferMode::kDefault).empty());

  // Three meetings against three blanks: only the conservative mode sees the
  // difference, which is what rules the pair out under the meeting notions.
  const ScenarioPair count_pair = corpus_pair("m-infected-meeting-count");
  const auto conservative = differing_users(count_pair, 1, DifferMode::kDefault);
  CHECK(conservative == std::set<UserId>{"B", "C", "D", "E"});
  CHECK(differing_users(count_pair, 1, DifferMode::kLiteral).empty());
}

TEST_CASE("meetings of infected users must not differ") {
  CHECK(prop_meetings_of_infected(corpus_pair("mexcl-headline"), 3, DifferMode::kDefault).ok);
  CHECK_FALSE(
      prop_meetings_of_infected(corpus_pair("rexcl-infected-meetings-differ"), 2,
                                DifferMode::kDefault)
          .ok);
  const ScenarioPair no_infection = corpus_pair("mexcl-corrupted-partner");
  CHECK(prop_meetings_of_infected(no_infection, 1, DifferMode::kDefault).ok);
}

TEST_CASE("meetings of corrupted users must not differ") {
  CHECK_FALSE(
      prop_meetings_of_corrupted(corpus_pair("r-corrupted-partner-differs"), 1,
                                 DifferMode::kDefault)
          .ok);
  CHECK(prop_meetings_of_corrupted(corpus_pair("r-headline"), 1, DifferMode::kDefault).ok);
  ScenarioPair no_corruption = corpus_pair("r-corrupted-partner-differs");
  no_corruption.corruption.corrupted_from.clear();
  CHECK(prop_meetings_of_corrupted(no_corruption, 1, DifferMode::kDefault).ok);
}

TEST_CASE("notified users") {
  const ScenarioPair warn = corpus_pair("p-warning-differs");
  CHECK(notified_users(warn.s0, 1, 3) == std::set<UserId>{"A"});
  CHECK(notified_users(warn.s1, 1, 3).empty());

  const ScenarioPair none = corpus_pair("rexcl-honest-social-graph");
  CHECK(notified_users(none.s0, 1, 3).empty());

  // A meeting in the infection's own batch counts: the window ends at k.
  const ScenarioPair same_batch = PairBuilder()
                                      .retention(2)
                                      .users({"A", "B"})
                                      .corrupt("A")
                                      .batch({ev_m("A", "B"), ev_i("B")},
                                             {ev_m("A", "B"), ev_i("B")})
                                      .build();
  CHECK(notified_users(same_batch.s0, 1, 2) == std::set<UserId>{"A"});
}

TEST_CASE("notified corrupted users must coincide") {
  CHECK_FALSE(prop_notified_corrupted(corpus_pair("p-warning-differs"), 1).ok);
  CHECK(prop_notified_corrupted(corpus_pair("p-headline"), 2).ok);
  ScenarioPair no_corruption = corpus_pair("p-warning-differs");
  no_corruption.corruption.corrupted_from.clear();
  CHECK(prop_notified_corrupted(no_corruption, 1).ok);
}

TEST_CASE("corrupted users meeting each other") {
  CHECK_FALSE(prop_corrupted_meet_corrupted(corpus_pair("p-corrupted-meets-other-corrupted"), 1).ok);
  CHECK(prop_corrupted_meet_corrupted(corpus_pair("p-headline"), 1).ok);
  const ScenarioPair identical = PairBuilder()
                                     .retention(3)
                                     .users({"A", "A2"})
                                     .corrupt("A")
                                     .corrupt("A2")
                                     .batch({ev_m("A", "A2")}, {ev_m("A", "A2")})
                                     .build();
  CHECK(prop_corrupted_meet_corrupted(identical, 1).ok);
}

TEST_CASE("infections of corrupted users") {
  CHECK_FALSE(prop_corrupted_infections(corpus_pair("p-corrupted-infection-differs"), 1).ok);
  CHECK(prop_corrupted_infections(corpus_pair("icount-headline"), 4).ok);
  CHECK(prop_corrupted_infections(corpus_pair("r-headline"), 1).ok);
}

TEST_CASE("in-window meeting counts of corrupted users") {
  CHECK_FALSE(
      prop_corrupted_meeting_frequency(corpus_pair("p-corrupted-meeting-count-differs"), 1).ok);
  CHECK(prop_corrupted_meeting_frequency(corpus_pair("p-headline"), 1).ok);
  CHECK(prop_corrupted_meeting_frequency(corpus_pair("p-headline"), 2).ok);
}

TEST_CASE("co-meeting structure of corrupted users") {
  CHECK_FALSE(prop_meeting_with_corrupted(corpus_pair("p-co-meeting-differs"), 1).ok);
  CHECK(prop_meeting_with_corrupted(corpus_pair("p-headline"), 1).ok);
  // Same co-met partner swapped for another healthy one is fine.
  const ScenarioPair renamed = PairBuilder()
                                   .retention(3)
                                   .users({"A", "A2", "B", "E"})
                                   .corrupt("A")
                                   .corrupt("A2")
                                   .batch({ev_m("A", "B"), ev_m("A2", "B")},
                                          {ev_m("A", "E"), ev_m("A2", "E")})
                                   .build();
  CHECK(prop_meeting_with_corrupted(renamed, 1).ok);
}

TEST_CASE("unavoidable loss is the five-way conjunction") {
  CHECK(prop_unavoidable_loss(corpus_pair("p-headline"), 1).ok);
  CHECK(prop_unavoidable_loss(corpus_pair("p-headline"), 2).ok);

  const PropertyId expect[] = {
      PropertyId::kCorruptedInfections,       // infection of a corrupted user differs
      PropertyId::kCorruptedMeetingFrequency, // meeting count differs
      PropertyId::kCorruptedMeetCorrupted,    // partner corrupted differs
      PropertyId::kNotifiedCorrupted,         // warning differs
      PropertyId::kMeetingWithCorrupted,      // co-meeting differs
  };
  const std::string pairs[] = {
      "p-corrupted-infection-differs", "p-corrupted-meeting-count-differs",
      "p-corrupted-meets-other-corrupted", "p-warning-differs", "p-co-meeting-differs"};
  for (int i = 0; i < 5; ++i) {
    const PropertyResult r = prop_unavoidable_loss(corpus_pair(pairs[i]), 1);
    CHECK_FALSE(r.ok);
    bool named = false;
    for (const Violation& v : r.violations) named |= v.property == expect[i];
    CHECK(named);
  }

  const ScenarioPair empty =
      PairBuilder().retention(1).users({"A"}).corrupt("A").build();
  CHECK(empty.batch_count() == 0);  // nothing to check, vacuously fine
}

TEST_CASE("predicates are invariant under swapping the scenarios") {
  RngStream rng(11);
  GenParams params;
  params.user_count = 5;
  params.batch_count = 3;
  params.batch_length = 4;
  for (int i = 0; i < 200; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    const ScenarioPair flip = swapped(pair);
    for (int k = 1; k <= pair.batch_count(); ++k) {
      for (PropertyId p : kAllProperties) {
        for (DifferMode mode : {DifferMode::kDefault, DifferMode::kLiteral}) {
          CHECK(eval_property(p, pair, k, mode).ok == eval_property(p, flip, k, mode).ok);
        }
      }
    }
  }
}

TEST_CASE("predicates are invariant under global renaming") {
  const std::map<UserId, UserId> perm = {{"A", "Z"}, {"B", "Y"}, {"C", "X"},
                                         {"D", "W"}, {"E", "V"}};
  RngStream rng(13);
  GenParams params;
  params.user_count = 5;
  params.batch_count = 3;
  for (int i = 0; i < 200; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    const ScenarioPair renamed = relabeled(pair, perm);
    for (int k = 1; k <= pair.batch_count(); ++k) {
      for (PropertyId p : kAllProperties) {
        CHECK(eval_property(p, pair, k, DifferMode::kDefault).ok ==
              eval_property(p, renamed, k, DifferMode::kDefault).ok);
      }
    }
  }
}

TEST_CASE("literal differing set is contained in the conservative one") {
  RngStream rng(17);
  GenParams params;
  params.user_count = 5;
  params.batch_count = 3;
  for (int i = 0; i < 300; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    for (int k = 1; k <= pair.batch_count(); ++k) {
      const auto lit = differing_users(pair, k, DifferMode::kLiteral);
      const auto def = differing_users(pair, k, DifferMode::kDefault);
      CHECK(std::includes(def.begin(), def.end(), lit.begin(), lit.end()));
    }
  }
}

TEST_CASE("every predicate agrees with the reference evaluator") {
  RngStream rng(19);
  GenParams params;
  params.user_count = 5;
  params.batch_count = 3;
  params.batch_length = 4;
  params.infection_rate = 0.25;
  params.corrupted_fraction = 0.4;
  for (int i = 0; i < 1000; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    for (int k = 1; k <= pair.batch_count(); ++k) {
      for (PropertyId p : kAllProperties) {
        for (DifferMode mode : {DifferMode::kDefault, DifferMode::kLiteral}) {
          CHECK(eval_property(p, pair, k, mode).ok == oracle::eval(p, pair, k, mode));
        }
      }
    }
  }
}

TEST_CASE("failing predicates always carry a concrete witness") {
  RngStream rng(23);
  GenParams params;
  params.user_count = 5;
  params.batch_count = 3;
  params.infection_rate = 0.25;
  for (int i = 0; i < 200; ++i) {
    const ScenarioPair pair = gen_well_formed_pair(params, rng);
    for (int k = 1; k <= pair.batch_count(); ++k) {
      for (PropertyId p : kAllProperties) {
        const PropertyResult r = eval_property(p, pair, k, DifferMode::kDefault);
        if (!r.ok) {
          REQUIRE_FALSE(r.violations.empty());
          for (const Violation& v : r.violations) {
            CHECK(v.batch == k);
            CHECK_FALSE(v.detail.empty());
          }
        } else if (p != PropertyId::kUnavoidableLoss) {
          CHECK(r.violations.empty());
        }
      }
    }
  }
}
