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

#include "tracepriv/corpus.hpp"

#include <algorithm>

namespace tracepriv {

PairBuilder& PairBuilder::retention(int t) {
  pair_.config.retention = t;
  return *this;
}

PairBuilder& PairBuilder::users(std::initializer_list<std::string> names) {
  pair_.config.users.assign(names.begin(), names.end());
  return *this;
}

PairBuilder& PairBuilder::corrupt(const std::string& user, int from_batch) {
  pair_.corruption.corrupted_from[user] = from_batch;
  return *this;
}

PairBuilder& PairBuilder::batch(std::vector<Event> s0_events, std::vector<Event> s1_events) {
  const size_t len = std::max(s0_events.size(), s1_events.size());
  s0_events.resize(len);
  s1_events.resize(len);
  pair_.s0.batches.push_back({std::move(s0_events)});
  pair_.s1.batches.push_back({std::move(s1_events)});
  return *this;
}

ScenarioPair PairBuilder::build() const {
  ScenarioPair out = pair_;
  int l = 1;
  for (const Batch& b : out.s0.batches) l = std::max(l, b.length());
  out.config.batch_length = l;
  return out;
}

namespace {

PairBuilder base(std::initializer_list<std::string> users) {
  PairBuilder b;
  b.retention(3).users(users).corrupt("A");
  return b;
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](const std::string& name, NotionId notion, bool valid, ScenarioPair pair) {
    out.push_back({name, notion, valid, std::move(pair)});
  };

  // --- headline examples, one per notion, all valid -----------------------

  add("p-headline", NotionId::kPInd, true,
      base({"A", "B", "C", "D", "E"})
          .batch({ev_m("A", "B"), ev_m("C", "E"), ev_m("A", "C")},
                 {ev_m("A", "C"), ev_d(), ev_m("A", "D")})
          .batch({ev_m("A", "C"), ev_i("B"), ev_i("D")},
                 {ev_m("A", "E"), ev_i("E"), ev_d()})
          .build());

  const ScenarioPair i_headline =
      base({"A", "B", "C"})
          .batch({ev_m("A", "B")}, {ev_m("A", "B")})
          .batch({ev_m("A", "B")}, {ev_m("A", "B")})
          .batch({ev_m("A", "C")}, {ev_m("A", "C")})
          .batch({ev_i("B"), ev_i("C")}, {ev_i("C"), ev_d()})
          .build();
  add("i-headline", NotionId::kIInd, true, i_headline);

  add("icount-headline", NotionId::kICountInd, true,
      base({"A", "B", "C"})
          .batch({ev_m("A", "B")}, {ev_m("A", "B")})
          .batch({ev_m("A", "B")}, {ev_m("A", "B")})
          .batch({ev_m("A", "C")}, {ev_m("A", "C")})
          .batch({ev_i("B")}, {ev_i("C")})
          .build());

  add("m-headline", NotionId::kMInd, true,
      base({"A", "B", "C", "D"})
          .batch({ev_m("A", "B")}, {ev_m("A", "C")})
          .batch({ev_m("A", "D")}, {ev_m("A", "D")})
          .batch({ev_m("C", "D"), ev_i("B"), ev_i("C")}, {ev_d(), ev_i("B"), ev_i("C")})
          .build());

  add("mexcl-headline", NotionId::kMExclIInd, true,
      base({"A", "B", "C", "D"})
          .batch({ev_m("A", "B")}, {ev_m("A", "B")})
          .batch({ev_m("A", "C"), ev_m("C", "D")}, {ev_m("A", "D"), ev_d()})
          .batch({ev_i("B")}, {ev_i("B")})
          .build());

  const ScenarioPair r_headline = base({"A", "B", "C", "D"})
                                      .batch({ev_m("A", "C"), ev_m("B", "C")},
                                             {ev_m("A", "C"), ev_m("C", "D")})
                                      .batch({ev_i("B")}, {ev_i("B")})
                                      .build();
  add("r-headline", NotionId::kRInd, true, r_headline);

  add("rexcl-headline", NotionId::kRExclIInd, true,
      base({"A", "B", "C", "D", "E"})
          .batch({ev_m("A", "C"), ev_m("B", "C"), ev_m("E", "C")},
                 {ev_m("A", "C"), ev_m("B", "C"), ev_m("C", "D")})
          .batch({ev_i("B")}, {ev_i("B")})
          .build());

  // --- catalogued invalid and valid queries, strongest notion first -------

  add("p-corrupted-infection-differs", NotionId::kPInd, false,
      PairBuilder()
          .retention(3)
          .users({"A", "A2"})
          .corrupt("A")
          .corrupt("A2")
          .batch({ev_i("A")}, {ev_i("A2")})
          .build());

  add("p-corrupted-meeting-count-differs", NotionId::kPInd, false,
      base({"A", "B", "C"})
          .batch({ev_m("A", "B"), ev_m("A", "C")}, {ev_m("A", "C"), ev_d()})
          .build());

  add("p-corrupted-meets-other-corrupted", NotionId::kPInd, false,
      PairBuilder()
          .retention(3)
          .users({"A", "A2", "A3"})
          .corrupt("A")
          .corrupt("A2")
          .corrupt("A3")
          .batch({ev_m("A", "A2")}, {ev_m("A", "A3")})
          .build());

  add("p-warning-differs", NotionId::kPInd, false,
      base({"A", "B", "C"})
          .batch({ev_m("A", "B"), ev_i("B")}, {ev_m("A", "C"), ev_d()})
          .build());

  add("p-co-meeting-differs", NotionId::kPInd, false,
      PairBuilder()
          .retention(3)
          .users({"A", "A2", "B", "C", "D"})
          .corrupt("A")
          .corrupt("A2")
          .batch({ev_m("A", "B"), ev_m("A2", "B")}, {ev_m("A", "C"), ev_m("A2", "D")})
          .build());

  add("p-swapped-roles", NotionId::kPInd, true,
      base({"A", "B", "C", "D"})
          .batch({ev_m("A", "B"), ev_m("B", "D")}, {ev_m("A", "C"), ev_d()})
          .batch({ev_i("D")}, {ev_i("B")})
          .build());

  add("i-meetings-differ", NotionId::kIInd, false,
      base({"A", "B", "C", "D"}).batch({ev_m("B", "C")}, {ev_m("C", "D")}).build());

  const ScenarioPair infection_count_pair = base({"A", "B", "C"})
                                                .batch({ev_i("B")}, {ev_i("C")})
                                                .batch({ev_i("C")}, {ev_d()})
                                                .build();
  add("i-infection-count-differs", NotionId::kIInd, true, infection_count_pair);

  const ScenarioPair meet_infected_often = base({"A", "B", "C"})
                                               .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                               .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                               .batch({ev_m("A", "B")}, {ev_m("A", "B")})
                                               .batch({ev_m("A", "C")}, {ev_m("A", "C")})
                                               .batch({ev_i("B")}, {ev_i("C")})
                                               .build();
  add("i-meet-infected-often", NotionId::kIInd, true, meet_infected_often);

  add("i-infected-met-count", NotionId::kIInd, true,
      base({"A", "B", "C"})
          .batch({ev_m("A", "B")}, {ev_m("A", "B")})
          .batch({ev_m("A", "C")}, {ev_m("A", "C")})
          .batch({ev_i("B"), ev_i("C")}, {ev_i("C"), ev_d()})
          .build());

  add("icount-count-differs", NotionId::kICountInd, false, infection_count_pair);
  add("icount-meet-infected-often", NotionId::kICountInd, true, meet_infected_often);
  add("icount-identity-shift", NotionId::kICountInd, true,
      base({"A", "B", "C", "D"})
          .batch({ev_m("A", "B")}, {ev_m("A", "B")})
          .batch({ev_m("A", "C")}, {ev_m("A", "C")})
          .batch({ev_i("B"), ev_i("C")}, {ev_i("C"), ev_i("D")})
          .build());

  add("m-infected-identity-differs", NotionId::kMInd, false,
      base({"A", "B", "C"}).batch({ev_i("B")}, {ev_i("C")}).build());

  const ScenarioPair infected_meeting_count =
      base({"A", "B", "C", "D", "E"})
          .batch({ev_m("B", "C"), ev_m("B", "D"), ev_m("B", "E")}, {ev_d(), ev_d(), ev_d()})
          .batch({ev_i("B")}, {ev_i("B")})
          .build();
  add("m-infected-meeting-count", NotionId::kMInd, true, infected_meeting_count);

  const ScenarioPair infected_partner = base({"A", "B", "C", "D"})
                                            .batch({ev_m("B", "C")}, {ev_m("B", "D")})
                                            .batch({ev_i("B")}, {ev_i("B")})
                                            .build();
  add("m-infected-partner", NotionId::kMInd, true, infected_partner);

  add("mexcl-infected-partner-differs", NotionId::kMExclIInd, false, infected_partner);
  add("mexcl-infected-meeting-count-differs", NotionId::kMExclIInd, false,
      infected_meeting_count);

  const ScenarioPair corrupted_partner =
      base({"A", "B", "C"}).batch({ev_m("A", "B")}, {ev_m("A", "C")}).build();
  add("mexcl-corrupted-partner", NotionId::kMExclIInd, true, corrupted_partner);

  const ScenarioPair honest_meeting_count =
      base({"A", "B", "C"}).batch({ev_m("B", "C")}, {ev_d()}).build();
  add("mexcl-honest-meeting-count", NotionId::kMExclIInd, true, honest_meeting_count);

  add("r-corrupted-partner-differs", NotionId::kRInd, false, corrupted_partner);
  add("r-meeting-count-differs", NotionId::kRInd, false, honest_meeting_count);
  add("r-honest-social-graph", NotionId::kRInd, true, r_headline);

  add("rexcl-infected-meetings-differ", NotionId::kRExclIInd, false, infected_partner);
  add("rexcl-honest-social-graph", NotionId::kRExclIInd, true,
      base({"A", "B", "C", "D"}).batch({ev_m("B", "C")}, {ev_m("B", "D")}).build());

  return out;
}

}  // namespace

const std::vector<CorpusEntry>& paper_corpus() {
  static const std::vector<CorpusEntry> kCorpus = build_corpus();
  return kCorpus;
}

}  // namespace tracepriv
