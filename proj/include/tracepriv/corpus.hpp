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

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "tracepriv/notions.hpp"

namespace tracepriv {

// Shorthand event constructors for corpus and test fixtures.
inline Event ev_m(const std::string& a, const std::string& b) { return Event::meeting(a, b); }
inline Event ev_i(const std::string& a) { return Event::infection(a); }
inline Event ev_d() { return Event::empty(); }

class PairBuilder {
 public:
  PairBuilder& retention(int t);
  PairBuilder& users(std::initializer_list<std::string> names);
  PairBuilder& corrupt(const std::string& user, int from_batch = 1);
  // One aligned batch; shorter sides are padded with empty events.
  PairBuilder& batch(std::vector<Event> s0_events, std::vector<Event> s1_events);
  ScenarioPair build() const;

 private:
  ScenarioPair pair_;
};

// One fixed classification vector: a pair, the notion it is checked against,
// and the expected outcome of the validity check.
struct CorpusEntry {
  std::string name;
  NotionId notion;
  bool valid;
  ScenarioPair pair;
};

// The fixed example corpus: every notion's headline example plus the
// catalogued valid/invalid queries, all with retention 3 and user A (and A2,
// A3 where present) corrupted from the first batch.
const std::vector<CorpusEntry>& paper_corpus();

}  // namespace tracepriv
