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

#include <string>
#include <vector>

#include "tracepriv/game.hpp"

namespace tracepriv {

// A scripted distinguisher: the cells it claims to break, a template pair
// valid under each claimed notion, and a deterministic decision rule built
// from the committed pair. Claims are closed upward in the hierarchy at
// registration (a template valid under a notion is valid under every
// stronger notion, and the same decision rule distinguishes it there too).
struct AttackSpec {
  std::string name;
  std::vector<ProtocolId> protocols;
  Vantage vantage = Vantage::kServer;
  std::vector<NotionId> claimed;
  // Template pair for one claimed notion (templates differ per notion family).
  std::function<ScenarioPair(NotionId)> template_for;
  // Deterministic decision rule, bound to the committed pair.
  std::function<Adversary(const ScenarioPair&, ProtocolId, const SimOptions&)> make_adversary;
};

const std::vector<AttackSpec>& attack_registry();

// Attacks registered for a given cell, in registry order.
std::vector<const AttackSpec*> attacks_for(ProtocolId protocol, Vantage vantage, NotionId notion);

}  // namespace tracepriv
