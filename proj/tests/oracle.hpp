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

#include "tracepriv/properties.hpp"

// Test-only reference evaluator: a direct, unoptimized transcription of every
// per-batch predicate as a plain quantifier sweep. It shares only the data
// model with the library and must stay independent of the code paths it
// checks.
namespace oracle {

using tracepriv::DifferMode;
using tracepriv::PropertyId;
using tracepriv::ScenarioPair;
using tracepriv::UserId;

bool eval(PropertyId p, const ScenarioPair& pair, int k, DifferMode mode);

std::set<UserId> differing_users(const ScenarioPair& pair, int k, DifferMode mode);

// Whole-pair validity per notion: conjunction of the notion's properties
// over all batches.
bool valid(tracepriv::NotionId notion, const ScenarioPair& pair, DifferMode mode);

}  // namespace oracle
