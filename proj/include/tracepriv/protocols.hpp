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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tracepriv/model.hpp"
#include "tracepriv/observation.hpp"
#include "tracepriv/rng.hpp"

namespace tracepriv {

// Idealized models of the five protocol families. Each maps one scenario to
// the observation of each adversary vantage. Pseudonyms live for one batch;
// all randomness is confined to label values, so canonical transcripts are
// rng-independent.
enum class ProtocolId {
  kCentralLocation,    // provider tracks all locations / events directly
  kCentralComparison,  // broadcast tokens, server inverts & notifies
  kTokenList,          // infected upload own tokens, list published
  kKeyChain,           // infected upload one key, tokens derived per batch
  kRegionPsi,          // region-time tuples published, clients run PSI
};

inline constexpr ProtocolId kAllProtocols[] = {
    ProtocolId::kCentralLocation, ProtocolId::kCentralComparison, ProtocolId::kTokenList,
    ProtocolId::kKeyChain,        ProtocolId::kRegionPsi,
};

std::string to_string(ProtocolId p);
std::optional<ProtocolId> parse_protocol(std::string_view name);
std::optional<Vantage> parse_vantage(std::string_view name);

// Static per-protocol annotations carried by the verdict matrix.
std::string protocol_location_use(ProtocolId p);
std::string protocol_pseudonym_lifetime(ProtocolId p);

enum class PsiMode { kPsi, kPsiCa };

struct SimOptions {
  PsiMode psi_mode = PsiMode::kPsi;
};

// Region labels for the region/PSI model: one label per (batch, connected
// component of the batch's meeting graph); users without meetings get their
// singleton component. Labels are memoized by component member set, so two
// scenarios simulated against a shared labeler draw consistent labels exactly
// when the member sets coincide.
class RegionLabeler {
 public:
  Label get(int batch, const std::vector<UserId>& members, RngStream& rng);

 private:
  std::map<std::pair<int, std::vector<UserId>>, Label> memo_;
  std::set<Label> used_;
};

struct VantageObservations {
  Observation clients;  // pooled view of all colluding corrupted clients
  Observation server;   // provider view
};

VantageObservations observe_central(const Scenario& s, const CorruptionTimeline& corruption,
                                    const GameConfig& config, RngStream& rng);
VantageObservations observe_pepp(const Scenario& s, const CorruptionTimeline& corruption,
                                 const GameConfig& config, RngStream& rng);
VantageObservations observe_canetti(const Scenario& s, const CorruptionTimeline& corruption,
                                    const GameConfig& config, RngStream& rng);
VantageObservations observe_dp3t(const Scenario& s, const CorruptionTimeline& corruption,
                                 const GameConfig& config, RngStream& rng);
VantageObservations observe_mit(const Scenario& s, const CorruptionTimeline& corruption,
                                const GameConfig& config, RngStream& rng,
                                PsiMode psi_mode = PsiMode::kPsi,
                                RegionLabeler* shared_labeler = nullptr);

VantageObservations observe(ProtocolId protocol, const Scenario& s,
                            const CorruptionTimeline& corruption, const GameConfig& config,
                            RngStream& rng, const SimOptions& options = {},
                            RegionLabeler* shared_labeler = nullptr);

const Observation& pick(const VantageObservations& obs, Vantage v);

// Per-batch token derivation for the key-chain model.
Label derive_token(const Label& key, int batch);

}  // namespace tracepriv
