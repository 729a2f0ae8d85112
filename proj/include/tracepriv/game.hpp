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

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracepriv/notions.hpp"
#include "tracepriv/protocols.hpp"

namespace tracepriv {

// The challenger: validity gate, per-trial simulation, and statistical
// advantage estimation, plus the exact observational-equivalence check used
// as hold-evidence.

struct Adversary {
  std::string name;
  std::function<int(const Observation&)> guess;  // 0 or 1
};

// Statistical bound parameters: two-sided Hoeffding at confidence delta.
inline constexpr double kConfidenceDelta = 0.01;
// A cell is BREAK only when advantage minus the Hoeffding half-width clears
// this threshold.
inline constexpr double kBreakThreshold = 0.5;

struct GameResult {
  int trials_per_arm = 0;
  int guess0_given_b0 = 0;  // trials with g = 0 when b = 0
  int guess0_given_b1 = 0;  // trials with g = 0 when b = 1

  double advantage() const;
  double half_width() const;  // sqrt(ln(4/delta) / (2 * trials_per_arm))
  bool clears_break_threshold() const {
    return advantage() - half_width() > kBreakThreshold;
  }
};

// Thrown when the challenger rejects an invalid query (step-3 behavior): the
// pair was never simulated.
struct InvalidPairError : std::runtime_error {
  InvalidPairError(int batch_, std::vector<Violation> violations_);
  int batch;
  std::vector<Violation> violations;
};

// Runs `trials_per_arm` games for each challenge bit: simulate the protocol
// on the picked scenario, hand the vantage's observation to the adversary,
// record the guess. Rejects pairs that fail the notion's validity check.
GameResult run_game(const ScenarioPair& pair, NotionId notion, ProtocolId protocol,
                    Vantage vantage, const Adversary& adversary, int trials_per_arm,
                    RngStream rng, DifferMode mode = DifferMode::kDefault,
                    const SimOptions& options = {});

struct EquivalenceResult {
  bool equal = true;
  std::string difference;  // first differing record when not equal
};

// Exact hold-check: canonical transcripts of the two scenarios at this
// vantage. Since canonical transcripts are rng-independent, EQUAL means no
// adversary has any advantage on this pair at this vantage.
EquivalenceResult observational_equivalence(const ScenarioPair& pair, ProtocolId protocol,
                                            Vantage vantage, RngStream rng,
                                            const SimOptions& options = {});

// Guesses by simulating both committed scenarios itself and comparing
// canonical transcripts; realizes advantage 1 exactly when the transcripts
// differ.
Adversary make_transcript_matching_adversary(const ScenarioPair& pair, ProtocolId protocol,
                                             Vantage vantage, const SimOptions& options = {});
Adversary make_random_guess_adversary(std::uint64_t seed);

enum class VerdictKind { kBreak, kHoldEvidence, kUnknown };

struct Verdict {
  VerdictKind kind = VerdictKind::kUnknown;
  std::string attack;       // BREAK: attack name
  double advantage = 0.0;   // BREAK: estimate
  int pairs_tested = 0;     // HOLD-EVIDENCE: pair count
  std::string note;         // UNKNOWN: distinguishing pair / reason
};

std::string to_string(const Verdict& v);

struct MatrixParams {
  int pair_budget = 500;    // valid pairs per non-attacked cell
  int trials_per_arm = 200; // game trials per registered attack
  std::uint64_t seed = 1;
  DifferMode mode = DifferMode::kDefault;
  SimOptions options;
};

struct MatrixCellKey {
  ProtocolId protocol;
  Vantage vantage;
  NotionId notion;

  friend auto operator<=>(const MatrixCellKey&, const MatrixCellKey&) = default;
};

struct MatrixReport {
  MatrixParams params;
  std::map<MatrixCellKey, Verdict> cells;
};

// Runs every registered attack on its template pairs, then hold-evidence
// sampling for the remaining cells. HOLD-EVIDENCE is evidence over sampled
// valid pairs, not proof.
MatrixReport build_matrix(const MatrixParams& params);

}  // namespace tracepriv
