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

#include "tracepriv/game.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "tracepriv/attacks.hpp"
#include "tracepriv/generator.hpp"

namespace tracepriv {

double GameResult::advantage() const {
  if (trials_per_arm == 0) return 0.0;
  const double p0 = static_cast<double>(guess0_given_b0) / trials_per_arm;
  const double p1 = static_cast<double>(guess0_given_b1) / trials_per_arm;
  return std::abs(p0 - p1);
}

double GameResult::half_width() const {
  if (trials_per_arm == 0) return 1.0;
  return std::sqrt(std::log(4.0 / kConfidenceDelta) / (2.0 * trials_per_arm));
}

namespace {

std::string violations_summary(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += to_string(v.property) + " at batch " + std::to_string(v.batch);
  }
  return out;
}

}  // namespace

InvalidPairError::InvalidPairError(int batch_, std::vector<Violation> violations_)
    : std::runtime_error("invalid query at batch " + std::to_string(batch_) + ": " +
                         violations_summary(violations_)),
      batch(batch_),
      violations(std::move(violations_)) {}

GameResult run_game(const ScenarioPair& pair, NotionId notion, ProtocolId protocol,
                    Vantage vantage, const Adversary& adversary, int trials_per_arm,
                    RngStream rng, DifferMode mode, const SimOptions& options) {
  // Step 3: the challenger refuses invalid queries before any simulation.
  const ValidityResult validity = check_valid(pair, notion, mode);
  if (!validity.valid) {
    throw InvalidPairError(validity.first_failing_batch, validity.violations);
  }

  GameResult result;
  result.trials_per_arm = trials_per_arm;
  for (int trial = 0; trial < trials_per_arm; ++trial) {
    for (int b = 0; b < 2; ++b) {
      RngStream trial_rng =
          rng.split(static_cast<std::uint64_t>(trial) * 2 + static_cast<std::uint64_t>(b));
      const VantageObservations obs =
          observe(protocol, pair.scenario(b), pair.corruption, pair.config, trial_rng, options);
      const int g = adversary.guess(pick(obs, vantage));
      if (g == 0) {
        (b == 0 ? result.guess0_given_b0 : result.guess0_given_b1)++;
      }
    }
  }
  return result;
}

EquivalenceResult observational_equivalence(const ScenarioPair& pair, ProtocolId protocol,
                                            Vantage vantage, RngStream rng,
                                            const SimOptions& options) {
  // One shared region labeler so that non-modeled attributes stay consistent
  // across the two worlds whenever the underlying component coincides.
  RegionLabeler labeler;
  RngStream rng0 = rng.split(std::uint64_t{0});
  RngStream rng1 = rng.split(std::uint64_t{1});
  const VantageObservations o0 =
      observe(protocol, pair.s0, pair.corruption, pair.config, rng0, options, &labeler);
  const VantageObservations o1 =
      observe(protocol, pair.s1, pair.corruption, pair.config, rng1, options, &labeler);
  const Transcript t0 = canonicalize(pick(o0, vantage));
  const Transcript t1 = canonicalize(pick(o1, vantage));
  EquivalenceResult r;
  if (!(t0 == t1)) {
    r.equal = false;
    r.difference = first_difference(t0, t1);
  }
  return r;
}

Adversary make_transcript_matching_adversary(const ScenarioPair& pair, ProtocolId protocol,
                                             Vantage vantage, const SimOptions& options) {
  // The adversary committed the pair and knows the protocol, so she can
  // replay both worlds herself; label values cancel out in canonical form.
  RngStream self_rng(0x7261636b65747321ULL);
  RngStream r0 = self_rng.split(std::uint64_t{0});
  const VantageObservations sim0 =
      observe(protocol, pair.s0, pair.corruption, pair.config, r0, options);
  const Transcript expected0 = canonicalize(pick(sim0, vantage));
  return Adversary{
      "transcript-match",
      [expected0](const Observation& obs) { return canonicalize(obs) == expected0 ? 0 : 1; }};
}

Adversary make_random_guess_adversary(std::uint64_t seed) {
  auto rng = std::make_shared<RngStream>(seed);
  return Adversary{"random-guess",
                   [rng](const Observation&) { return static_cast<int>(rng->next() & 1); }};
}

std::string to_string(const Verdict& v) {
  char buf[64];
  switch (v.kind) {
    case VerdictKind::kBreak:
      std::snprintf(buf, sizeof buf, "%.3f", v.advantage);
      return "BREAK(" + v.attack + ",adv=" + buf + ")";
    case VerdictKind::kHoldEvidence:
      return "HOLD-EVIDENCE(" + std::to_string(v.pairs_tested) + ")";
    case VerdictKind::kUnknown:
      return v.note.empty() ? "UNKNOWN" : "UNKNOWN(" + v.note + ")";
  }
  return "?";
}

MatrixReport build_matrix(const MatrixParams& params) {
  MatrixReport report;
  report.params = params;
  RngStream root(params.seed);

  GenParams gen;
  gen.retention = 3;

  std::uint64_t cell_tag = 0;
  for (ProtocolId protocol : kAllProtocols) {
    for (Vantage vantage : {Vantage::kCorruptedClients, Vantage::kServer}) {
      for (NotionId notion : kAllNotions) {
        ++cell_tag;
        RngStream cell_rng = root.split(cell_tag);
        Verdict verdict;

        bool decided = false;
        for (const AttackSpec* attack : attacks_for(protocol, vantage, notion)) {
          const ScenarioPair tmpl = attack->template_for(notion);
          const Adversary adv = attack->make_adversary(tmpl, protocol, params.options);
          const GameResult result =
              run_game(tmpl, notion, protocol, vantage, adv, params.trials_per_arm,
                       cell_rng.split("attack"), params.mode, params.options);
          if (result.clears_break_threshold()) {
            verdict.kind = VerdictKind::kBreak;
            verdict.attack = attack->name;
            verdict.advantage = result.advantage();
            decided = true;
            break;
          }
        }

        if (!decided) {
          if (params.pair_budget <= 0) {
            verdict.kind = VerdictKind::kUnknown;
            verdict.note = "no pair budget";
          } else {
            verdict.kind = VerdictKind::kHoldEvidence;
            RngStream gen_rng = cell_rng.split("gen");
            for (int i = 0; i < params.pair_budget; ++i) {
              const ScenarioPair sample = gen_valid_pair(notion, gen, gen_rng);
              const EquivalenceResult eq = observational_equivalence(
                  sample, protocol, vantage, cell_rng.split(i), params.options);
              if (!eq.equal) {
                // A distinguishing pair: attack template candidate, not hold.
                verdict.kind = VerdictKind::kUnknown;
                verdict.note = "distinguishing pair found: " + eq.difference;
                break;
              }
              verdict.pairs_tested = i + 1;
            }
          }
        }
        report.cells[{protocol, vantage, notion}] = verdict;
      }
    }
  }
  return report;
}

}  // namespace tracepriv
