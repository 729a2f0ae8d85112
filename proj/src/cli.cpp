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

#include "tracepriv/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "tracepriv/attacks.hpp"
#include "tracepriv/corpus.hpp"
#include "tracepriv/generator.hpp"
#include "tracepriv/pairfile.hpp"

#include <json.hpp>

namespace tracepriv {

namespace {

struct ContractError : std::runtime_error {
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

std::string legal_notions() {
  std::string out;
  for (const std::string& n : notion_names()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

NotionId require_notion(const std::string& name) {
  if (auto n = parse_notion(name)) return *n;
  throw ContractError("unknown notion '" + name + "'; legal names: " + legal_notions());
}

ProtocolId require_protocol(const std::string& name) {
  if (auto p = parse_protocol(name)) return *p;
  std::string names;
  for (ProtocolId p : kAllProtocols) {
    if (!names.empty()) names += ", ";
    names += to_string(p);
  }
  throw ContractError("unknown protocol '" + name + "'; legal names: " + names);
}

Vantage require_vantage(const std::string& name) {
  if (auto v = parse_vantage(name)) return *v;
  throw ContractError("unknown vantage '" + name + "'; legal names: clients, server");
}

DifferMode mode_from(const std::string& s) {
  if (s == "literal") return DifferMode::kLiteral;
  if (s == "default") return DifferMode::kDefault;
  throw ContractError("unknown mode '" + s + "'; legal values: default, literal");
}

PsiMode psi_mode_from(const std::string& s) {
  if (s == "psi") return PsiMode::kPsi;
  if (s == "psi-ca") return PsiMode::kPsiCa;
  throw ContractError("unknown psi mode '" + s + "'; legal values: psi, psi-ca");
}

std::string format_violations(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    out += "  " + to_string(v.property) + " @ batch " + std::to_string(v.batch) + ": " +
           v.detail + "\n";
  }
  return out;
}

int cmd_validate(const std::string& path, const std::string& notion_name,
                 const std::string& mode_name, std::ostream& out) {
  const NotionId notion = require_notion(notion_name);
  const DifferMode mode = mode_from(mode_name);
  const ScenarioPair pair = load_pair_file(path);

  const auto wf = check_well_formed(pair);
  if (!wf.empty()) {
    out << "MALFORMED\n";
    for (const auto& v : wf) {
      out << "  " << v.rule << " (scenario " << v.scenario << ", batch " << v.batch
          << ", position " << v.position << "): " << v.detail << "\n";
    }
    return 2;
  }
  const ValidityResult r = check_valid(pair, notion, mode);
  if (r.valid) {
    out << "VALID under " << to_string(notion) << "\n";
    return 0;
  }
  out << "INVALID under " << to_string(notion) << " at batch " << r.first_failing_batch
      << "\n"
      << format_violations(r.violations);
  return 1;
}

int cmd_attack(const std::string& path, const std::string& protocol_name,
               const std::string& vantage_name, const std::string& notion_name,
               const std::string& attack_name, int trials, std::uint64_t seed,
               const std::string& mode_name, const std::string& psi_name, std::ostream& out) {
  const ProtocolId protocol = require_protocol(protocol_name);
  const Vantage vantage = require_vantage(vantage_name);
  const NotionId notion = require_notion(notion_name);
  SimOptions options;
  options.psi_mode = psi_mode_from(psi_name);
  const DifferMode mode = mode_from(mode_name);

  const ScenarioPair pair = load_pair_file(path);
  if (const auto wf = check_well_formed(pair); !wf.empty()) {
    throw PairParseError("pair is malformed: " + wf.front().rule + " (" + wf.front().detail +
                         ")");
  }

  Adversary adversary;
  if (attack_name == "random-guess") {
    adversary = make_random_guess_adversary(seed ^ 0x636f696eULL);
  } else if (attack_name == "transcript-match") {
    adversary = make_transcript_matching_adversary(pair, protocol, vantage, options);
  } else {
    const AttackSpec* found = nullptr;
    for (const AttackSpec& a : attack_registry()) {
      if (a.name == attack_name) found = &a;
    }
    if (!found) {
      std::string names = "random-guess, transcript-match";
      for (const AttackSpec& a : attack_registry()) names += ", " + a.name;
      throw ContractError("unknown attack '" + attack_name + "'; legal names: " + names);
    }
    if (found->vantage != vantage ||
        std::find(found->protocols.begin(), found->protocols.end(), protocol) ==
            found->protocols.end()) {
      throw ContractError("attack '" + attack_name + "' does not target " +
                          to_string(protocol) + "/" + to_string(vantage));
    }
    adversary = found->make_adversary(pair, protocol, options);
  }

  GameResult result;
  try {
    result = run_game(pair, notion, protocol, vantage, adversary, trials, RngStream(seed),
                      mode, options);
  } catch (const InvalidPairError& e) {
    out << "REJECTED: " << e.what() << "\n";
    return 1;
  }

  char adv[32], hw[32];
  std::snprintf(adv, sizeof adv, "%.4f", result.advantage());
  std::snprintf(hw, sizeof hw, "%.4f", result.half_width());
  out << "attack: " << adversary.name << "\n"
      << "trials per arm: " << result.trials_per_arm << "\n"
      << "guess=0 | b=0: " << result.guess0_given_b0 << "\n"
      << "guess=0 | b=1: " << result.guess0_given_b1 << "\n"
      << "advantage: " << adv << " +/- " << hw << "\n"
      << "verdict: "
      << (result.clears_break_threshold() ? "BREAK (advantage clears threshold)"
                                          : "no break at this confidence")
      << "\n";
  return 0;
}

int cmd_matrix(int budget, int trials, std::uint64_t seed, const std::string& out_dir,
               const std::string& mode_name, const std::string& psi_name, std::ostream& out) {
  MatrixParams params;
  params.pair_budget = budget;
  params.trials_per_arm = trials;
  params.seed = seed;
  params.mode = mode_from(mode_name);
  params.options.psi_mode = psi_mode_from(psi_name);

  const MatrixReport report = build_matrix(params);
  std::filesystem::create_directories(out_dir);
  const std::string csv_path = out_dir + "/matrix.csv";
  const std::string txt_path = out_dir + "/matrix.txt";
  const std::string rec_path = out_dir + "/experiment.json";
  write_text_file(csv_path, matrix_to_csv(report));
  write_text_file(txt_path, matrix_to_text(report));
  write_text_file(rec_path, experiment_record(report));
  out << matrix_to_text(report) << "\nwrote " << csv_path << ", " << txt_path << ", "
      << rec_path << "\n";
  return 0;
}

int cmd_gen(const std::string& notion_name, int count, std::uint64_t seed,
            const std::string& out_dir, const GenParams& params, std::ostream& out) {
  const NotionId notion = require_notion(notion_name);
  std::filesystem::create_directories(out_dir);
  RngStream rng(seed);
  std::string stem = notion_name;
  for (char& c : stem) {
    if (c == '\\' || c == '#') c = 'x';
  }
  for (int i = 0; i < count; ++i) {
    const ScenarioPair pair = gen_valid_pair(notion, params, rng);
    char name[64];
    std::snprintf(name, sizeof name, "/pair-%s-%03d.json", stem.c_str(), i);
    write_pair_file(out_dir + name, pair);
  }
  out << "wrote " << count << " valid pairs for " << to_string(notion) << " to " << out_dir
      << "\n";
  return 0;
}

int cmd_corpus(const std::string& out_dir, std::ostream& out) {
  std::filesystem::create_directories(out_dir);
  nlohmann::ordered_json index = nlohmann::ordered_json::array();
  for (const CorpusEntry& entry : paper_corpus()) {
    const std::string file = entry.name + ".json";
    write_pair_file(out_dir + "/" + file, entry.pair);
    nlohmann::ordered_json row;
    row["file"] = file;
    row["notion"] = to_string(entry.notion);
    row["expected"] = entry.valid ? "VALID" : "INVALID";
    index.push_back(std::move(row));
  }
  write_text_file(out_dir + "/corpus_index.json", index.dump(2) + "\n");
  out << "wrote " << paper_corpus().size() << " corpus pairs to " << out_dir << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"privacy-notion analysis for proximity-tracing protocols"};
  app.require_subcommand(1);

  std::string file, notion, mode = "default", protocol, vantage, attack_name, out_dir = ".";
  std::string psi = "psi";
  int trials = 1000, budget = 500, count = 1;
  std::uint64_t seed = 1;
  GenParams gen_params;

  auto* validate = app.add_subcommand("validate", "check a pair file against a notion");
  validate->add_option("file", file)->required();
  validate->add_option("--notion", notion)->required();
  validate->add_option("--mode", mode);

  auto* attack = app.add_subcommand("attack", "run a scripted attack as the game adversary");
  attack->add_option("file", file)->required();
  attack->add_option("--protocol", protocol)->required();
  attack->add_option("--vantage", vantage)->required();
  attack->add_option("--notion", notion)->required();
  attack->add_option("--attack", attack_name)->required();
  attack->add_option("--trials", trials);
  attack->add_option("--seed", seed);
  attack->add_option("--mode", mode);
  attack->add_option("--psi-mode", psi);

  auto* matrix = app.add_subcommand("matrix", "build the protocol x notion verdict matrix");
  matrix->add_option("--budget", budget);
  matrix->add_option("--trials", trials);
  matrix->add_option("--seed", seed);
  matrix->add_option("--out", out_dir);
  matrix->add_option("--mode", mode);
  matrix->add_option("--psi-mode", psi);

  auto* gen = app.add_subcommand("gen", "generate valid pair files for a notion");
  gen->add_option("--notion", notion)->required();
  gen->add_option("--count", count);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_dir);
  gen->add_option("--users", gen_params.user_count);
  gen->add_option("--batches", gen_params.batch_count);
  gen->add_option("--length", gen_params.batch_length);
  gen->add_option("--retention", gen_params.retention);
  gen->add_option("--corrupted-fraction", gen_params.corrupted_fraction);
  gen->add_option("--density", gen_params.meeting_density);
  gen->add_option("--infection-rate", gen_params.infection_rate);

  auto* corpus = app.add_subcommand("corpus", "write the fixed example corpus as pair files");
  corpus->add_option("--out", out_dir);

  std::vector<const char*> argv;
  argv.push_back("tracepriv");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, notion, mode, out);
    if (attack->parsed()) {
      return cmd_attack(file, protocol, vantage, notion, attack_name, trials, seed, mode, psi,
                        out);
    }
    if (matrix->parsed()) return cmd_matrix(budget, trials, seed, out_dir, mode, psi, out);
    if (gen->parsed()) return cmd_gen(notion, count, seed, out_dir, gen_params, out);
    if (corpus->parsed()) return cmd_corpus(out_dir, out);
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PairParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GenerationFailure& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace tracepriv
