// harness.h
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Copyright 2026 The mtht Authors.
//
// \file
// Experiment orchestration over a parallel MT/HT corpus pair: diversity
// reduction, per-condition classification, MTLD, BLEU and wmd-static, all
// written to a report bundle directory.

#ifndef MTHT_HARNESS_H_
#define MTHT_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mtht/classifier.h"
#include "mtht/corpus.h"
#include "mtht/lexdiv.h"
#include "mtht/metrics.h"
#include "mtht/reducer.h"

namespace mtht {

// Which version (original or modified) of each side a condition uses.
struct Condition {
  bool mt_modified = false;
  bool ht_modified = false;

  // "orig&orig", "modf&modf", "orig&modf", "modf&orig"; MT side first.
  std::string name() const;
  static Condition parse(std::string_view name);
  bool operator==(const Condition &) const = default;
};

struct ExperimentConfig {
  std::string mt_path;
  std::string ht_path;
  CorpusFormat format = CorpusFormat::kAnnotated;
  std::string embeddings_path;  // required by modf conditions and wmd-static
  std::string lexicon_path;     // built from annotated inputs when empty
  SplitRatios ratios;
  std::uint64_t seed = 42;
  ReducerConfig reducer;
  std::vector<Condition> conditions = {{false, false}, {true, true}, {false, true}};
  std::string output_dir = "report";
  bool lowercase = false;
  MtldConfig mtld;
  WmdWeighting wmd_weighting = WmdWeighting::kUniform;
  bool discriminative = true;
  DiscriminativeConfig discriminative_config;

  // Throws Error on unknown keys or invalid values. Relative paths resolve
  // against `base_dir`.
  static ExperimentConfig from_json(std::string_view json, const std::string &base_dir = "");
  static ExperimentConfig load_file(const std::string &path);
  // Canonical form; excludes output_dir so it can key the bundle.
  std::string to_json() const;
  std::string hash() const;
  void validate() const;
};

struct ConditionOutcome {
  std::string name;
  bool ok = false;
  std::string error;
};

struct ExperimentSummary {
  std::string config_hash;
  std::vector<ConditionOutcome> conditions;
  std::vector<std::string> files;  // bundle-relative, in write order

  bool all_ok() const;
  std::string to_json() const;
};

// Writes the bundle to cfg.output_dir. A failing condition is recorded in
// the summary and does not stop the others. Output bytes depend only on
// the config and the input files, never on `workers`.
ExperimentSummary run_experiment(const ExperimentConfig &cfg, unsigned workers = 1,
                                 std::ostream *log = nullptr);

}  // namespace mtht

#endif  // MTHT_HARNESS_H_
