// lexdiv.h
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
// Measure of textual lexical diversity (MTLD), bidirectional variant.

#ifndef MTHT_LEXDIV_H_
#define MTHT_LEXDIV_H_

#include <span>
#include <string>
#include <vector>

#include "mtht/corpus.h"

namespace mtht {

enum class DiversityUnit { kSurfaceLower, kLemma };
DiversityUnit parse_unit(std::string_view name);

struct MtldConfig {
  double ttr_threshold = 0.72;
  DiversityUnit unit = DiversityUnit::kSurfaceLower;
};

struct MtldResult {
  double mtld = 0;
  double factors_fwd = 0;
  double factors_bwd = 0;
  std::size_t n_tokens = 0;

  std::string to_json() const;
};

// Left-to-right factor count. A factor closes (and the tallies reset) as
// soon as the running type/token ratio drops to the threshold or below;
// the leftover segment adds (1 - ttr) / (1 - threshold).
double mtld_forward(std::span<const std::string> tokens, const MtldConfig &cfg = {});

// Mean of n / factors over the forward and the reversed scan. Throws
// UndefinedMtld if either scan has zero factors, and Error on empty input.
MtldResult mtld(std::span<const std::string> tokens, const MtldConfig &cfg = {});

// Sentences concatenated in corpus order, mapped to the configured unit.
std::vector<std::string> diversity_tokens(std::span<const AnnotatedSentence> corpus,
                                          DiversityUnit unit);

MtldResult mtld(std::span<const AnnotatedSentence> corpus, const MtldConfig &cfg = {});

}  // namespace mtht

#endif  // MTHT_LEXDIV_H_
