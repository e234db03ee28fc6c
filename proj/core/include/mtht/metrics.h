// metrics.h
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
// Corpus BLEU and the static-embedding word mover's distance metric
// (reported as "wmd-static").

#ifndef MTHT_METRICS_H_
#define MTHT_METRICS_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtht/corpus.h"
#include "mtht/embeddings.h"
#include "mtht/transport.h"

namespace mtht {

using TokenSequence = std::vector<std::string>;

struct BleuResult {
  double score = 0;
  std::array<double, 4> precisions{};
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  double brevity_penalty = 0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  // Keys: score, p1..p4, bp, hyp_len, ref_len.
  std::string to_json() const;
};

// Single-reference corpus BLEU-4 with uniform weights and no smoothing:
// clipped n-gram matches are summed over the corpus before the ratios are
// taken, and any zero precision gives a score of 0.
BleuResult corpus_bleu(std::span<const TokenSequence> hyp,
                       std::span<const TokenSequence> ref);
BleuResult corpus_bleu(std::span<const AnnotatedSentence> hyp,
                       std::span<const AnnotatedSentence> ref);

enum class WmdWeighting { kUniform, kIdf };
WmdWeighting parse_weighting(std::string_view name);

// idf(w) = ln((N + 1) / (df(w) + 1)) over a reference corpus of N sentences.
class IdfTable {
 public:
  IdfTable() = default;
  explicit IdfTable(std::span<const TokenSequence> reference);

  double idf(const std::string &token) const;

 private:
  std::unordered_map<std::string, std::size_t> df_;
  std::size_t documents_ = 0;
};

struct WmdResult {
  double distance = 0;
  double similarity = 1;  // 1 / (1 + distance)
  std::vector<std::string> x_types;
  std::vector<std::string> y_types;
  std::vector<double> x_weights;
  std::vector<double> y_weights;
  std::vector<Flow> plan;
};

// Exact optimal transport between the normalized term-frequency
// distributions of the two sentences (optionally idf-scaled), with
// Euclidean ground cost between unit-normalized vectors. Tokens missing
// from the store are dropped. Throws Error if a side has no usable token.
WmdResult wmd(std::span<const std::string> x, std::span<const std::string> y,
              const EmbeddingStore &store,
              WmdWeighting weighting = WmdWeighting::kUniform,
              const IdfTable *idf = nullptr);

struct CorpusWmdResult {
  double mean_similarity = 0;
  std::size_t n_scored = 0;
  std::size_t n_skipped = 0;
  std::vector<double> similarities;  // per scored pair, corpus order

  // Keys: metric ("wmd-static"), mean_similarity, n_scored, n_skipped.
  std::string to_json() const;
};

// Average sentence-level similarity over scoreable pairs. Throws Error when
// nothing is scoreable or the corpora differ in length.
CorpusWmdResult corpus_wmd_score(std::span<const TokenSequence> hyp,
                                 std::span<const TokenSequence> ref,
                                 const EmbeddingStore &store,
                                 WmdWeighting weighting = WmdWeighting::kUniform,
                                 unsigned workers = 1);

std::vector<TokenSequence> surfaces(std::span<const AnnotatedSentence> corpus);

}  // namespace mtht

#endif  // MTHT_METRICS_H_
