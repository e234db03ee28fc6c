// reducer.h
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
// Lexical-diversity reduction: rare lemmas are replaced by nearby words in
// embedding space that carry the same fine-grained tag.

#ifndef MTHT_REDUCER_H_
#define MTHT_REDUCER_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mtht/corpus.h"
#include "mtht/embeddings.h"

namespace mtht {

struct ReducerConfig {
  std::size_t freq_threshold = 2;  // rare means count < freq_threshold
  std::size_t top_k = 3;
  std::size_t restrict_vocab = 30000;
};

using LemmaCounts = std::map<std::string, std::size_t, std::less<>>;

// Counts lemmas of tokens that are not numlike and are in the embedding
// vocabulary. Expects mark_embedding_vocab() to have been applied.
LemmaCounts lemma_frequencies(std::span<const AnnotatedSentence> corpus);

std::set<std::string, std::less<>> find_rare(const LemmaCounts &freqs,
                                             const ReducerConfig &cfg);

struct Replacement {
  std::size_t sentence = 0;
  std::size_t token = 0;
  std::string original;
  std::string lemma;
  std::string xpos;
  std::string substitute;  // empty when skipped
  std::string reason;      // "replaced", "oov", "numlike", "no-candidates", "no-tag-match"

  bool skipped() const { return substitute.empty(); }
  bool operator==(const Replacement &) const = default;
};

struct ReplacementPlan {
  std::vector<Replacement> entries;  // ordered by (sentence, token)

  std::size_t replaced() const;
  std::size_t skipped() const { return entries.size() - replaced(); }

  // TSV audit log: sent_idx, tok_idx, original, lemma, xpos,
  // substitute|SKIP, reason. One '#' header line.
  void save(std::ostream &out) const;
  static ReplacementPlan load(std::istream &in, const std::string &source = "plan");
};

// One entry per occurrence of a rare lemma. The neighbor query uses the
// surface, falling back to the lemma; the first of the top_k neighbors
// whose lexicon xpos equals the token's xpos is chosen.
ReplacementPlan plan_replacements(std::span<const AnnotatedSentence> corpus,
                                  const std::set<std::string, std::less<>> &rare,
                                  const EmbeddingStore &store,
                                  const TagLexicon &lexicon,
                                  const ReducerConfig &cfg, unsigned workers = 1);

// Splices substitutes in place. Throws Error if an entry does not match
// the corpus (out of range or different original surface).
Corpus apply_plan(std::span<const AnnotatedSentence> corpus, const ReplacementPlan &plan);

struct Reduction {
  Corpus corpus;
  ReplacementPlan plan;
  std::size_t rare_lemmas = 0;
};

// mark_embedding_vocab + lemma_frequencies + find_rare + plan + apply.
Reduction reduce_diversity(std::span<const AnnotatedSentence> corpus,
                           const EmbeddingStore &store, const TagLexicon &lexicon,
                           const ReducerConfig &cfg, unsigned workers = 1);

}  // namespace mtht

#endif  // MTHT_REDUCER_H_
