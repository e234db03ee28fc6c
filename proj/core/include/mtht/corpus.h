// corpus.h
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
// Corpus ingestion: tokenization, the 4-column annotated TSV format, a
// most-frequent-tag lexicon, and seeded train/test/validation splits.

#ifndef MTHT_CORPUS_H_
#define MTHT_CORPUS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtht {

enum class Label { kMT, kHT };

std::string_view label_name(Label label);
Label parse_label(std::string_view name);

struct Token {
  std::string surface;
  std::string lemma;
  std::string upos = "X";
  std::string xpos = "X";
  bool is_numlike = false;
  // Filled in by mark_embedding_vocab(); false until then.
  bool in_embed_vocab = false;
};

struct AnnotatedSentence {
  std::vector<Token> tokens;
  std::string source_id;

  std::vector<std::string> surfaces() const;
};

using Corpus = std::vector<AnnotatedSentence>;

// True for digit strings with optional sign, thousands commas and decimal
// point, and for spelled numbers ("seven", "twenty-two", "hundredth").
bool is_numlike(std::string_view surface);

// Splits on whitespace and separates punctuation marks into their own
// tokens. Hyphens and apostrophes inside words, and commas or periods
// between digits, stay attached. Returns nullopt for blank lines.
std::optional<AnnotatedSentence> tokenize(std::string_view line,
                                          std::string source_id = {});

// Out-of-context tag assignment: the most frequent (upos, xpos) observed
// for each lowercased surface. Ties resolve to the lexicographically
// smallest pair.
class TagLexicon {
 public:
  struct Entry {
    std::string upos;
    std::string xpos;
    std::uint64_t count = 0;
  };

  TagLexicon() = default;

  static TagLexicon build(std::span<const AnnotatedSentence> corpus);
  // TSV rows: word, upos, xpos, count.
  static TagLexicon load(std::istream &in, const std::string &source = "lexicon");
  static TagLexicon load_file(const std::string &path);
  void save(std::ostream &out) const;

  // Exact lookup first, then the lowercased form.
  const Entry *find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

// Reads one sentence per line. Lemmas default to the lowercased surface;
// tags come from `lexicon` when given, "X" otherwise.
Corpus read_raw(std::istream &in, const TagLexicon *lexicon = nullptr);
Corpus read_raw_file(const std::string &path, const TagLexicon *lexicon = nullptr);

// 4 tab-separated columns (surface, lemma, upos, xpos); blank line between
// sentences; lines starting with '#' are ignored.
Corpus parse_annotated(std::istream &in, const std::string &source = "input");
Corpus parse_annotated_file(const std::string &path);
std::string emit_annotated(std::span<const AnnotatedSentence> corpus);

enum class CorpusFormat { kRaw, kAnnotated };
CorpusFormat parse_format(std::string_view name);
Corpus read_corpus_file(const std::string &path, CorpusFormat format,
                        const TagLexicon *lexicon = nullptr);

// Copy with every surface lowercased (lemmas untouched).
Corpus lowercase_surfaces(std::span<const AnnotatedSentence> corpus);

enum class SplitTag { kTrain, kTest, kValidation };
std::string_view split_name(SplitTag tag);

// Fractions in train/test/validation order.
struct SplitRatios {
  double train = 0.7;
  double test = 0.1;
  double validation = 0.2;
};
SplitRatios parse_ratios(std::string_view csv);

struct LabeledCorpus {
  Label label = Label::kHT;
  Corpus sentences;
  std::vector<SplitTag> split;  // parallel to `sentences`; empty if unsplit

  Corpus subset(SplitTag tag) const;
  std::vector<std::size_t> indices(SplitTag tag) const;
};

// Sentence counts per split for a corpus of `n` sentences.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios &ratios);

// Seeded Fisher-Yates permutation, then contiguous assignment of
// train, test and validation blocks.
LabeledCorpus split(LabeledCorpus corpus, const SplitRatios &ratios,
                    std::uint64_t seed);

// JSON: {"seed", "ratios", "train", "test", "validation"} with ascending
// sentence indices.
std::string split_manifest_json(const LabeledCorpus &corpus,
                                const SplitRatios &ratios, std::uint64_t seed);

}  // namespace mtht

#endif  // MTHT_CORPUS_H_
