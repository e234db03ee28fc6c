// trigram_lm.h
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
// Trigram language model with interpolated Witten-Bell smoothing.
//
// Every sentence is padded as <s> <s> w1 .. wn </s>. The start marker is
// never predicted: it is absent from the unigram table, N and V. The end
// marker is an ordinary predictable word. Probabilities interpolate down
// the chain trigram -> bigram -> unigram -> uniform over V + 1 outcomes,
// where the extra outcome is the single UNK slot:
//
//   P(w | u v) = l(u v) c(u v w) / c(u v) + (1 - l(u v)) P(w | v)
//   P(w | v)   = l(v) c(v w) / c(v)       + (1 - l(v)) P(w)
//   P(w)       = l1 c(w) / N              + (1 - l1) / (V + 1)
//
// with l(h) = c(h) / (c(h) + T(h)), T(h) the number of distinct words seen
// after history h, l = 0 for unseen histories, and l1 = N / (N + V).

#ifndef MTHT_TRIGRAM_LM_H_
#define MTHT_TRIGRAM_LM_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtht/corpus.h"

namespace mtht {

inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";

struct NgramCount {
  std::vector<std::string> words;
  std::uint64_t count = 0;
};

class TrigramModel {
 public:
  using WordId = std::uint32_t;
  static constexpr WordId kUnknown = 0xffffffffu;

  TrigramModel() = default;

  static TrigramModel train(std::span<const AnnotatedSentence> sentences,
                            Label label);
  static TrigramModel train(std::span<const std::vector<std::string>> sentences,
                            Label label);

  // P(w | u v). Words outside the vocabulary (and <s> as a predicted word)
  // score as UNK.
  double prob(std::string_view w, std::string_view u, std::string_view v) const;
  double prob(WordId w, WordId u, WordId v) const;

  // Base-2 log probability of the padded sentence, end marker included.
  double sentence_logprob(const AnnotatedSentence &sentence) const;
  double sentence_logprob(std::span<const std::string> tokens) const;

  Label label() const { return label_; }
  std::uint64_t total_tokens() const { return total_tokens_; }
  std::size_t vocab_size() const { return vocab_size_; }

  // kUnknown when absent.
  WordId id(std::string_view word) const;
  const std::string &word(WordId id) const { return words_[id]; }
  // Predictable vocabulary (excludes <s>), sorted by byte order.
  std::vector<std::string> vocabulary() const;

  std::uint64_t unigram_count(std::string_view w) const;
  std::uint64_t bigram_count(std::string_view v, std::string_view w) const;
  std::uint64_t trigram_count(std::string_view u, std::string_view v,
                              std::string_view w) const;

  // All stored n-grams of the given order (1..3), sorted by word sequence.
  std::vector<NgramCount> ngrams(int order) const;

  // Interpolation weight of a history; 0 for unseen histories.
  double bigram_lambda(WordId v) const;
  double trigram_lambda(WordId u, WordId v) const;

  // Text model format:
  //   TRIGRAM-WB v1 label=<MT|HT> N=<n> V=<v>
  //   1-GRAMS / 2-GRAMS / 3-GRAMS sections of tab-separated words + count.
  void save(std::ostream &out) const;
  std::string serialize() const;
  static TrigramModel load(std::istream &in, const std::string &source = "model");
  static TrigramModel deserialize(std::string_view text);
  void save_file(const std::string &path) const;
  static TrigramModel load_file(const std::string &path);

 private:
  struct HistoryStats {
    std::uint64_t total = 0;  // c(h): events observed after h
    std::uint64_t types = 0;  // T(h): distinct successors
  };
  struct TrigramKey {
    WordId u, v, w;
    bool operator==(const TrigramKey &) const = default;
  };
  struct TrigramKeyHash {
    std::size_t operator()(const TrigramKey &k) const noexcept;
  };

  WordId intern(std::string_view word);
  void add_sentence(std::span<const std::string> tokens);
  void add_ngram(std::span<const WordId> ids, std::uint64_t count);
  void finalize();
  double unigram_prob(WordId w) const;
  double bigram_prob(WordId w, WordId v) const;

  static std::uint64_t pair_key(WordId a, WordId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  Label label_ = Label::kHT;
  std::unordered_map<std::string, WordId> ids_;
  std::vector<std::string> words_;
  std::vector<std::uint64_t> unigram_;
  std::unordered_map<std::uint64_t, std::uint64_t> bigram_;
  std::unordered_map<TrigramKey, std::uint64_t, TrigramKeyHash> trigram_;
  std::vector<HistoryStats> bigram_history_;
  std::unordered_map<std::uint64_t, HistoryStats> trigram_history_;
  std::uint64_t total_tokens_ = 0;
  std::size_t vocab_size_ = 0;
};

}  // namespace mtht

#endif  // MTHT_TRIGRAM_LM_H_
