// embeddings.h
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
// Static word vectors in the plain text format (token followed by d
// decimals per line, no header) and rank-restricted cosine neighbors.

#ifndef MTHT_EMBEDDINGS_H_
#define MTHT_EMBEDDINGS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mtht/corpus.h"

namespace mtht {

struct Neighbor {
  std::string token;
  double similarity = 0;
  std::size_t rank = 0;  // 0-based position in the file

  bool operator==(const Neighbor &) const = default;
};

class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  // Throws ParseError on ragged rows, duplicate tokens, header lines or an
  // empty file.
  static EmbeddingStore load(std::istream &in, const std::string &source = "embeddings");
  static EmbeddingStore load_file(const std::string &path);
  static EmbeddingStore from_rows(std::vector<std::pair<std::string, std::vector<float>>> rows);

  std::size_t size() const { return tokens_.size(); }
  std::size_t dimension() const { return dimension_; }
  bool contains(std::string_view token) const { return find(token).has_value(); }
  std::optional<std::size_t> find(std::string_view token) const;
  const std::string &token(std::size_t rank) const { return tokens_[rank]; }
  std::span<const float> vector(std::size_t rank) const;
  double norm(std::size_t rank) const { return norms_[rank]; }

  // Cosine similarity of two stored rows (0 if either is the zero vector).
  double cosine(std::size_t a, std::size_t b) const;

  // Top-k neighbors of `query` among ranks [0, restrict_vocab), query
  // excluded, by descending cosine then ascending rank. restrict_vocab = 0
  // means the whole store. Throws NotInVocabulary for unknown queries and
  // std::invalid_argument if k = 0 or restrict_vocab > size().
  std::vector<Neighbor> most_similar(std::string_view query, std::size_t k,
                                     std::size_t restrict_vocab = 0) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;  // row-major, size() * dimension()
  std::vector<double> norms_;
  std::size_t dimension_ = 0;
};

// Sets Token::in_embed_vocab (surface or lemma present in the store).
Corpus mark_embedding_vocab(std::span<const AnnotatedSentence> corpus,
                            const EmbeddingStore &store);

}  // namespace mtht

#endif  // MTHT_EMBEDDINGS_H_
