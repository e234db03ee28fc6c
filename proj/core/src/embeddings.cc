// embeddings.cc
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
#include "mtht/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "mtht/error.h"
#include "mtht/text.h"

namespace mtht {

namespace {

bool is_integer(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

double row_norm(std::span<const float> v) {
  double s = 0;
  for (float x : v) s += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(s);
}

}  // namespace

EmbeddingStore EmbeddingStore::load(std::istream &in, const std::string &source) {
  EmbeddingStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (store.tokens_.empty() && fields.size() == 2 && is_integer(fields[0]) &&
        is_integer(fields[1])) {
      throw ParseError(source, lineno,
                       "looks like a word2vec '<count> <dim>' header; strip the first line");
    }
    if (fields.size() < 2) throw ParseError(source, lineno, "expected a token followed by numbers");
    const std::size_t d = fields.size() - 1;
    if (store.dimension_ == 0) {
      store.dimension_ = d;
    } else if (d != store.dimension_) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(store.dimension_) + " values, got " +
                           std::to_string(d));
    }
    std::string token(fields[0]);
    if (store.index_.count(token)) {
      throw ParseError(source, lineno, "duplicate token '" + token + "'");
    }
    for (std::size_t k = 1; k < fields.size(); ++k) {
      float x = 0;
      auto [ptr, ec] = std::from_chars(fields[k].data(), fields[k].data() + fields[k].size(), x);
      if (ec != std::errc() || ptr != fields[k].data() + fields[k].size()) {
        throw ParseError(source, lineno, "bad number '" + std::string(fields[k]) + "'");
      }
      store.data_.push_back(x);
    }
    store.index_.emplace(token, store.tokens_.size());
    store.tokens_.push_back(std::move(token));
  }
  if (store.tokens_.empty()) throw ParseError(source, 0, "no vectors");
  store.norms_.reserve(store.tokens_.size());
  for (std::size_t r = 0; r < store.tokens_.size(); ++r) store.norms_.push_back(row_norm(store.vector(r)));
  return store;
}

EmbeddingStore EmbeddingStore::load_file(const std::string &path) {
  auto in = open_input(path);
  return load(in, path);
}

EmbeddingStore EmbeddingStore::from_rows(
    std::vector<std::pair<std::string, std::vector<float>>> rows) {
  EmbeddingStore store;
  for (auto &[token, v] : rows) {
    if (v.empty()) throw Error("empty vector for '" + token + "'");
    if (store.dimension_ == 0) store.dimension_ = v.size();
    if (v.size() != store.dimension_) throw Error("ragged vector for '" + token + "'");
    if (!store.index_.emplace(token, store.tokens_.size()).second) {
      throw Error("duplicate token '" + token + "'");
    }
    store.data_.insert(store.data_.end(), v.begin(), v.end());
    store.tokens_.push_back(std::move(token));
  }
  for (std::size_t r = 0; r < store.tokens_.size(); ++r) store.norms_.push_back(row_norm(store.vector(r)));
  return store;
}

std::optional<std::size_t> EmbeddingStore::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingStore::vector(std::size_t rank) const {
  return {data_.data() + rank * dimension_, dimension_};
}

double EmbeddingStore::cosine(std::size_t a, std::size_t b) const {
  if (norms_[a] == 0 || norms_[b] == 0) return 0.0;
  auto x = vector(a), y = vector(b);
  double dot = 0;
  for (std::size_t k = 0; k < dimension_; ++k) dot += static_cast<double>(x[k]) * static_cast<double>(y[k]);
  return dot / (norms_[a] * norms_[b]);
}

std::vector<Neighbor> EmbeddingStore::most_similar(std::string_view query, std::size_t k,
                                                   std::size_t restrict_vocab) const {
  if (k == 0) throw std::invalid_argument("most_similar: k must be at least 1");
  if (restrict_vocab > size()) {
    throw std::invalid_argument("most_similar: restrict_vocab exceeds the store size");
  }
  const auto q = find(query);
  if (!q) throw NotInVocabulary(std::string(query));
  const std::size_t limit = restrict_vocab == 0 ? size() : restrict_vocab;

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(limit);
  for (std::size_t r = 0; r < limit; ++r) {
    if (r != *q) scored.emplace_back(cosine(*q, r), r);
  }
  auto better = [](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  std::vector<Neighbor> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({tokens_[scored[i].second], scored[i].first, scored[i].second});
  }
  return out;
}

Corpus mark_embedding_vocab(std::span<const AnnotatedSentence> corpus, const EmbeddingStore &store) {
  Corpus out(corpus.begin(), corpus.end());
  for (auto &s : out) {
    for (auto &t : s.tokens) t.in_embed_vocab = store.contains(t.surface) || store.contains(t.lemma);
  }
  return out;
}

}  // namespace mtht
