// trigram_lm.cc
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
#include "mtht/trigram_lm.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "mtht/error.h"
#include "mtht/text.h"

namespace mtht {

namespace {

constexpr TrigramModel::WordId kStartId = 0;
constexpr TrigramModel::WordId kEndId = 1;
constexpr std::string_view kHeaderMagic = "TRIGRAM-WB";
constexpr std::string_view kSectionNames[] = {"1-GRAMS", "2-GRAMS", "3-GRAMS"};

std::uint64_t parse_count(std::string_view text, const std::string &source, std::size_t lineno) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(source, lineno, "bad count '" + std::string(text) + "'");
  }
  return v;
}

std::string_view header_field(std::string_view field, std::string_view key,
                              const std::string &source) {
  if (field.substr(0, key.size()) != key) {
    throw ParseError(source, 1, "expected " + std::string(key) + "... in header");
  }
  return field.substr(key.size());
}

}  // namespace

std::size_t TrigramModel::TrigramKeyHash::operator()(const TrigramKey &k) const noexcept {
  std::uint64_t h = (static_cast<std::uint64_t>(k.u) << 32) ^ k.v;
  h ^= (static_cast<std::uint64_t>(k.w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  h *= 0xbf58476d1ce4e5b9ULL;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

TrigramModel::WordId TrigramModel::intern(std::string_view word) {
  auto it = ids_.find(std::string(word));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<WordId>(words_.size());
  if (id == kUnknown) throw Error("vocabulary overflow");
  words_.emplace_back(word);
  ids_.emplace(words_.back(), id);
  unigram_.push_back(0);
  return id;
}

TrigramModel::WordId TrigramModel::id(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  return it == ids_.end() ? kUnknown : it->second;
}

void TrigramModel::add_sentence(std::span<const std::string> tokens) {
  if (tokens.empty()) throw Error("cannot train on an empty sentence");
  std::vector<WordId> ids;
  ids.reserve(tokens.size() + 3);
  ids.push_back(kStartId);
  ids.push_back(kStartId);
  for (const auto &t : tokens) {
    if (t == kSentenceStart || t == kSentenceEnd) {
      throw Error("reserved token '" + t + "' in training data");
    }
    ids.push_back(intern(t));
  }
  ids.push_back(kEndId);
  for (std::size_t i = 2; i < ids.size(); ++i) {
    const WordId u = ids[i - 2], v = ids[i - 1], w = ids[i];
    ++unigram_[w];
    ++bigram_[pair_key(v, w)];
    ++trigram_[TrigramKey{u, v, w}];
  }
}

void TrigramModel::add_ngram(std::span<const WordId> ids, std::uint64_t count) {
  switch (ids.size()) {
    case 1: unigram_[ids[0]] += count; break;
    case 2: bigram_[pair_key(ids[0], ids[1])] += count; break;
    case 3: trigram_[TrigramKey{ids[0], ids[1], ids[2]}] += count; break;
    default: break;
  }
}

void TrigramModel::finalize() {
  bigram_history_.assign(words_.size(), HistoryStats{});
  for (const auto &[key, c] : bigram_) {
    auto &h = bigram_history_[key >> 32];
    h.total += c;
    ++h.types;
  }
  trigram_history_.clear();
  for (const auto &[key, c] : trigram_) {
    auto &h = trigram_history_[pair_key(key.u, key.v)];
    h.total += c;
    ++h.types;
  }
  total_tokens_ = 0;
  vocab_size_ = 0;
  for (WordId i = 0; i < unigram_.size(); ++i) {
    if (i == kStartId || unigram_[i] == 0) continue;
    total_tokens_ += unigram_[i];
    ++vocab_size_;
  }
}

TrigramModel TrigramModel::train(std::span<const std::vector<std::string>> sentences,
                                 Label label) {
  if (sentences.empty()) throw Error("cannot train a language model on an empty corpus");
  TrigramModel m;
  m.label_ = label;
  m.intern(kSentenceStart);
  m.intern(kSentenceEnd);
  for (const auto &s : sentences) m.add_sentence(s);
  m.finalize();
  return m;
}

TrigramModel TrigramModel::train(std::span<const AnnotatedSentence> sentences, Label label) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(sentences.size());
  for (const auto &s : sentences) tokens.push_back(s.surfaces());
  return train(tokens, label);
}

double TrigramModel::unigram_prob(WordId w) const {
  const double n = static_cast<double>(total_tokens_);
  const double v = static_cast<double>(vocab_size_);
  const double lambda = n / (n + v);
  const std::uint64_t c = (w == kUnknown || w >= unigram_.size()) ? 0 : unigram_[w];
  const double uniform = 1.0 / (v + 1.0);
  if (c == 0) return (1.0 - lambda) * uniform;
  return lambda * static_cast<double>(c) / n + (1.0 - lambda) * uniform;
}

double TrigramModel::bigram_lambda(WordId v) const {
  if (v == kUnknown || v >= bigram_history_.size()) return 0.0;
  const auto &h = bigram_history_[v];
  if (h.total == 0) return 0.0;
  return static_cast<double>(h.total) / static_cast<double>(h.total + h.types);
}

double TrigramModel::trigram_lambda(WordId u, WordId v) const {
  if (u == kUnknown || v == kUnknown) return 0.0;
  auto it = trigram_history_.find(pair_key(u, v));
  if (it == trigram_history_.end() || it->second.total == 0) return 0.0;
  return static_cast<double>(it->second.total) /
         static_cast<double>(it->second.total + it->second.types);
}

double TrigramModel::bigram_prob(WordId w, WordId v) const {
  const double lower = unigram_prob(w);
  if (v == kUnknown || v >= bigram_history_.size() || bigram_history_[v].total == 0) {
    return lower;
  }
  const auto &h = bigram_history_[v];
  const double lambda = bigram_lambda(v);
  double ml = 0.0;
  if (w != kUnknown) {
    if (auto it = bigram_.find(pair_key(v, w)); it != bigram_.end()) {
      ml = static_cast<double>(it->second) / static_cast<double>(h.total);
    }
  }
  return lambda * ml + (1.0 - lambda) * lower;
}

double TrigramModel::prob(WordId w, WordId u, WordId v) const {
  const double lower = bigram_prob(w, v);
  if (u == kUnknown || v == kUnknown) return lower;
  auto hit = trigram_history_.find(pair_key(u, v));
  if (hit == trigram_history_.end() || hit->second.total == 0) return lower;
  const double lambda = trigram_lambda(u, v);
  double ml = 0.0;
  if (w != kUnknown) {
    if (auto it = trigram_.find(TrigramKey{u, v, w}); it != trigram_.end()) {
      ml = static_cast<double>(it->second) / static_cast<double>(hit->second.total);
    }
  }
  return lambda * ml + (1.0 - lambda) * lower;
}

double TrigramModel::prob(std::string_view w, std::string_view u, std::string_view v) const {
  return prob(id(w), id(u), id(v));
}

double TrigramModel::sentence_logprob(std::span<const std::string> tokens) const {
  if (tokens.empty()) throw Error("cannot score an empty sentence");
  double total = 0.0;
  WordId u = kStartId, v = kStartId;
  for (const auto &t : tokens) {
    const WordId w = id(t);
    total += std::log2(prob(w, u, v));
    u = v;
    v = w;
  }
  total += std::log2(prob(kEndId, u, v));
  return total;
}

double TrigramModel::sentence_logprob(const AnnotatedSentence &sentence) const {
  return sentence_logprob(sentence.surfaces());
}

std::vector<std::string> TrigramModel::vocabulary() const {
  std::vector<std::string> out;
  for (WordId i = 0; i < unigram_.size(); ++i) {
    if (i != kStartId && unigram_[i] > 0) out.push_back(words_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t TrigramModel::unigram_count(std::string_view w) const {
  const WordId i = id(w);
  return i == kUnknown ? 0 : unigram_[i];
}

std::uint64_t TrigramModel::bigram_count(std::string_view v, std::string_view w) const {
  const WordId a = id(v), b = id(w);
  if (a == kUnknown || b == kUnknown) return 0;
  auto it = bigram_.find(pair_key(a, b));
  return it == bigram_.end() ? 0 : it->second;
}

std::uint64_t TrigramModel::trigram_count(std::string_view u, std::string_view v,
                                          std::string_view w) const {
  const WordId a = id(u), b = id(v), c = id(w);
  if (a == kUnknown || b == kUnknown || c == kUnknown) return 0;
  auto it = trigram_.find(TrigramKey{a, b, c});
  return it == trigram_.end() ? 0 : it->second;
}

std::vector<NgramCount> TrigramModel::ngrams(int order) const {
  std::vector<NgramCount> out;
  switch (order) {
    case 1:
      for (WordId i = 0; i < unigram_.size(); ++i) {
        if (unigram_[i] > 0) out.push_back({{words_[i]}, unigram_[i]});
      }
      break;
    case 2:
      out.reserve(bigram_.size());
      for (const auto &[key, c] : bigram_) {
        out.push_back({{words_[key >> 32], words_[key & 0xffffffffu]}, c});
      }
      break;
    case 3:
      out.reserve(trigram_.size());
      for (const auto &[key, c] : trigram_) {
        out.push_back({{words_[key.u], words_[key.v], words_[key.w]}, c});
      }
      break;
    default:
      throw std::invalid_argument("n-gram order must be 1, 2 or 3");
  }
  std::sort(out.begin(), out.end(),
            [](const NgramCount &a, const NgramCount &b) { return a.words < b.words; });
  return out;
}

void TrigramModel::save(std::ostream &out) const {
  out << kHeaderMagic << " v1 label=" << label_name(label_) << " N=" << total_tokens_
      << " V=" << vocab_size_ << '\n';
  for (int order = 1; order <= 3; ++order) {
    out << kSectionNames[order - 1] << '\n';
    for (const auto &g : ngrams(order)) {
      for (const auto &w : g.words) out << w << '\t';
      out << g.count << '\n';
    }
  }
}

std::string TrigramModel::serialize() const {
  std::ostringstream ss;
  save(ss);
  return ss.str();
}

TrigramModel TrigramModel::load(std::istream &in, const std::string &source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty model file");
  auto header = split_fields(line, ' ');
  if (header.size() != 5 || header[0] != kHeaderMagic) {
    throw ParseError(source, 1, "not a TRIGRAM-WB model");
  }
  if (header[1] != "v1") {
    throw ParseError(source, 1, "unsupported model version '" + std::string(header[1]) + "'");
  }
  TrigramModel m;
  try {
    m.label_ = parse_label(header_field(header[2], "label=", source));
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    throw ParseError(source, 1, e.what());
  }
  const std::uint64_t n = parse_count(header_field(header[3], "N=", source), source, 1);
  const std::uint64_t v = parse_count(header_field(header[4], "V=", source), source, 1);

  m.intern(kSentenceStart);
  m.intern(kSentenceEnd);
  int order = 0;
  std::size_t lineno = 1;
  std::vector<WordId> ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (order < 3 && line == kSectionNames[order]) {
      ++order;
      continue;
    }
    if (order == 0) throw ParseError(source, lineno, "expected section 1-GRAMS");
    auto f = split_fields(line, '\t');
    if (f.size() != static_cast<std::size_t>(order) + 1) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(order) + " words and a count");
    }
    const std::uint64_t c = parse_count(f.back(), source, lineno);
    if (c == 0) throw ParseError(source, lineno, "zero count");
    ids.clear();
    for (int k = 0; k < order; ++k) {
      if (f[k].empty()) throw ParseError(source, lineno, "empty word");
      ids.push_back(m.intern(f[k]));
    }
    const bool duplicate =
        (order == 1 && m.unigram_[ids[0]] != 0) ||
        (order == 2 && m.bigram_.count(pair_key(ids[0], ids[1]))) ||
        (order == 3 && m.trigram_.count(TrigramKey{ids[0], ids[1], ids[2]}));
    if (duplicate) throw ParseError(source, lineno, "duplicate n-gram");
    if (order == 1 && ids[0] == kStartId) {
      throw ParseError(source, lineno, "start marker cannot be a unigram event");
    }
    m.add_ngram(ids, c);
  }
  if (order != 3) throw ParseError(source, lineno, "missing n-gram sections");
  m.finalize();
  if (m.total_tokens_ != n || m.vocab_size_ != v) {
    throw ParseError(source, 1, "header N/V do not match the unigram table");
  }
  return m;
}

TrigramModel TrigramModel::deserialize(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return load(ss);
}

void TrigramModel::save_file(const std::string &path) const { write_file(path, serialize()); }

TrigramModel TrigramModel::load_file(const std::string &path) {
  auto in = open_input(path);
  return load(in, path);
}

}  // namespace mtht
