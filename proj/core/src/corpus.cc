// corpus.cc
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
#include "mtht/corpus.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "mtht/error.h"
#include "mtht/text.h"

namespace mtht {

namespace {

constexpr std::string_view kSpelledNumbers[] = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen", "twenty", "thirty",
    "forty", "fifty", "sixty", "seventy", "eighty", "ninety", "hundred",
    "thousand", "million", "billion", "trillion",
    "zeroth", "first", "second", "third", "fourth", "fifth", "sixth",
    "seventh", "eighth", "ninth", "tenth", "eleventh", "twelfth",
    "thirteenth", "fourteenth", "fifteenth", "sixteenth", "seventeenth",
    "eighteenth", "nineteenth", "twentieth", "thirtieth", "fortieth",
    "fiftieth", "sixtieth", "seventieth", "eightieth", "ninetieth",
    "hundredth", "thousandth", "millionth", "billionth", "trillionth"};

// Multi-byte punctuation split off like ASCII marks. The right single
// quotation mark doubles as an apostrophe inside words.
constexpr std::string_view kUtf8Punct[] = {
    "\xe2\x80\x98", "\xe2\x80\x99", "\xe2\x80\x9c", "\xe2\x80\x9d",  // curly quotes
    "\xe2\x80\x93", "\xe2\x80\x94", "\xe2\x80\xa6",                    // dashes, ellipsis
    "\xc2\xab", "\xc2\xbb", "\xc2\xbf", "\xc2\xa1"};                   // guillemets, inverted marks
constexpr std::string_view kCurlyApostrophe = "\xe2\x80\x99";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c);
}

bool is_spelled_number(std::string_view lower) {
  return std::find(std::begin(kSpelledNumbers), std::end(kSpelledNumbers), lower) !=
         std::end(kSpelledNumbers);
}

bool is_digit_pattern(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty() || s.front() == ',' || s.back() == ',' || s.back() == '.') return false;
  bool digit = false, point = false;
  for (char c : s) {
    if (is_digit(c)) {
      digit = true;
    } else if (c == '.') {
      if (point) return false;
      point = true;
    } else if (c == ',') {
      if (point) return false;
    } else {
      return false;
    }
  }
  return digit;
}

std::string_view utf8_punct_at(std::string_view chunk, std::size_t i) {
  if (static_cast<unsigned char>(chunk[i]) < 0x80) return {};
  for (std::string_view p : kUtf8Punct) {
    if (chunk.substr(i, p.size()) == p) return p;
  }
  return {};
}

Token make_token(std::string surface) {
  Token t;
  t.lemma = ascii_lower(surface);
  t.is_numlike = is_numlike(surface);
  t.surface = std::move(surface);
  return t;
}

void tokenize_chunk(std::string_view chunk, std::vector<Token> &out) {
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(make_token(std::move(cur)));
    cur.clear();
  };
  for (std::size_t i = 0; i < chunk.size();) {
    const char c = chunk[i];
    const bool has_next = i + 1 < chunk.size();
    const bool next_word = has_next && is_word_byte(chunk[i + 1]);
    const bool next_digit = has_next && is_digit(chunk[i + 1]);
    const char prev = cur.empty() ? '\0' : cur.back();

    std::string_view mb = utf8_punct_at(chunk, i);
    if (!mb.empty()) {
      const std::size_t after = i + mb.size();
      if (mb == kCurlyApostrophe && !cur.empty() && after < chunk.size() &&
          is_word_byte(chunk[after]) && utf8_punct_at(chunk, after).empty()) {
        cur.append(mb);
      } else {
        flush();
        out.push_back(make_token(std::string(mb)));
      }
      i = after;
      continue;
    }
    if (is_word_byte(c)) {
      cur.push_back(c);
    } else if ((c == '-' || c == '\'') && !cur.empty() && is_word_byte(prev) && next_word) {
      cur.push_back(c);
    } else if ((c == '.' || c == ',') && is_digit(prev) && next_digit) {
      cur.push_back(c);
    } else if ((c == '+' || c == '-' || c == '.') && cur.empty() && next_digit) {
      cur.push_back(c);
    } else {
      flush();
      out.push_back(make_token(std::string(1, c)));
    }
    ++i;
  }
  flush();
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string_view label_name(Label label) { return label == Label::kMT ? "MT" : "HT"; }

Label parse_label(std::string_view name) {
  if (name == "MT" || name == "mt") return Label::kMT;
  if (name == "HT" || name == "ht") return Label::kHT;
  throw Error("unknown label '" + std::string(name) + "' (expected MT or HT)");
}

std::vector<std::string> AnnotatedSentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) out.push_back(t.surface);
  return out;
}

bool is_numlike(std::string_view surface) {
  if (is_digit_pattern(surface)) return true;
  const std::string lower = ascii_lower(surface);
  if (is_spelled_number(lower)) return true;
  if (lower.find('-') == std::string::npos) return false;
  for (std::string_view part : split_fields(lower, '-')) {
    if (part.empty() || !is_spelled_number(part)) return false;
  }
  return true;
}

std::optional<AnnotatedSentence> tokenize(std::string_view line, std::string source_id) {
  AnnotatedSentence sentence;
  for (std::string_view chunk : split_whitespace(line)) tokenize_chunk(chunk, sentence.tokens);
  if (sentence.tokens.empty()) return std::nullopt;
  sentence.source_id = std::move(source_id);
  return sentence;
}

TagLexicon TagLexicon::build(std::span<const AnnotatedSentence> corpus) {
  std::map<std::string, std::map<std::pair<std::string, std::string>, std::uint64_t>> tally;
  for (const auto &s : corpus) {
    for (const auto &t : s.tokens) ++tally[ascii_lower(t.surface)][{t.upos, t.xpos}];
  }
  TagLexicon lex;
  for (auto &[word, tags] : tally) {
    // std::map iteration is ascending, so the first maximum is the
    // lexicographically smallest tag pair.
    auto best = tags.begin();
    for (auto it = tags.begin(); it != tags.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    lex.entries_.emplace(word, Entry{best->first.first, best->first.second, best->second});
  }
  return lex;
}

TagLexicon TagLexicon::load(std::istream &in, const std::string &source) {
  TagLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(std::move(line));
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split_fields(line, '\t');
    if (f.size() != 3 && f.size() != 4) {
      throw ParseError(source, lineno, "expected word, upos, xpos[, count]");
    }
    Entry e{std::string(f[1]), std::string(f[2]), 1};
    if (f.size() == 4) {
      try {
        e.count = std::stoull(std::string(f[3]));
      } catch (const std::exception &) {
        throw ParseError(source, lineno, "bad count '" + std::string(f[3]) + "'");
      }
    }
    if (!lex.entries_.emplace(std::string(f[0]), std::move(e)).second) {
      throw ParseError(source, lineno, "duplicate word '" + std::string(f[0]) + "'");
    }
  }
  return lex;
}

TagLexicon TagLexicon::load_file(const std::string &path) {
  auto in = open_input(path);
  return load(in, path);
}

void TagLexicon::save(std::ostream &out) const {
  for (const auto &[word, e] : entries_) {
    out << word << '\t' << e.upos << '\t' << e.xpos << '\t' << e.count << '\n';
  }
}

const TagLexicon::Entry *TagLexicon::find(std::string_view word) const {
  if (auto it = entries_.find(word); it != entries_.end()) return &it->second;
  if (auto it = entries_.find(ascii_lower(word)); it != entries_.end()) return &it->second;
  return nullptr;
}

Corpus read_raw(std::istream &in, const TagLexicon *lexicon) {
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto sentence = tokenize(line, std::to_string(lineno));
    if (!sentence) continue;
    if (lexicon) {
      for (auto &t : sentence->tokens) {
        if (const auto *e = lexicon->find(t.surface)) {
          t.upos = e->upos;
          t.xpos = e->xpos;
        }
      }
    }
    corpus.push_back(std::move(*sentence));
  }
  return corpus;
}

Corpus read_raw_file(const std::string &path, const TagLexicon *lexicon) {
  auto in = open_input(path);
  return read_raw(in, lexicon);
}

Corpus parse_annotated(std::istream &in, const std::string &source) {
  Corpus corpus;
  AnnotatedSentence current;
  std::string line;
  std::size_t lineno = 0;
  auto close = [&] {
    if (!current.tokens.empty()) corpus.push_back(std::move(current));
    current = AnnotatedSentence{};
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(std::move(line));
    if (!line.empty() && line.front() == '#') continue;
    if (trim(line).empty()) {
      close();
      continue;
    }
    auto f = split_fields(line, '\t');
    if (f.size() != 4) {
      throw ParseError(source, lineno,
                       "expected 4 tab-separated columns, got " + std::to_string(f.size()));
    }
    if (f[0].empty()) throw ParseError(source, lineno, "empty surface form");
    if (current.tokens.empty()) current.source_id = std::to_string(lineno);
    Token t;
    t.surface = std::string(f[0]);
    t.lemma = f[1].empty() ? ascii_lower(f[0]) : std::string(f[1]);
    t.upos = std::string(f[2]);
    t.xpos = std::string(f[3]);
    t.is_numlike = is_numlike(t.surface);
    current.tokens.push_back(std::move(t));
  }
  close();
  if (corpus.empty()) throw ParseError(source, 0, "no sentences");
  return corpus;
}

Corpus parse_annotated_file(const std::string &path) {
  auto in = open_input(path);
  return parse_annotated(in, path);
}

std::string emit_annotated(std::span<const AnnotatedSentence> corpus) {
  std::string out;
  for (const auto &s : corpus) {
    for (const auto &t : s.tokens) {
      out.append(t.surface).push_back('\t');
      out.append(t.lemma).push_back('\t');
      out.append(t.upos).push_back('\t');
      out.append(t.xpos).push_back('\n');
    }
    out.push_back('\n');
  }
  return out;
}

CorpusFormat parse_format(std::string_view name) {
  if (name == "raw") return CorpusFormat::kRaw;
  if (name == "annotated" || name == "tsv") return CorpusFormat::kAnnotated;
  throw Error("unknown corpus format '" + std::string(name) + "' (expected raw or annotated)");
}

Corpus read_corpus_file(const std::string &path, CorpusFormat format,
                        const TagLexicon *lexicon) {
  if (format == CorpusFormat::kAnnotated) return parse_annotated_file(path);
  Corpus corpus = read_raw_file(path, lexicon);
  if (corpus.empty()) throw ParseError(path, 0, "no sentences");
  return corpus;
}

Corpus lowercase_surfaces(std::span<const AnnotatedSentence> corpus) {
  Corpus out(corpus.begin(), corpus.end());
  for (auto &s : out) {
    for (auto &t : s.tokens) t.surface = ascii_lower(t.surface);
  }
  return out;
}

std::string_view split_name(SplitTag tag) {
  switch (tag) {
    case SplitTag::kTrain: return "train";
    case SplitTag::kTest: return "test";
    case SplitTag::kValidation: return "validation";
  }
  return "?";
}

SplitRatios parse_ratios(std::string_view csv) {
  auto f = split_fields(csv, ',');
  if (f.size() != 3) throw Error("ratios must be train,test,validation: '" + std::string(csv) + "'");
  double v[3];
  for (int i = 0; i < 3; ++i) {
    try {
      std::size_t used = 0;
      std::string field(trim(f[i]));
      v[i] = std::stod(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception &) {
      throw Error("bad ratio '" + std::string(f[i]) + "'");
    }
  }
  const SplitRatios r{v[0], v[1], v[2]};
  split_sizes(0, r);  // validates
  return r;
}

Corpus LabeledCorpus::subset(SplitTag tag) const {
  Corpus out;
  for (std::size_t i = 0; i < sentences.size() && i < split.size(); ++i) {
    if (split[i] == tag) out.push_back(sentences[i]);
  }
  return out;
}

std::vector<std::size_t> LabeledCorpus::indices(SplitTag tag) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (split[i] == tag) out.push_back(i);
  }
  return out;
}

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios &r) {
  if (!(r.train > 0 && r.test > 0 && r.validation > 0) ||
      std::abs(r.train + r.test + r.validation - 1.0) > 1e-9) {
    throw Error("split ratios must be positive and sum to 1");
  }
  auto n_train = static_cast<std::size_t>(std::llround(r.train * static_cast<double>(n)));
  auto n_test = static_cast<std::size_t>(std::llround(r.test * static_cast<double>(n)));
  n_train = std::min(n_train, n);
  n_test = std::min(n_test, n - n_train);
  return {n_train, n_test, n - n_train - n_test};
}

LabeledCorpus split(LabeledCorpus corpus, const SplitRatios &ratios, std::uint64_t seed) {
  const std::size_t n = corpus.sentences.size();
  if (n < 3) throw Error("cannot split fewer than 3 sentences");
  const auto sizes = split_sizes(n, ratios);

  const std::vector<std::size_t> order = seeded_permutation(n, seed);

  corpus.split.assign(n, SplitTag::kValidation);
  for (std::size_t k = 0; k < n; ++k) {
    SplitTag tag = k < sizes[0]              ? SplitTag::kTrain
                   : k < sizes[0] + sizes[1] ? SplitTag::kTest
                                             : SplitTag::kValidation;
    corpus.split[order[k]] = tag;
  }
  return corpus;
}

std::string split_manifest_json(const LabeledCorpus &corpus, const SplitRatios &ratios,
                                std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["ratios"] = {ratios.train, ratios.test, ratios.validation};
  j["train"] = corpus.indices(SplitTag::kTrain);
  j["test"] = corpus.indices(SplitTag::kTest);
  j["validation"] = corpus.indices(SplitTag::kValidation);
  return j.dump() + "\n";
}

}  // namespace mtht
