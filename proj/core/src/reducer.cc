// reducer.cc
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
#include "mtht/reducer.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "mtht/error.h"
#include "mtht/text.h"
#include "parallel.h"

namespace mtht {

namespace {

constexpr std::string_view kSkip = "SKIP";

std::size_t parse_index(std::string_view s, const std::string &source, std::size_t lineno) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(source, lineno, "bad index '" + std::string(s) + "'");
  }
  return v;
}

Replacement plan_token(const Token &t, std::size_t si, std::size_t ti,
                       const EmbeddingStore &store, const TagLexicon &lexicon,
                       const ReducerConfig &cfg) {
  Replacement r{si, ti, t.surface, t.lemma, t.xpos, {}, {}};
  if (t.is_numlike) {
    r.reason = "numlike";
    return r;
  }
  std::string_view query;
  if (store.contains(t.surface)) {
    query = t.surface;
  } else if (store.contains(t.lemma)) {
    query = t.lemma;
  } else {
    r.reason = "oov";
    return r;
  }
  const auto neighbors =
      store.most_similar(query, cfg.top_k, std::min(cfg.restrict_vocab, store.size()));
  if (neighbors.empty()) {
    r.reason = "no-candidates";
    return r;
  }
  for (const auto &n : neighbors) {
    const auto *entry = lexicon.find(n.token);
    if (entry && entry->xpos == t.xpos) {
      r.substitute = n.token;
      r.reason = "replaced";
      return r;
    }
  }
  r.reason = "no-tag-match";
  return r;
}

}  // namespace

LemmaCounts lemma_frequencies(std::span<const AnnotatedSentence> corpus) {
  LemmaCounts counts;
  for (const auto &s : corpus) {
    for (const auto &t : s.tokens) {
      if (t.is_numlike || !t.in_embed_vocab) continue;
      ++counts[t.lemma];
    }
  }
  return counts;
}

std::set<std::string, std::less<>> find_rare(const LemmaCounts &freqs, const ReducerConfig &cfg) {
  if (cfg.freq_threshold < 1) throw Error("freq_threshold must be at least 1");
  std::set<std::string, std::less<>> rare;
  for (const auto &[lemma, c] : freqs) {
    if (c < cfg.freq_threshold) rare.insert(lemma);
  }
  return rare;
}

std::size_t ReplacementPlan::replaced() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const Replacement &r) { return !r.skipped(); }));
}

void ReplacementPlan::save(std::ostream &out) const {
  out << "# sent_idx\ttok_idx\toriginal\tlemma\txpos\tsubstitute\treason\n";
  for (const auto &r : entries) {
    out << r.sentence << '\t' << r.token << '\t' << r.original << '\t' << r.lemma << '\t'
        << r.xpos << '\t' << (r.skipped() ? kSkip : std::string_view(r.substitute)) << '\t'
        << r.reason << '\n';
  }
}

ReplacementPlan ReplacementPlan::load(std::istream &in, const std::string &source) {
  ReplacementPlan plan;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto f = split_fields(line, '\t');
    if (f.size() != 7) throw ParseError(source, lineno, "expected 7 tab-separated columns");
    Replacement r;
    r.sentence = parse_index(f[0], source, lineno);
    r.token = parse_index(f[1], source, lineno);
    r.original = f[2];
    r.lemma = f[3];
    r.xpos = f[4];
    if (f[5] != kSkip) r.substitute = f[5];
    r.reason = f[6];
    plan.entries.push_back(std::move(r));
  }
  return plan;
}

ReplacementPlan plan_replacements(std::span<const AnnotatedSentence> corpus,
                                  const std::set<std::string, std::less<>> &rare,
                                  const EmbeddingStore &store, const TagLexicon &lexicon,
                                  const ReducerConfig &cfg, unsigned workers) {
  if (cfg.top_k < 1) throw Error("top_k must be at least 1");
  std::vector<std::vector<Replacement>> per_sentence(corpus.size());
  internal::parallel_for(corpus.size(), workers, [&](std::size_t si) {
    const auto &tokens = corpus[si].tokens;
    for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
      if (rare.count(tokens[ti].lemma)) {
        per_sentence[si].push_back(plan_token(tokens[ti], si, ti, store, lexicon, cfg));
      }
    }
  });
  ReplacementPlan plan;
  for (auto &entries : per_sentence) {
    std::move(entries.begin(), entries.end(), std::back_inserter(plan.entries));
  }
  return plan;
}

Corpus apply_plan(std::span<const AnnotatedSentence> corpus, const ReplacementPlan &plan) {
  Corpus out(corpus.begin(), corpus.end());
  const Replacement *prev = nullptr;
  for (const auto &r : plan.entries) {
    if (prev && std::pair(prev->sentence, prev->token) >= std::pair(r.sentence, r.token)) {
      throw Error("plan entries must be unique and ordered by position");
    }
    prev = &r;
    if (r.sentence >= out.size() || r.token >= out[r.sentence].tokens.size()) {
      throw Error("stale plan: position " + std::to_string(r.sentence) + ":" +
                  std::to_string(r.token) + " is out of range");
    }
    Token &t = out[r.sentence].tokens[r.token];
    if (t.surface != r.original) {
      throw Error("stale plan: expected '" + r.original + "' at " + std::to_string(r.sentence) +
                  ":" + std::to_string(r.token) + ", found '" + t.surface + "'");
    }
    if (r.skipped()) continue;
    t.surface = r.substitute;
    t.lemma = ascii_lower(r.substitute);
    t.is_numlike = is_numlike(t.surface);
    t.in_embed_vocab = true;
  }
  return out;
}

Reduction reduce_diversity(std::span<const AnnotatedSentence> corpus, const EmbeddingStore &store,
                           const TagLexicon &lexicon, const ReducerConfig &cfg, unsigned workers) {
  const Corpus marked = mark_embedding_vocab(corpus, store);
  const auto rare = find_rare(lemma_frequencies(marked), cfg);
  Reduction result;
  result.rare_lemmas = rare.size();
  result.plan = plan_replacements(marked, rare, store, lexicon, cfg, workers);
  result.corpus = apply_plan(marked, result.plan);
  return result;
}

}  // namespace mtht
