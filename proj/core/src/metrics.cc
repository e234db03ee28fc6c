// metrics.cc
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
#include "mtht/metrics.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_set>

#include <json.hpp>

#include "mtht/error.h"
#include "mtht/text.h"
#include "parallel.h"

namespace mtht {

namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(const TokenSequence &tokens, std::size_t n) {
  NgramCounts counts;
  std::string key;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    key.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key.append(tokens[i + k]);
    }
    ++counts[key];
  }
  return counts;
}

// Store row for a token: exact match, then lowercased.
std::optional<std::size_t> resolve(const EmbeddingStore &store, const std::string &token) {
  if (auto r = store.find(token)) return r;
  return store.find(ascii_lower(token));
}

struct Side {
  std::vector<std::size_t> rows;
  std::vector<double> weights;
};

Side prepare_side(std::span<const std::string> tokens, const EmbeddingStore &store,
                  WmdWeighting weighting, const IdfTable *idf) {
  Side side;
  std::vector<double> tf;
  for (const auto &t : tokens) {
    auto r = resolve(store, t);
    if (!r || store.norm(*r) == 0.0) continue;
    auto it = std::find(side.rows.begin(), side.rows.end(), *r);
    if (it == side.rows.end()) {
      side.rows.push_back(*r);
      tf.push_back(1.0);
    } else {
      tf[static_cast<std::size_t>(it - side.rows.begin())] += 1.0;
    }
  }
  if (side.rows.empty()) throw Error("no token of the sentence is in the embedding store");
  if (weighting == WmdWeighting::kIdf) {
    for (std::size_t k = 0; k < tf.size(); ++k) {
      tf[k] *= idf ? idf->idf(store.token(side.rows[k])) : 1.0;
    }
  }
  double total = 0;
  for (double w : tf) total += w;
  if (!(total > 0)) throw Error("all token weights are zero");
  side.weights.reserve(tf.size());
  for (double w : tf) side.weights.push_back(w / total);
  return side;
}

double unit_distance(const EmbeddingStore &store, std::size_t a, std::size_t b) {
  if (a == b) return 0.0;
  auto x = store.vector(a), y = store.vector(b);
  const double na = store.norm(a), nb = store.norm(b);
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = static_cast<double>(x[k]) / na - static_cast<double>(y[k]) / nb;
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

std::string BleuResult::to_json() const {
  nlohmann::ordered_json j;
  j["score"] = score;
  for (std::size_t n = 0; n < 4; ++n) j["p" + std::to_string(n + 1)] = precisions[n];
  j["bp"] = brevity_penalty;
  j["hyp_len"] = hyp_len;
  j["ref_len"] = ref_len;
  return j.dump();
}

BleuResult corpus_bleu(std::span<const TokenSequence> hyp, std::span<const TokenSequence> ref) {
  if (hyp.size() != ref.size()) {
    throw Error("BLEU needs one reference per hypothesis (" + std::to_string(hyp.size()) +
                " vs " + std::to_string(ref.size()) + " sentences)");
  }
  BleuResult r;
  for (std::size_t s = 0; s < hyp.size(); ++s) {
    r.hyp_len += hyp[s].size();
    r.ref_len += ref[s].size();
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto h = count_ngrams(hyp[s], n);
      const auto g = count_ngrams(ref[s], n);
      for (const auto &[key, c] : h) {
        auto it = g.find(key);
        if (it != g.end()) r.matches[n - 1] += std::min(c, it->second);
      }
      if (hyp[s].size() >= n) r.totals[n - 1] += hyp[s].size() - n + 1;
    }
  }
  bool any_zero = false;
  double log_sum = 0;
  for (std::size_t n = 0; n < 4; ++n) {
    r.precisions[n] = r.totals[n] ? static_cast<double>(r.matches[n]) / static_cast<double>(r.totals[n]) : 0.0;
    if (r.precisions[n] == 0.0) {
      any_zero = true;
    } else {
      log_sum += 0.25 * std::log(r.precisions[n]);
    }
  }
  const double c = static_cast<double>(r.hyp_len), rl = static_cast<double>(r.ref_len);
  r.brevity_penalty = r.hyp_len == 0 ? 0.0 : (c > rl ? 1.0 : std::exp(1.0 - rl / c));
  r.score = any_zero ? 0.0 : r.brevity_penalty * std::exp(log_sum);
  return r;
}

BleuResult corpus_bleu(std::span<const AnnotatedSentence> hyp, std::span<const AnnotatedSentence> ref) {
  const auto h = surfaces(hyp);
  const auto g = surfaces(ref);
  return corpus_bleu(std::span<const TokenSequence>(h), std::span<const TokenSequence>(g));
}

WmdWeighting parse_weighting(std::string_view name) {
  if (name == "uniform") return WmdWeighting::kUniform;
  if (name == "idf") return WmdWeighting::kIdf;
  throw Error("unknown WMD weighting '" + std::string(name) + "' (expected uniform or idf)");
}

IdfTable::IdfTable(std::span<const TokenSequence> reference) : documents_(reference.size()) {
  for (const auto &sentence : reference) {
    std::unordered_set<std::string> seen(sentence.begin(), sentence.end());
    for (const auto &t : seen) ++df_[t];
  }
}

double IdfTable::idf(const std::string &token) const {
  auto it = df_.find(token);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((static_cast<double>(documents_) + 1.0) / (df + 1.0));
}

WmdResult wmd(std::span<const std::string> x, std::span<const std::string> y,
              const EmbeddingStore &store, WmdWeighting weighting, const IdfTable *idf) {
  const Side a = prepare_side(x, store, weighting, idf);
  const Side b = prepare_side(y, store, weighting, idf);
  std::vector<double> cost(a.rows.size() * b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    for (std::size_t j = 0; j < b.rows.size(); ++j) {
      cost[i * b.rows.size() + j] = unit_distance(store, a.rows[i], b.rows[j]);
    }
  }
  auto solution = solve_transport(a.weights, b.weights, cost, 1e-9);
  WmdResult r;
  r.distance = std::max(0.0, solution.cost);
  r.similarity = 1.0 / (1.0 + r.distance);
  for (std::size_t row : a.rows) r.x_types.push_back(store.token(row));
  for (std::size_t row : b.rows) r.y_types.push_back(store.token(row));
  r.x_weights = a.weights;
  r.y_weights = b.weights;
  r.plan = std::move(solution.flows);
  return r;
}

std::string CorpusWmdResult::to_json() const {
  nlohmann::ordered_json j;
  j["metric"] = "wmd-static";
  j["mean_similarity"] = mean_similarity;
  j["n_scored"] = n_scored;
  j["n_skipped"] = n_skipped;
  return j.dump();
}

CorpusWmdResult corpus_wmd_score(std::span<const TokenSequence> hyp,
                                 std::span<const TokenSequence> ref, const EmbeddingStore &store,
                                 WmdWeighting weighting, unsigned workers) {
  if (hyp.size() != ref.size()) throw Error("wmd-static needs aligned corpora of equal length");
  std::optional<IdfTable> idf;
  if (weighting == WmdWeighting::kIdf) {
    // Keyed by the store token each reference word resolves to.
    std::vector<TokenSequence> resolved;
    resolved.reserve(ref.size());
    for (const auto &sentence : ref) {
      TokenSequence out;
      for (const auto &t : sentence) {
        auto r = resolve(store, t);
        out.push_back(r ? store.token(*r) : t);
      }
      resolved.push_back(std::move(out));
    }
    idf.emplace(resolved);
  }
  std::vector<std::optional<double>> sims(hyp.size());
  internal::parallel_for(hyp.size(), workers, [&](std::size_t i) {
    try {
      sims[i] = wmd(hyp[i], ref[i], store, weighting, idf ? &*idf : nullptr).similarity;
    } catch (const Error &) {
      sims[i].reset();
    }
  });
  CorpusWmdResult r;
  double sum = 0;
  for (const auto &s : sims) {
    if (!s) {
      ++r.n_skipped;
      continue;
    }
    sum += *s;
    r.similarities.push_back(*s);
  }
  r.n_scored = r.similarities.size();
  if (r.n_scored == 0) throw Error("no sentence pair could be scored with wmd-static");
  r.mean_similarity = sum / static_cast<double>(r.n_scored);
  return r;
}

std::vector<TokenSequence> surfaces(std::span<const AnnotatedSentence> corpus) {
  std::vector<TokenSequence> out;
  out.reserve(corpus.size());
  for (const auto &s : corpus) out.push_back(s.surfaces());
  return out;
}

}  // namespace mtht
