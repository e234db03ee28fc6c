// synth.cc
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
#include "synth.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <unistd.h>

namespace mtht::testing {

namespace fs = std::filesystem;

std::vector<std::string> word_list(const std::string &prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<Sentence> zipf_sentences(Rng &rng, const std::vector<std::string> &types,
                                     double exponent, std::size_t n_sentences,
                                     std::size_t min_len, std::size_t max_len) {
  std::vector<double> weights(types.size());
  for (std::size_t r = 0; r < types.size(); ++r) weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::vector<Sentence> out(n_sentences);
  for (auto &s : out) {
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) s.push_back(types[pick(rng)]);
  }
  return out;
}

Corpus annotate(const std::vector<Sentence> &sentences, const std::string &upos,
                const std::string &xpos) {
  Corpus out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    AnnotatedSentence s;
    s.source_id = std::to_string(i + 1);
    for (const auto &w : sentences[i]) {
      Token t;
      t.surface = w;
      t.lemma = w;
      t.upos = upos;
      t.xpos = xpos;
      t.is_numlike = is_numlike(w);
      s.tokens.push_back(std::move(t));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> surfaces_of(const Corpus &corpus) {
  std::vector<Sentence> out;
  for (const auto &s : corpus) out.push_back(s.surfaces());
  return out;
}

std::vector<float> random_vector(Rng &rng, std::size_t dim) {
  std::normal_distribution<float> g(0.0f, 1.0f);
  std::vector<float> v(dim);
  for (auto &x : v) x = g(rng);
  return v;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("mtht-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_text(const std::string &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

std::string write_embeddings(const std::string &path, const Rows &rows) {
  std::ostringstream out;
  out.precision(9);
  for (const auto &[tok, vec] : rows) {
    out << tok;
    for (float x : vec) out << ' ' << x;
    out << '\n';
  }
  write_text(path, out.str());
  return path;
}

std::vector<std::pair<std::string, std::string>> snapshot(const fs::path &root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out.emplace_back(fs::relative(e.path(), root).generic_string(), s.str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

SyntheticExperiment write_synthetic_experiment(const fs::path &dir, std::uint64_t seed,
                                               std::size_t n_sentences) {
  Rng rng(seed);
  const std::vector<std::string> function_words = {"the", "of", "a", "and"};
  auto side = [&](const std::string &prefix) {
    std::vector<std::string> pool = function_words;
    for (const auto &w : word_list(prefix, 150)) pool.push_back(w);
    return annotate(zipf_sentences(rng, pool, 1.0, n_sentences, 4, 14));
  };
  SyntheticExperiment e;
  e.mt_path = (dir / "mt.tsv").string();
  e.ht_path = (dir / "ht.tsv").string();
  e.embeddings_path = (dir / "vectors.txt").string();
  e.config_path = (dir / "config.json").string();
  write_text(e.mt_path, emit_annotated(side("m")));
  write_text(e.ht_path, emit_annotated(side("h")));

  Rows rows;
  for (const auto &w : function_words) rows.emplace_back(w, random_vector(rng, 8));
  for (std::size_t i = 0; i < 150; ++i) {
    for (const char *p : {"m", "h"}) rows.emplace_back(p + std::to_string(i), random_vector(rng, 8));
  }
  write_embeddings(e.embeddings_path, rows);

  nlohmann::ordered_json cfg = {{"mt", "mt.tsv"},
                                {"ht", "ht.tsv"},
                                {"format", "annotated"},
                                {"embeddings", "vectors.txt"},
                                {"seed", 42},
                                {"ratios", {0.7, 0.1, 0.2}},
                                {"reducer", {{"freq_threshold", 2}, {"top_k", 3}, {"restrict_vocab", 60}}},
                                {"conditions", {"orig&orig", "modf&modf", "orig&modf"}},
                                {"output_dir", "report"}};
  write_text(e.config_path, cfg.dump(2));
  return e;
}

}  // namespace mtht::testing
