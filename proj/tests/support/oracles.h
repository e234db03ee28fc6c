// oracles.h
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
// Reference implementations used only by tests. Each one is written from
// the textbook definition with plain containers and no shared code with
// the library, so agreement between the two is meaningful.

#ifndef MTHT_TESTS_SUPPORT_ORACLES_H_
#define MTHT_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mtht::testing {

using Sentence = std::vector<std::string>;

// Interpolated Witten-Bell trigram estimate computed from event counts
// stored in ordered maps keyed by the joined n-gram.
class WittenBellOracle {
 public:
  explicit WittenBellOracle(const std::vector<Sentence> &sentences);

  double prob(const std::string &w, const std::string &u, const std::string &v) const;
  double unigram(const std::string &w) const;
  double bigram(const std::string &w, const std::string &v) const;
  double logprob(const Sentence &s) const;

  std::size_t n() const { return n_; }
  std::size_t v() const { return uni_.size(); }

 private:
  std::map<std::string, std::size_t> uni_, bi_, tri_;
  std::map<std::string, std::size_t> bi_hist_, tri_hist_;        // c(h)
  std::map<std::string, std::size_t> bi_types_, tri_types_;      // T(h)
  std::size_t n_ = 0;
};

// Step-by-step MTLD scan: tallies kept as a token list and a count map.
struct MtldScan {
  double forward = 0;
  double backward = 0;
  bool defined = false;
  double value = 0;
};
double mtld_factor_scan(const std::vector<std::string> &tokens, double threshold);
MtldScan mtld_scan(const std::vector<std::string> &tokens, double threshold = 0.72);

// Corpus BLEU with naive n-gram enumeration.
double bleu_oracle(const std::vector<Sentence> &hyp, const std::vector<Sentence> &ref);

// Minimum-cost perfect matching by exhaustive permutation search.
double min_matching_cost(const std::vector<std::vector<double>> &cost);

// Exhaustive cosine scan: candidates are rows [0, restrict), query excluded,
// ordered by descending similarity then ascending row.
std::vector<std::pair<std::string, double>> brute_force_neighbors(
    const std::vector<std::pair<std::string, std::vector<float>>> &rows,
    const std::string &query, std::size_t k, std::size_t restrict);

}  // namespace mtht::testing

#endif  // MTHT_TESTS_SUPPORT_ORACLES_H_
