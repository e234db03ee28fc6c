// classifier.h
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
// Binary MT/HT classification: generative comparison of two trigram models,
// a hashed n-gram logistic-regression classifier, and accuracy reports.

#ifndef MTHT_CLASSIFIER_H_
#define MTHT_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtht/corpus.h"
#include "mtht/trigram_lm.h"

namespace mtht {

// MT only when the MT score is strictly higher; ties go to HT.
inline Label decide(double logprob_mt, double logprob_ht) {
  return logprob_mt > logprob_ht ? Label::kMT : Label::kHT;
}

Label classify_sentence(const TrigramModel &p_mt, const TrigramModel &p_ht,
                        const AnnotatedSentence &sentence);

struct ClassificationReport {
  double total_acc = 0;      // correct / (n_mt + n_ht)
  double class_avg_acc = 0;  // (mt_acc + ht_acc) / 2
  double mt_acc = 0;
  double ht_acc = 0;
  // confusion[gold][predicted], index 0 = MT, 1 = HT.
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  std::size_t n_mt = 0;
  std::size_t n_ht = 0;

  // Keys: total, total_class_avg, mt, ht, confusion, n_mt, n_ht.
  std::string to_json() const;
  // Total / MT / HT layout.
  std::string to_table(const std::string &title) const;
};

ClassificationReport make_report(std::span<const Label> mt_predictions,
                                 std::span<const Label> ht_predictions);

// Throws Error when either test set is empty. Sentence scoring fans out to
// `workers` threads; results do not depend on the worker count.
ClassificationReport evaluate(const TrigramModel &p_mt, const TrigramModel &p_ht,
                              std::span<const AnnotatedSentence> mt_test,
                              std::span<const AnnotatedSentence> ht_test,
                              unsigned workers = 1);

// Sparse feature vector: sorted, unique indices.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

// Hashed 1-3-gram surface features, L2-normalized term counts.
SparseVector hashed_features(std::span<const std::string> tokens,
                             unsigned dimension_bits, std::uint64_t seed);

struct DiscriminativeConfig {
  unsigned dimension_bits = 20;
  int epochs = 1;
  double learning_rate = 0.5;
  std::uint64_t hash_seed = 0;
  std::uint64_t shuffle_seed = 1;
};

struct LabeledExample {
  SparseVector features;
  double target = 0;  // 1 for MT, 0 for HT
};

// Logistic regression trained by plain SGD on cross-entropy.
class DiscriminativeModel {
 public:
  DiscriminativeModel() = default;
  explicit DiscriminativeModel(const DiscriminativeConfig &config);

  double logit(const SparseVector &x) const;
  // P(MT | x).
  double probability(const SparseVector &x) const;
  Label predict(const AnnotatedSentence &sentence) const;
  SparseVector features(const AnnotatedSentence &sentence) const;

  // Mean cross-entropy over the examples.
  double loss(std::span<const LabeledExample> examples) const;
  // Gradient of loss(); the bias partial derivative is returned separately.
  SparseVector gradient(std::span<const LabeledExample> examples,
                        double *bias_gradient = nullptr) const;

  // One SGD step on a single example; returns the loss before the step.
  double sgd_step(const LabeledExample &example);

  const DiscriminativeConfig &config() const { return config_; }
  std::vector<double> &weights() { return weights_; }
  const std::vector<double> &weights() const { return weights_; }
  double &bias() { return bias_; }
  double bias() const { return bias_; }
  // Per-example losses recorded during training, in update order.
  const std::vector<double> &loss_trace() const { return loss_trace_; }
  std::vector<double> &loss_trace() { return loss_trace_; }

 private:
  DiscriminativeConfig config_;
  std::vector<double> weights_;
  double bias_ = 0;
  std::vector<double> loss_trace_;
};

// Throws Error when either class is empty.
DiscriminativeModel train_discriminative(std::span<const AnnotatedSentence> mt_train,
                                         std::span<const AnnotatedSentence> ht_train,
                                         const DiscriminativeConfig &config = {});

ClassificationReport evaluate(const DiscriminativeModel &model,
                              std::span<const AnnotatedSentence> mt_test,
                              std::span<const AnnotatedSentence> ht_test,
                              unsigned workers = 1);

}  // namespace mtht

#endif  // MTHT_CLASSIFIER_H_
