// classifier.cc
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
#include "mtht/classifier.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mtht/error.h"
#include "mtht/text.h"
#include "parallel.h"

namespace mtht {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow.
double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double example_loss(double z, double y) { return y * softplus(-z) + (1.0 - y) * softplus(z); }

std::size_t label_index(Label l) { return l == Label::kMT ? 0 : 1; }

}  // namespace

Label classify_sentence(const TrigramModel &p_mt, const TrigramModel &p_ht,
                        const AnnotatedSentence &sentence) {
  const auto tokens = sentence.surfaces();
  return decide(p_mt.sentence_logprob(tokens), p_ht.sentence_logprob(tokens));
}

ClassificationReport make_report(std::span<const Label> mt_predictions,
                                 std::span<const Label> ht_predictions) {
  if (mt_predictions.empty() || ht_predictions.empty()) {
    throw Error("both MT and HT test sets must be non-empty");
  }
  ClassificationReport r;
  r.n_mt = mt_predictions.size();
  r.n_ht = ht_predictions.size();
  for (Label p : mt_predictions) ++r.confusion[0][label_index(p)];
  for (Label p : ht_predictions) ++r.confusion[1][label_index(p)];
  const auto correct_mt = r.confusion[0][0];
  const auto correct_ht = r.confusion[1][1];
  r.mt_acc = static_cast<double>(correct_mt) / static_cast<double>(r.n_mt);
  r.ht_acc = static_cast<double>(correct_ht) / static_cast<double>(r.n_ht);
  r.total_acc = static_cast<double>(correct_mt + correct_ht) / static_cast<double>(r.n_mt + r.n_ht);
  r.class_avg_acc = (r.mt_acc + r.ht_acc) / 2.0;
  return r;
}

std::string ClassificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["total"] = total_acc;
  j["total_class_avg"] = class_avg_acc;
  j["mt"] = mt_acc;
  j["ht"] = ht_acc;
  j["confusion"] = {{confusion[0][0], confusion[0][1]}, {confusion[1][0], confusion[1][1]}};
  j["n_mt"] = n_mt;
  j["n_ht"] = n_ht;
  return j.dump(2);
}

std::string ClassificationReport::to_table(const std::string &title) const {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4);
  ss << title << '\n'
     << std::left << std::setw(9) << "Total" << std::setw(9) << "MT" << "HT" << '\n'
     << std::setw(9) << total_acc << std::setw(9) << mt_acc << ht_acc << '\n';
  return ss.str();
}

ClassificationReport evaluate(const TrigramModel &p_mt, const TrigramModel &p_ht,
                              std::span<const AnnotatedSentence> mt_test,
                              std::span<const AnnotatedSentence> ht_test, unsigned workers) {
  if (mt_test.empty() || ht_test.empty()) throw Error("both MT and HT test sets must be non-empty");
  std::vector<Label> mt_pred(mt_test.size()), ht_pred(ht_test.size());
  const std::size_t n = mt_test.size() + ht_test.size();
  internal::parallel_for(n, workers, [&](std::size_t i) {
    if (i < mt_test.size()) {
      mt_pred[i] = classify_sentence(p_mt, p_ht, mt_test[i]);
    } else {
      ht_pred[i - mt_test.size()] = classify_sentence(p_mt, p_ht, ht_test[i - mt_test.size()]);
    }
  });
  return make_report(mt_pred, ht_pred);
}

SparseVector hashed_features(std::span<const std::string> tokens, unsigned dimension_bits,
                             std::uint64_t seed) {
  const std::uint64_t mask = (std::uint64_t{1} << dimension_bits) - 1;
  std::map<std::uint32_t, double> counts;
  std::string key;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      key.assign(1, static_cast<char>('0' + n));
      for (std::size_t k = 0; k < n; ++k) {
        key.push_back('\x1f');
        key.append(tokens[i + k]);
      }
      counts[static_cast<std::uint32_t>(fnv1a64(key, seed) & mask)] += 1.0;
    }
  }
  double norm = 0;
  for (const auto &[idx, c] : counts) norm += c * c;
  norm = std::sqrt(norm);
  SparseVector out(counts.begin(), counts.end());
  if (norm > 0) {
    for (auto &[idx, v] : out) v /= norm;
  }
  return out;
}

DiscriminativeModel::DiscriminativeModel(const DiscriminativeConfig &config)
    : config_(config) {
  if (config.dimension_bits == 0 || config.dimension_bits > 30) {
    throw Error("dimension_bits must be in 1..30");
  }
  if (config.epochs < 1) throw Error("epochs must be at least 1");
  if (!(config.learning_rate > 0)) throw Error("learning rate must be positive");
  weights_.assign(std::size_t{1} << config.dimension_bits, 0.0);
}

double DiscriminativeModel::logit(const SparseVector &x) const {
  double z = bias_;
  for (const auto &[i, v] : x) z += weights_[i] * v;
  return z;
}

double DiscriminativeModel::probability(const SparseVector &x) const { return sigmoid(logit(x)); }

SparseVector DiscriminativeModel::features(const AnnotatedSentence &sentence) const {
  return hashed_features(sentence.surfaces(), config_.dimension_bits, config_.hash_seed);
}

Label DiscriminativeModel::predict(const AnnotatedSentence &sentence) const {
  return logit(features(sentence)) > 0 ? Label::kMT : Label::kHT;
}

double DiscriminativeModel::loss(std::span<const LabeledExample> examples) const {
  if (examples.empty()) return 0.0;
  double sum = 0;
  for (const auto &e : examples) sum += example_loss(logit(e.features), e.target);
  return sum / static_cast<double>(examples.size());
}

SparseVector DiscriminativeModel::gradient(std::span<const LabeledExample> examples,
                                           double *bias_gradient) const {
  std::map<std::uint32_t, double> g;
  double gb = 0;
  const double scale = examples.empty() ? 0.0 : 1.0 / static_cast<double>(examples.size());
  for (const auto &e : examples) {
    const double residual = sigmoid(logit(e.features)) - e.target;
    for (const auto &[i, v] : e.features) g[i] += residual * v * scale;
    gb += residual * scale;
  }
  if (bias_gradient) *bias_gradient = gb;
  return SparseVector(g.begin(), g.end());
}

double DiscriminativeModel::sgd_step(const LabeledExample &example) {
  const double z = logit(example.features);
  const double before = example_loss(z, example.target);
  const double step = config_.learning_rate * (sigmoid(z) - example.target);
  for (const auto &[i, v] : example.features) weights_[i] -= step * v;
  bias_ -= step;
  return before;
}

DiscriminativeModel train_discriminative(std::span<const AnnotatedSentence> mt_train,
                                         std::span<const AnnotatedSentence> ht_train,
                                         const DiscriminativeConfig &config) {
  if (mt_train.empty() || ht_train.empty()) {
    throw Error("discriminative training needs both MT and HT sentences");
  }
  DiscriminativeModel model(config);
  std::vector<LabeledExample> examples;
  examples.reserve(mt_train.size() + ht_train.size());
  for (const auto &s : mt_train) examples.push_back({model.features(s), 1.0});
  for (const auto &s : ht_train) examples.push_back({model.features(s), 0.0});

  model.loss_trace().reserve(examples.size() * static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = seeded_permutation(examples.size(),
                                          config.shuffle_seed + static_cast<std::uint64_t>(epoch));
    for (std::size_t i : order) model.loss_trace().push_back(model.sgd_step(examples[i]));
  }
  return model;
}

ClassificationReport evaluate(const DiscriminativeModel &model,
                              std::span<const AnnotatedSentence> mt_test,
                              std::span<const AnnotatedSentence> ht_test, unsigned workers) {
  if (mt_test.empty() || ht_test.empty()) throw Error("both MT and HT test sets must be non-empty");
  std::vector<Label> mt_pred(mt_test.size()), ht_pred(ht_test.size());
  internal::parallel_for(mt_test.size() + ht_test.size(), workers, [&](std::size_t i) {
    if (i < mt_test.size()) {
      mt_pred[i] = model.predict(mt_test[i]);
    } else {
      ht_pred[i - mt_test.size()] = model.predict(ht_test[i - mt_test.size()]);
    }
  });
  return make_report(mt_pred, ht_pred);
}

}  // namespace mtht
