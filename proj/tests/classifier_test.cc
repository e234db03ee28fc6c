// classifier_test.cc
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
#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mtht/classifier.h"
#include "mtht/error.h"
#include "synth.h"

namespace mtht {
namespace {

using testing::Rng;

Corpus make(Rng &rng, const std::string &prefix, std::size_t types, std::size_t n) {
  return testing::annotate(testing::zipf_sentences(rng, testing::word_list(prefix, types), 1.0, n, 4, 12));
}

TEST(DecideTest, TiesGoToHumanTranslation) {
  EXPECT_EQ(decide(-3.0, -3.0), Label::kHT);
  EXPECT_EQ(decide(-2.0, -3.0), Label::kMT);
  EXPECT_EQ(decide(-4.0, -3.0), Label::kHT);
}

TEST(ReportTest, Arithmetic) {
  std::vector<Label> mt(100, Label::kHT), ht(50, Label::kHT);
  std::fill(mt.begin(), mt.begin() + 79, Label::kMT);
  ht[0] = Label::kMT;
  const auto r = make_report(mt, ht);
  EXPECT_DOUBLE_EQ(r.mt_acc, 0.79);
  EXPECT_DOUBLE_EQ(r.ht_acc, 49.0 / 50.0);
  EXPECT_DOUBLE_EQ(r.total_acc, 128.0 / 150.0);
  EXPECT_DOUBLE_EQ(r.class_avg_acc, (0.79 + 0.98) / 2);
  EXPECT_EQ(r.confusion[0][0], 79u);
  EXPECT_EQ(r.confusion[0][1], 21u);
  EXPECT_EQ(r.confusion[1][0], 1u);
  EXPECT_EQ(r.confusion[1][1], 49u);
  const auto j = nlohmann::json::parse(r.to_json());
  for (const char *k : {"total", "total_class_avg", "mt", "ht", "confusion", "n_mt", "n_ht"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_NE(r.to_table("x").find("Total"), std::string::npos);
}

TEST(ReportTest, EqualSizesMakeTotalsCoincide) {
  std::vector<Label> mt = {Label::kMT, Label::kHT, Label::kMT}, ht = {Label::kHT, Label::kHT, Label::kMT};
  const auto r = make_report(mt, ht);
  EXPECT_NEAR(r.total_acc, (r.mt_acc + r.ht_acc) / 2, 1e-12);
}

TEST(EvaluateTest, IdenticalModelsLabelEverythingHT) {
  Rng rng(1);
  const auto train = make(rng, "w", 40, 50);
  const auto m1 = TrigramModel::train(train, Label::kMT), m2 = TrigramModel::train(train, Label::kHT);
  const auto r = evaluate(m1, m2, make(rng, "w", 40, 20), make(rng, "w", 40, 30));
  EXPECT_EQ(r.mt_acc, 0.0);
  EXPECT_EQ(r.ht_acc, 1.0);
  EXPECT_EQ(r.class_avg_acc, 0.5);
}

TEST(EvaluateTest, EmptyTestSetIsAnError) {
  Rng rng(1);
  const auto m = TrigramModel::train(make(rng, "w", 10, 5), Label::kMT);
  EXPECT_THROW(evaluate(m, m, Corpus{}, make(rng, "w", 10, 5)), Error);
}

TEST(EvaluateTest, DecisionsIgnoreOrderAndWorkerCount) {
  Rng rng(2);
  const auto p_mt = TrigramModel::train(make(rng, "a", 60, 80), Label::kMT);
  const auto p_ht = TrigramModel::train(make(rng, "a", 120, 80), Label::kHT);
  auto mt_test = make(rng, "a", 60, 40), ht_test = make(rng, "a", 120, 40);
  std::vector<Label> before;
  for (const auto &s : mt_test) before.push_back(classify_sentence(p_mt, p_ht, s));
  const auto r1 = evaluate(p_mt, p_ht, mt_test, ht_test, 1);
  const auto r4 = evaluate(p_mt, p_ht, mt_test, ht_test, 4);
  EXPECT_EQ(r1.to_json(), r4.to_json());
  std::reverse(mt_test.begin(), mt_test.end());
  for (std::size_t i = 0; i < mt_test.size(); ++i) {
    EXPECT_EQ(classify_sentence(p_mt, p_ht, mt_test[i]), before[before.size() - 1 - i]);
  }
}

TEST(EvaluateTest, SwappingLabelsSwapsAccuracies) {
  Rng rng(4);
  const auto p_a = TrigramModel::train(make(rng, "a", 50, 60), Label::kMT);
  const auto p_b = TrigramModel::train(make(rng, "b", 50, 60), Label::kHT);
  const auto a = make(rng, "a", 50, 30), b = make(rng, "b", 50, 25);
  const auto r = evaluate(p_a, p_b, a, b), s = evaluate(p_b, p_a, b, a);
  EXPECT_DOUBLE_EQ(r.mt_acc, s.ht_acc);
  EXPECT_DOUBLE_EQ(r.ht_acc, s.mt_acc);
}

TEST(HashedFeaturesTest, UnitNormAndDeterministic) {
  const std::vector<std::string> t = {"a", "b", "a", "b"};
  const auto f = hashed_features(t, 16, 0);
  double norm = 0;
  for (const auto &[i, v] : f) {
    EXPECT_LT(i, 1u << 16);
    norm += v * v;
  }
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_EQ(f, hashed_features(t, 16, 0));
  EXPECT_NE(f, hashed_features(t, 16, 99));
}

TEST(DiscriminativeTest, GradientMatchesFiniteDifferences) {
  Rng rng(9);
  DiscriminativeConfig cfg;
  cfg.dimension_bits = 8;
  DiscriminativeModel model(cfg);
  std::normal_distribution<double> g(0, 0.5);
  for (auto &w : model.weights()) w = g(rng);
  model.bias() = 0.1;
  std::vector<LabeledExample> examples;
  for (const auto &s : make(rng, "f", 30, 20)) examples.push_back({model.features(s), 1.0});
  for (const auto &s : make(rng, "h", 30, 20)) examples.push_back({model.features(s), 0.0});
  double gb = 0;
  const auto grad = model.gradient(examples, &gb);
  ASSERT_GE(grad.size(), 10u);
  const double h = 1e-5;
  auto check = [&](double &param, double analytic) {
    const double saved = param;
    param = saved + h;
    const double up = model.loss(examples);
    param = saved - h;
    const double down = model.loss(examples);
    param = saved;
    const double numeric = (up - down) / (2 * h);
    EXPECT_LT(std::abs(numeric - analytic) / std::max(1e-8, std::abs(numeric) + std::abs(analytic)), 1e-4);
  };
  std::uniform_int_distribution<std::size_t> pick(0, grad.size() - 1);
  for (int i = 0; i < 10; ++i) {
    const auto &[idx, value] = grad[pick(rng)];
    check(model.weights()[idx], value);
  }
  check(model.bias(), gb);
}

TEST(DiscriminativeTest, SeparableDataIsLearned) {
  Rng rng(21);
  DiscriminativeConfig cfg;
  const auto model = train_discriminative(make(rng, "m", 100, 500), make(rng, "h", 100, 500), cfg);
  const auto r = evaluate(model, make(rng, "m", 100, 200), make(rng, "h", 100, 200));
  EXPECT_EQ(r.total_acc, 1.0);
  // Running mean of the per-step loss, sampled every 50 updates.
  const auto &trace = model.loss_trace();
  ASSERT_EQ(trace.size(), 1000u);
  double sum = 0, previous = INFINITY;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    sum += trace[i];
    if ((i + 1) % 50 == 0) {
      const double mean = sum / static_cast<double>(i + 1);
      EXPECT_LE(mean, previous) << "at step " << i + 1;
      previous = mean;
    }
  }
}

TEST(DiscriminativeTest, ChanceOnIdenticalClasses) {
  Rng rng(33);
  const auto model = train_discriminative(make(rng, "w", 300, 500), make(rng, "w", 300, 500));
  const auto r = evaluate(model, make(rng, "w", 300, 500), make(rng, "w", 300, 500));
  EXPECT_GE(r.total_acc, 0.45);
  EXPECT_LE(r.total_acc, 0.55);
}

TEST(DiscriminativeTest, DeterministicAndRejectsSingleClass) {
  Rng rng(8);
  const auto a = make(rng, "x", 40, 30), b = make(rng, "y", 40, 30);
  const auto m1 = train_discriminative(a, b), m2 = train_discriminative(a, b);
  EXPECT_EQ(m1.weights(), m2.weights());
  EXPECT_EQ(m1.bias(), m2.bias());
  EXPECT_THROW(train_discriminative(a, Corpus{}), Error);
}

}  // namespace
}  // namespace mtht
