// trigram_lm_test.cc
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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mtht/error.h"
#include "mtht/trigram_lm.h"
#include "oracles.h"
#include "synth.h"

namespace mtht {
namespace {

using testing::Sentence;
using testing::WittenBellOracle;

TrigramModel train_on(const std::vector<Sentence> &s) { return TrigramModel::train(s, Label::kMT); }

TEST(TrigramTrainTest, PaddingConvention) {
  const auto m = train_on({{"a", "b"}});
  EXPECT_EQ(m.total_tokens(), 3u);
  EXPECT_EQ(m.vocab_size(), 3u);
  EXPECT_EQ(m.trigram_count("<s>", "<s>", "a"), 1u);
  EXPECT_EQ(m.trigram_count("<s>", "a", "b"), 1u);
  EXPECT_EQ(m.trigram_count("a", "b", "</s>"), 1u);
  EXPECT_EQ(m.unigram_count("<s>"), 0u);
  EXPECT_EQ(m.ngrams(3).size(), 3u);
}

TEST(TrigramTrainTest, UnigramCounts) {
  const auto m = train_on({{"a", "a", "b"}});
  EXPECT_EQ(m.unigram_count("a"), 2u);
  EXPECT_EQ(m.unigram_count("b"), 1u);
  EXPECT_EQ(m.unigram_count("</s>"), 1u);
}

TEST(TrigramTrainTest, DuplicatingDataDoublesCounts) {
  const std::vector<Sentence> one = {{"x", "y", "z"}, {"y", "y"}};
  auto two = one;
  two.insert(two.end(), one.begin(), one.end());
  const auto a = train_on(one), b = train_on(two);
  for (int order = 1; order <= 3; ++order) {
    const auto na = a.ngrams(order), nb = b.ngrams(order);
    ASSERT_EQ(na.size(), nb.size());
    for (std::size_t i = 0; i < na.size(); ++i) {
      EXPECT_EQ(na[i].words, nb[i].words);
      EXPECT_EQ(2 * na[i].count, nb[i].count);
    }
  }
}

TEST(TrigramTrainTest, CountsAreAdditive) {
  testing::Rng rng(5);
  const auto words = testing::word_list("w", 12);
  const auto a = testing::zipf_sentences(rng, words, 1.0, 20, 1, 6);
  const auto b = testing::zipf_sentences(rng, words, 1.0, 15, 1, 6);
  auto ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  const auto ma = train_on(a), mb = train_on(b), mab = train_on(ab);
  for (const auto &g : mab.ngrams(3)) {
    EXPECT_EQ(g.count, ma.trigram_count(g.words[0], g.words[1], g.words[2]) +
                           mb.trigram_count(g.words[0], g.words[1], g.words[2]));
  }
  for (const auto &g : mab.ngrams(2)) {
    EXPECT_EQ(g.count, ma.bigram_count(g.words[0], g.words[1]) + mb.bigram_count(g.words[0], g.words[1]));
  }
}

TEST(TrigramTrainTest, RejectsEmptyAndReservedInput) {
  EXPECT_THROW(train_on({}), Error);
  EXPECT_THROW(train_on({{"a", "<s>"}}), Error);
  EXPECT_THROW(train_on({{}}), Error);
}

TEST(TrigramProbTest, HandComputedUnigramBackoff) {
  // "a a b": N = 4 and V = 3 once the end marker is counted, so
  // P(a) = 4/7 * 2/4 + 3/7 * 1/4 = 11/28 in a context never seen.
  const auto m = train_on({{"a", "a", "b"}});
  EXPECT_NEAR(m.prob("a", "zz", "zz"), 11.0 / 28.0, 1e-15);
  EXPECT_NEAR(m.prob("b", "zz", "zz"), 4.0 / 7.0 / 4.0 + 3.0 / 28.0, 1e-15);
  EXPECT_NEAR(m.prob("unseen", "zz", "zz"), 3.0 / 28.0, 1e-15);
}

TEST(TrigramProbTest, IllustrativeUnigramArithmetic) {
  // Markers left out: N = 3, V = 2, lambda = 3/5.
  const double lambda = 3.0 / 5.0;
  EXPECT_NEAR(lambda * 2.0 / 3.0 + (1 - lambda) / 3.0, 0.5333333333333333, 1e-12);
  EXPECT_NEAR(lambda * 1.0 / 3.0 + (1 - lambda) / 3.0, 0.3333333333333333, 1e-12);
  EXPECT_NEAR((1 - lambda) / 3.0, 0.1333333333333333, 1e-12);
}

TEST(TrigramProbTest, UnseenContextFallsBackToBigram) {
  const auto m = train_on({{"a", "b", "c"}, {"b", "c", "a"}});
  for (const char *w : {"a", "b", "c", "</s>", "q"}) {
    EXPECT_DOUBLE_EQ(m.prob(w, "c", "b"), m.prob(w, "never", "b"));
  }
  EXPECT_EQ(m.trigram_lambda(m.id("c"), m.id("b")), 0.0);
}

TEST(TrigramProbTest, AgreesWithIndependentOracle) {
  testing::Rng rng(11);
  const auto words = testing::word_list("t", 25);
  for (int trial = 0; trial < 5; ++trial) {
    const auto data = testing::zipf_sentences(rng, words, 1.1, 30, 1, 8);
    const auto m = train_on(data);
    const WittenBellOracle oracle(data);
    EXPECT_EQ(m.total_tokens(), oracle.n());
    EXPECT_EQ(m.vocab_size(), oracle.v());
    std::vector<std::string> ctx = words;
    ctx.push_back("<s>");
    ctx.push_back("zzz");
    std::uniform_int_distribution<std::size_t> pick(0, ctx.size() - 1);
    for (int q = 0; q < 200; ++q) {
      const auto &u = ctx[pick(rng)], &v = ctx[pick(rng)], &w = ctx[pick(rng)];
      if (w == "<s>") continue;
      EXPECT_NEAR(m.prob(w, u, v), oracle.prob(w, u, v), 1e-12) << u << ' ' << v << ' ' << w;
    }
    for (const auto &s : data) EXPECT_NEAR(m.sentence_logprob(s), oracle.logprob(s), 1e-9);
  }
}

TEST(TrigramProbTest, LambdasStayBelowOne) {
  const auto m = train_on({{"a", "b"}, {"a", "c"}, {"a", "b"}});
  for (const auto &w : m.vocabulary()) {
    const double l = m.bigram_lambda(m.id(w));
    EXPECT_GE(l, 0.0);
    EXPECT_LT(l, 1.0);
  }
  EXPECT_NEAR(m.trigram_lambda(m.id("<s>"), m.id("a")), 3.0 / 5.0, 1e-15);
}

TEST(SentenceLogprobTest, Properties) {
  const auto own = train_on({{"the", "cat", "sat"}});
  const auto other = train_on({{"dogs", "bark", "loudly"}});
  const Sentence s = {"the", "cat", "sat"};
  const double lp = own.sentence_logprob(s);
  EXPECT_TRUE(std::isfinite(lp));
  EXPECT_LT(lp, 0.0);
  EXPECT_GT(lp, other.sentence_logprob(s));
  EXPECT_TRUE(std::isfinite(own.sentence_logprob(Sentence{"qq", "rr", "ss"})));
  EXPECT_LT(own.sentence_logprob(Sentence{"the", "cat", "sat", "the", "cat", "sat"}), lp);
  EXPECT_THROW(own.sentence_logprob(Sentence{}), Error);
}

TEST(SerializationTest, RoundTripPreservesProbabilities) {
  testing::Rng rng(3);
  const auto words = testing::word_list("v", 30);
  const auto m = train_on(testing::zipf_sentences(rng, words, 1.0, 40, 1, 10));
  const auto text = m.serialize();
  EXPECT_EQ(text.rfind("TRIGRAM-WB v1 label=MT", 0), 0u);
  const auto back = TrigramModel::deserialize(text);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_EQ(back.label(), Label::kMT);
  for (const auto &s : testing::zipf_sentences(rng, words, 0.5, 50, 1, 12)) {
    EXPECT_EQ(m.sentence_logprob(s), back.sentence_logprob(s));
  }
}

TEST(SerializationTest, RejectsCorruptFiles) {
  const auto text = train_on({{"a", "b"}}).serialize();
  EXPECT_THROW(TrigramModel::deserialize("garbage\n"), Error);
  EXPECT_THROW(TrigramModel::deserialize(text.substr(0, text.size() / 2)), Error);
  std::string bad_n = text;
  bad_n.replace(bad_n.find("N=3"), 3, "N=4");
  EXPECT_THROW(TrigramModel::deserialize(bad_n), Error);
}

}  // namespace
}  // namespace mtht
