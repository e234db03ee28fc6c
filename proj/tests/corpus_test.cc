// corpus_test.cc
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
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "mtht/corpus.h"
#include "mtht/error.h"
#include "synth.h"

namespace mtht {
namespace {

std::vector<std::string> toks(std::string_view line) {
  auto s = tokenize(line);
  return s ? s->surfaces() : std::vector<std::string>{};
}

TEST(TokenizeTest, SplitsPunctuationFromWords) {
  EXPECT_EQ(toks("Hello, world!"), (std::vector<std::string>{"Hello", ",", "world", "!"}));
  EXPECT_EQ(toks("(see above)."), (std::vector<std::string>{"(", "see", "above", ")", "."}));
}

TEST(TokenizeTest, KeepsWordInternalMarksAndNumbers) {
  EXPECT_EQ(toks("don't well-known 3.14 1,000 -5 .5"),
            (std::vector<std::string>{"don't", "well-known", "3.14", "1,000", "-5", ".5"}));
}

TEST(TokenizeTest, MultiBytePunctuation) {
  // Curly quotes and an em dash split off; the curly apostrophe stays inside.
  EXPECT_EQ(toks("\xe2\x80\x9cit\xe2\x80\x99s\xe2\x80\x9d\xe2\x80\x94ok"),
            (std::vector<std::string>{"\xe2\x80\x9c", "it\xe2\x80\x99s", "\xe2\x80\x9d", "\xe2\x80\x94", "ok"}));
}

TEST(TokenizeTest, BlankLinesYieldNothing) {
  EXPECT_FALSE(tokenize("").has_value());
  EXPECT_FALSE(tokenize("  \t ").has_value());
}

TEST(TokenizeTest, LemmaFallsBackToLowercasedSurface) {
  auto s = tokenize("The Cat");
  ASSERT_TRUE(s);
  EXPECT_EQ(s->tokens[0].surface, "The");
  EXPECT_EQ(s->tokens[0].lemma, "the");
  EXPECT_EQ(s->tokens[1].lemma, "cat");
}

TEST(TokenizeTest, IsDeterministic) {
  const std::string line = "A man, a plan: 12.5% of \"it\" -- done.";
  EXPECT_EQ(emit_annotated(Corpus{*tokenize(line)}), emit_annotated(Corpus{*tokenize(line)}));
}

TEST(NumlikeTest, DigitsAndSpelledNumbers) {
  for (const char *w : {"42", "3.5", "1,000", "-7", "twenty", "Twenty-one", "first", "hundred"}) {
    EXPECT_TRUE(is_numlike(w)) << w;
  }
  for (const char *w : {"cat", "one-sided", "1a", "-", ""}) EXPECT_FALSE(is_numlike(w)) << w;
}

constexpr char kAnnotated[] =
    "# a comment\n"
    "The\tthe\tDET\tDT\n"
    "cats\tcat\tNOUN\tNNS\n"
    "\n"
    "\n"
    "ran\trun\tVERB\tVBD\n"
    "fast\t\tADV\tRB\n";

TEST(AnnotatedTest, ParsesSentencesAndSkipsComments) {
  std::istringstream in(kAnnotated);
  const Corpus c = parse_annotated(in);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].surfaces(), (std::vector<std::string>{"The", "cats"}));
  EXPECT_EQ(c[0].tokens[1].lemma, "cat");
  EXPECT_EQ(c[0].tokens[1].xpos, "NNS");
  EXPECT_EQ(c[1].tokens[1].lemma, "fast");
}

TEST(AnnotatedTest, RoundTripIsCanonical) {
  std::istringstream in(kAnnotated);
  const std::string once = emit_annotated(parse_annotated(in));
  EXPECT_EQ(once,
            "The\tthe\tDET\tDT\ncats\tcat\tNOUN\tNNS\n\nran\trun\tVERB\tVBD\nfast\tfast\tADV\tRB\n\n");
  std::istringstream again(once);
  EXPECT_EQ(emit_annotated(parse_annotated(again)), once);
}

TEST(AnnotatedTest, BadRowReportsLineNumber) {
  std::istringstream in("a\ta\tX\tX\nb\tb\tX\n");
  try {
    parse_annotated(in, "f.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("f.tsv:2"), std::string::npos);
  }
}

TEST(AnnotatedTest, EmptyInputIsAnError) {
  std::istringstream in("# nothing\n\n");
  EXPECT_THROW(parse_annotated(in), Error);
}

TEST(TagLexiconTest, MostFrequentTagWinsAndRoundTrips) {
  std::istringstream in("run\trun\tVERB\tVB\n\nrun\trun\tNOUN\tNN\n\nrun\trun\tVERB\tVB\n");
  const TagLexicon lex = TagLexicon::build(parse_annotated(in));
  ASSERT_NE(lex.find("run"), nullptr);
  EXPECT_EQ(lex.find("run")->xpos, "VB");
  EXPECT_EQ(lex.find("Run")->xpos, "VB");
  EXPECT_EQ(lex.find("walk"), nullptr);
  std::ostringstream out;
  lex.save(out);
  std::istringstream back(out.str());
  const TagLexicon loaded = TagLexicon::load(back);
  EXPECT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded.find("run")->upos, "VERB");
}

TEST(ReadRawTest, UsesLexiconTagsAndLineIds) {
  std::istringstream lex_in("cat\tNOUN\tNN\t5\n");
  const TagLexicon lex = TagLexicon::load(lex_in);
  std::istringstream in("the cat\n\nCat .\n");
  const Corpus c = read_raw(in, &lex);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].tokens[1].xpos, "NN");
  EXPECT_EQ(c[0].tokens[0].xpos, "X");
  EXPECT_EQ(c[1].source_id, "3");
  EXPECT_EQ(c[1].tokens[0].xpos, "NN");
}

TEST(ReadRawTest, MissingFileNamesPath) {
  try {
    read_raw_file("/nonexistent/corpus.txt");
    FAIL();
  } catch (const IoError &e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/corpus.txt"), std::string::npos);
  }
}

LabeledCorpus numbered(std::size_t n) {
  LabeledCorpus c;
  for (std::size_t i = 0; i < n; ++i) c.sentences.push_back(*tokenize("s" + std::to_string(i)));
  return c;
}

TEST(SplitTest, StandardProportions) {
  const auto c = split(numbered(100), {}, 42);
  EXPECT_EQ(c.indices(SplitTag::kTrain).size(), 70u);
  EXPECT_EQ(c.indices(SplitTag::kTest).size(), 10u);
  EXPECT_EQ(c.indices(SplitTag::kValidation).size(), 20u);
  const auto small = split_sizes(10, {});
  EXPECT_EQ(small, (std::array<std::size_t, 3>{7, 1, 2}));
}

TEST(SplitTest, IsPartitionAndDeterministic) {
  for (std::size_t n : {3, 7, 10, 101, 999}) {
    const auto a = split(numbered(n), {}, 7), b = split(numbered(n), {}, 7);
    EXPECT_EQ(split_manifest_json(a, {}, 7), split_manifest_json(b, {}, 7));
    std::set<std::size_t> all;
    for (auto tag : {SplitTag::kTrain, SplitTag::kTest, SplitTag::kValidation}) {
      for (auto i : a.indices(tag)) EXPECT_TRUE(all.insert(i).second);
    }
    EXPECT_EQ(all.size(), n);
    const auto sizes = split_sizes(n, {});
    EXPECT_NEAR(static_cast<double>(sizes[0]), 0.7 * n, 1.0);
    EXPECT_NEAR(static_cast<double>(sizes[1]), 0.1 * n, 1.0);
    EXPECT_NEAR(static_cast<double>(sizes[2]), 0.2 * n, 1.0);
  }
}

TEST(SplitTest, SeedChangesAssignment) {
  EXPECT_NE(split_manifest_json(split(numbered(50), {}, 1), {}, 1).substr(20),
            split_manifest_json(split(numbered(50), {}, 2), {}, 1).substr(20));
}

TEST(SplitTest, RejectsBadInput) {
  EXPECT_THROW(split(numbered(2), {}, 1), Error);
  EXPECT_THROW(parse_ratios("0.5,0.5,0.5"), Error);
  EXPECT_THROW(parse_ratios("0.8,0.2,0"), Error);
  EXPECT_THROW(parse_ratios("a,b,c"), Error);
  const auto r = parse_ratios("0.8,0.1,0.1");
  EXPECT_DOUBLE_EQ(r.train, 0.8);
}

TEST(SplitTest, SubsetFollowsTags) {
  const auto c = split(numbered(20), {}, 3);
  const auto test = c.subset(SplitTag::kTest);
  const auto idx = c.indices(SplitTag::kTest);
  ASSERT_EQ(test.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(test[i].surfaces(), c.sentences[idx[i]].surfaces());
}

}  // namespace
}  // namespace mtht
