// Copyright 2026 The CapQA Authors.
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

#include "capqa/answers.h"

#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>
#include "capqa/error.h"
#include "test_util.h"

namespace capqa {
namespace {

std::map<std::string, double> AsMap(const WeightedAnswerSet& set) {
  std::map<std::string, double> out;
  for (const auto& e : set.entries) out[e.phrase] = e.weight();
  return out;
}

size_t WordCount(const std::string& phrase) {
  std::istringstream in(phrase);
  size_t n = 0;
  std::string w;
  while (in >> w) ++n;
  return n;
}

// True when every word of `small` appears in `big` in order.
bool IsSubsequence(const std::string& small, const std::string& big) {
  std::istringstream a(small), b(big);
  std::string x, y;
  while (a >> x) {
    bool found = false;
    while (b >> y) {
      if (x == y) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

class AnswersTest : public ::testing::Test {
 protected:
  Lexicons lex_ = Lexicons::Builtin();
};

TEST_F(AnswersTest, TwoBlackCarsMatchesWorkedExample) {
  const std::map<std::string, double> expected = {
      {"two", 0.33},      {"2", 0.33},        {"black", 0.33},
      {"cars", 0.33},     {"two cars", 0.66}, {"2 cars", 0.66},
      {"black cars", 0.66}, {"car", 0.33},    {"two black cars", 1.0}};
  const auto got = AsMap(ExpandAnswer("two black cars", lex_));
  ASSERT_EQ(got.size(), expected.size());
  for (const auto& [phrase, weight] : expected) {
    ASSERT_TRUE(got.count(phrase)) << phrase;
    // The worked example truncates to two decimals.
    EXPECT_NEAR(std::floor(got.at(phrase) * 100) / 100, weight, 1e-9) << phrase;
  }
  EXPECT_EQ(got.at("two cars"), 2.0 / 3.0);
  EXPECT_EQ(got.at("two"), 1.0 / 3.0);
}

TEST_F(AnswersTest, SingleTokenVariantsAllWeighOne) {
  EXPECT_EQ(AsMap(ExpandAnswer("cat", lex_)),
            (std::map<std::string, double>{{"cat", 1.0}, {"cats", 1.0}}));
  EXPECT_EQ(AsMap(ExpandAnswer("an apple", lex_)),
            (std::map<std::string, double>{{"apple", 1.0}, {"apples", 1.0}}));
  EXPECT_EQ(AsMap(ExpandAnswer("8", lex_)),
            (std::map<std::string, double>{{"8", 1.0}, {"eight", 1.0}}));
}

TEST_F(AnswersTest, NormalizationIgnoresCaseWhitespaceAndPunctuation) {
  EXPECT_EQ(NormalizeAnswer("  The Red CAR! "), "red car");
  EXPECT_EQ(NormalizeAnswer("woman's shirt"), "woman's shirt");
  EXPECT_EQ(AsMap(ExpandAnswer("Two Black Cars ", lex_)),
            AsMap(ExpandAnswer("two black cars", lex_)));
  EXPECT_THROW(ExpandAnswer("the", lex_), Error);
}

TEST_F(AnswersTest, WeightLawsOverCorpusAnswers) {
  const std::vector<std::string> answers = {
      "girl in a red shirt holding an apple", "an empty open field", "two puppies",
      "three small brown dogs", "a man wearing a hat", "yes", "can't say",
      "the city", "red car", "an old wooden bench next to a large tree in the park"};
  for (const auto& answer : answers) {
    const WeightedAnswerSet set = ExpandAnswer(answer, lex_);
    const auto full_tokens = static_cast<int64_t>(WordCount(set.full_answer));
    bool has_full = false;
    std::set<std::string> seen;
    for (const auto& e : set.entries) {
      EXPECT_TRUE(seen.insert(e.phrase).second) << "duplicate " << e.phrase;
      EXPECT_EQ(e.total, full_tokens);
      EXPECT_EQ(e.tokens, static_cast<int64_t>(WordCount(e.phrase))) << e.phrase;
      EXPECT_GT(e.weight(), 0.0);
      EXPECT_LE(e.weight(), 1.0);
      if (e.phrase == set.full_answer) {
        has_full = true;
        EXPECT_EQ(e.weight(), 1.0);
      } else if (e.tokens < full_tokens) {
        EXPECT_LT(e.weight(), 1.0);
      }
    }
    EXPECT_TRUE(has_full) << answer;
    for (const auto& a : set.entries) {
      for (const auto& b : set.entries) {
        if (a.tokens < b.tokens && IsSubsequence(a.phrase, b.phrase)) {
          EXPECT_LT(a.weight(), b.weight());
        }
      }
    }
  }
}

TEST_F(AnswersTest, LongAnswersUseContiguousSpansOnly) {
  const std::string answer = "a small boy with a big kite and a dog near the old red barn "
                             "by trees";
  const WeightedAnswerSet set = ExpandAnswer(answer, lex_);
  for (const auto& e : set.entries) {
    // Every multi-word entry is a contiguous span of the answer.
    if (e.tokens > 1) {
      EXPECT_NE((" " + set.full_answer + " ").find(" " + e.phrase + " "), std::string::npos)
          << e.phrase;
    }
  }
  EXPECT_LE(set.entries.size(), 16u * 17u / 2u + 2u);
}

TEST_F(AnswersTest, WeightsIncludeNormalizedAnswer) {
  auto weights = AnswerWeights("An empty open field", lex_);
  bool found = false;
  for (const auto& w : weights) found |= (w.phrase == "empty open field" && w.weight == 1.0);
  EXPECT_TRUE(found);
}

QAPair Pair(const std::string& answer) {
  QAPair qa;
  qa.question = "What is it?";
  qa.answer = answer;
  return qa;
}

TEST_F(AnswersTest, BuildVocabCountsAndOrders) {
  std::vector<QAPair> pairs = {Pair("cat"), Pair("cat"), Pair("dog")};
  AnswerVocab vocab = BuildVocab(pairs, 2, lex_);
  EXPECT_EQ(vocab.phrases(), (std::vector<std::string>{"cat", "cats"}));
  EXPECT_EQ(vocab.IndexOf("dog"), -1);

  // Oracle: one pair, min_count 1, is exactly its expansion, sorted.
  std::vector<QAPair> one = {Pair("two black cars")};
  std::vector<std::string> expected;
  for (const auto& e : ExpandAnswer("two black cars", lex_).entries) expected.push_back(e.phrase);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(BuildVocab(one, 1, lex_).phrases(), expected);

  try {
    BuildVocab(pairs, 5, lex_);
    FAIL() << "expected EmptyVocab";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyVocab);
  }
  EXPECT_THROW(BuildVocab(std::vector<QAPair>{}, 1, lex_), Error);
}

TEST_F(AnswersTest, VocabOrderIsFrequencyThenLexicographic) {
  std::vector<QAPair> pairs = {Pair("dog"), Pair("bird"), Pair("dog"), Pair("ant")};
  AnswerVocab vocab = BuildVocab(pairs, 1, lex_);
  EXPECT_EQ(vocab.phrases(),
            (std::vector<std::string>{"dog", "dogs", "ant", "ants", "bird", "birds"}));
  for (size_t i = 0; i < vocab.size(); ++i) {
    EXPECT_EQ(vocab.IndexOf(vocab.phrases()[i]), static_cast<int64_t>(i));
  }
}

TEST_F(AnswersTest, PartialCountsMerge) {
  auto corpus = testing::FixtureRecords(20, 4);
  std::vector<QAPair> pairs;
  for (const auto& r : corpus) {
    for (const auto& c : r.captions) pairs.push_back(Pair(c));
  }
  const size_t half = pairs.size() / 2;
  auto a = CountAnswerPhrases(std::span(pairs).subspan(0, half), lex_);
  auto b = CountAnswerPhrases(std::span(pairs).subspan(half), lex_);
  for (const auto& [p, n] : b) a[p] += n;
  EXPECT_EQ(VocabFromCounts(a, 2).phrases(), BuildVocab(pairs, 2, lex_).phrases());
}

TEST_F(AnswersTest, VocabFileRoundTrip) {
  testing::TempDir dir("answers");
  AnswerVocab vocab = BuildVocab(std::vector<QAPair>{Pair("two black cars")}, 1, lex_);
  SaveVocab(vocab, dir.File("v.txt"));
  EXPECT_EQ(testing::ReadFile(dir.File("v.txt")).rfind("#capqa-vocab v1 count=9\n", 0), 0u);
  EXPECT_EQ(LoadVocab(dir.File("v.txt")).phrases(), vocab.phrases());
}

TEST_F(AnswersTest, SwaTargets) {
  QAPair qa = Pair("two black cars");
  qa.weights = AnswerWeights(qa.answer, lex_);
  AnswerVocab full = BuildVocab(std::vector<QAPair>{qa}, 1, lex_);

  SwaTargetVector t = SwaTarget(qa, full);
  EXPECT_EQ(t.values.size(), 9u);
  EXPECT_EQ(t.dropped, 0u);
  EXPECT_EQ(t.values.at(full.IndexOf("two black cars")), 1.0);
  EXPECT_EQ(t.values.at(full.IndexOf("2 cars")), 2.0 / 3.0);

  std::vector<std::string> without = full.phrases();
  without.erase(std::find(without.begin(), without.end(), "2 cars"));
  SwaTargetVector t8 = SwaTarget(qa, AnswerVocab(without));
  EXPECT_EQ(t8.values.size(), 8u);
  EXPECT_EQ(t8.dropped, 1u);

  without = full.phrases();
  without.erase(std::find(without.begin(), without.end(), "two black cars"));
  try {
    SwaTarget(qa, AnswerVocab(without));
    FAIL() << "expected AnswerNotInVocab";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAnswerNotInVocab);
  }
  QAPair bare = Pair("cat");
  EXPECT_THROW(SwaTarget(bare, full), Error);
}

}  // namespace
}  // namespace capqa
