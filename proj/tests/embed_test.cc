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

#include "capqa/embed.h"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>
#include "capqa/error.h"
#include "test_util.h"

namespace capqa {
namespace {

EmbeddingStore FromText(const std::string& text) {
  std::istringstream in(text);
  return LoadVectors(in, std::nullopt, "<test>");
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kBadConfig;
}

TEST(LoadVectorsTest, ThreeLines) {
  EmbeddingStore s = FromText("a 1 0 0 0\nb 0 1 0 0\nc 0 0 1 0\n");
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.dim(), 4u);
}

TEST(LoadVectorsTest, NonNumericComponent) {
  EXPECT_EQ(CodeOf([] { FromText("cat 0.1 x 0.3\n"); }), ErrorCode::kMalformedInput);
}

TEST(LoadVectorsTest, InconsistentDimension) {
  EXPECT_EQ(CodeOf([] { FromText("a 1 2\nb 1 2 3\n"); }), ErrorCode::kMalformedInput);
}

TEST(LoadVectorsTest, NonFiniteComponent) {
  EXPECT_EQ(CodeOf([] { FromText("a 1 nan\n"); }), ErrorCode::kMalformedInput);
}

TEST(LoadVectorsTest, Word2VecHeaderSkipped) {
  EmbeddingStore s = FromText("2 3\na 1 2 3\nb 4 5 6\n");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.dim(), 3u);
}

// Oracle: the limited store is the head of the file in file order.
TEST(LoadVectorsTest, LimitKeepsHeadOfFile) {
  std::string text;
  for (int i = 0; i < 500; ++i) {
    text += "w" + std::to_string(i) + " " + std::to_string(i) + " 1\n";
  }
  std::istringstream in(text);
  EmbeddingStore s = LoadVectors(in, 50, "<test>");
  ASSERT_EQ(s.size(), 50u);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(s.vocab_order()[i], "w" + std::to_string(i));
  }
  EXPECT_FALSE(s.Contains("w50"));
}

TEST(LoadVectorsTest, WordsLowercased) {
  EmbeddingStore s = FromText("Dog 1 0\n");
  EXPECT_TRUE(s.Contains("dog"));
  EXPECT_TRUE(s.Contains("DOG"));
}

TEST(LoadVectorsTest, FixtureFile) {
  EmbeddingStore s = LoadVectors(testing::DataPath("vectors.txt"));
  EXPECT_GT(s.size(), 10u);
  EXPECT_THROW(LoadVectors("/nonexistent.txt"), Error);
}

TEST(CosineTest, IdentityAntipodalAndHandArithmetic) {
  EmbeddingStore s = FromText("w 0.3 -2 5\nn -0.3 2 -5\na 1 0 0\nb 1 1 0\nz 0 0 0\n");
  EXPECT_NEAR(Cosine("w", "w", s), 1.0, 1e-6);
  EXPECT_NEAR(Cosine("w", "n", s), -1.0, 1e-6);
  EXPECT_NEAR(Cosine("a", "b", s), 0.7071, 1e-4);
  EXPECT_EQ(CodeOf([&] { Cosine("a", "missing", s); }), ErrorCode::kUnknownWord);
  EXPECT_EQ(CodeOf([&] { Cosine("a", "z", s); }), ErrorCode::kZeroVector);
}

TEST(CosineTest, Symmetric) {
  EmbeddingStore s = LoadVectors(testing::DataPath("vectors.txt"));
  for (const auto& x : s.vocab_order()) {
    for (const auto& y : s.vocab_order()) {
      EXPECT_LT(std::abs(Cosine(x, y, s) - Cosine(y, x, s)), 1e-9);
    }
  }
}

// Oracle: exhaustive scan over candidates with the same ordering rule.
TEST(NearestTest, MatchesExhaustiveScan) {
  EmbeddingStore s = LoadVectors(testing::DataPath("vectors.txt"));
  const std::set<std::string> candidates(s.vocab_order().begin(), s.vocab_order().end());
  for (const auto& q : s.vocab_order()) {
    std::vector<ScoredWord> oracle;
    for (const auto& c : candidates) {
      if (c == q) continue;
      const double* a = s.Find(q);
      const double* b = s.Find(c);
      double dot = 0, na = 0, nb = 0;
      for (size_t i = 0; i < s.dim(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
      }
      oracle.emplace_back(c, dot / std::sqrt(na * nb));
    }
    std::sort(oracle.begin(), oracle.end(), [](const auto& x, const auto& y) {
      return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    auto got = Nearest(q, s, candidates, {}, 3);
    ASSERT_EQ(got.size(), 3u);
    for (size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(got[i].first, oracle[i].first);
      EXPECT_NEAR(got[i].second, oracle[i].second, 1e-12);
    }
  }
  auto man = Nearest("man", s, {"dog", "car", "table"}, {}, 1);
  ASSERT_EQ(man.size(), 1u);
  EXPECT_EQ(man[0].first, "dog");
}

TEST(NearestTest, ExcludeEmptyAndTies) {
  EmbeddingStore s = FromText("q 1 0\nb 1 1\na 1 1\nc 0 1\n");
  EXPECT_TRUE(Nearest("q", s, {"a", "b"}, {"a", "b"}, 2).empty());
  auto tied = Nearest("q", s, {"a", "b", "c"}, {}, 3);
  ASSERT_EQ(tied.size(), 3u);
  EXPECT_EQ(tied[0].first, "a");
  EXPECT_EQ(tied[1].first, "b");
  EXPECT_EQ(CodeOf([&] { Nearest("zz", s, {"a"}, {}, 1); }), ErrorCode::kUnknownWord);
}

TEST(NearestTest, PrefixProperty) {
  EmbeddingStore s = LoadVectors(testing::DataPath("vectors.txt"));
  const std::set<std::string> candidates(s.vocab_order().begin(), s.vocab_order().end());
  for (const auto& q : s.vocab_order()) {
    for (size_t k = 0; k + 1 < candidates.size(); ++k) {
      auto shorter = Nearest(q, s, candidates, {"hat"}, k);
      auto longer = Nearest(q, s, candidates, {"hat"}, k + 1);
      ASSERT_LE(shorter.size(), longer.size());
      for (size_t i = 0; i < shorter.size(); ++i) EXPECT_EQ(shorter[i], longer[i]);
    }
  }
}

TEST(MeanPoolTest, SingleWordAllOovAndAverage) {
  EmbeddingStore s = FromText("a 1 2 3\nb 3 -2 1\n");
  EXPECT_EQ(MeanPool("a", s), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(MeanPool("xyz qq", s), (std::vector<double>{0, 0, 0}));
  auto avg = MeanPool("A b?", s);
  ASSERT_EQ(avg.size(), 3u);
  EXPECT_NEAR(avg[0], 2.0, 1e-6);
  EXPECT_NEAR(avg[1], 0.0, 1e-6);
  EXPECT_NEAR(avg[2], 2.0, 1e-6);
}

TEST(MeanPoolTest, InvariantUnderReordering) {
  EmbeddingStore s = LoadVectors(testing::DataPath("vectors.txt"));
  auto x = MeanPool("man dog hat boat", s);
  auto y = MeanPool("boat hat man dog", s);
  ASSERT_EQ(x.size(), y.size());
  for (size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], y[i], 1e-12);
}

}  // namespace
}  // namespace capqa
