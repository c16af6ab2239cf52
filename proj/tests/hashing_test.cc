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

#include "capqa/hashing.h"

#include <set>

#include <gtest/gtest.h>

namespace capqa {
namespace {

TEST(StableHasherTest, FieldOrderMatters) {
  StableHasher a;
  a.Add(1).Add("x");
  StableHasher b;
  b.Add("x").Add(1);
  EXPECT_NE(a.Digest(), b.Digest());
}

TEST(StableHasherTest, StringBoundariesMatter) {
  StableHasher a;
  a.Add("ab").Add("c");
  StableHasher b;
  b.Add("a").Add("bc");
  EXPECT_NE(a.Digest(), b.Digest());
}

TEST(StableHasherTest, SameFieldsSameDigest) {
  StableHasher a;
  a.Add(int64_t{42}).Add("yesno").Add(3);
  StableHasher b;
  b.Add(int64_t{42}).Add("yesno").Add(3);
  EXPECT_EQ(a.Digest(), b.Digest());
}

TEST(HexDigestTest, SixteenLowercaseDigits) {
  EXPECT_EQ(HexDigest(0), "0000000000000000");
  EXPECT_EQ(HexDigest(0xABCDEFULL), "0000000000abcdef");
}

TEST(SeededRngTest, SplitMix64ReferenceValues) {
  // Reference outputs of SplitMix64 seeded with 0 and 1234567.
  SeededRng zero(0);
  EXPECT_EQ(zero.Next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(zero.Next(), 0x6e789e6aa1b965f4ULL);
  SeededRng other(1234567);
  EXPECT_EQ(other.Next(), 6457827717110365317ULL);
  EXPECT_EQ(other.Next(), 3203168211198807973ULL);
}

TEST(SeededRngTest, UniformStaysInBound) {
  SeededRng rng(9);
  for (int i = 0; i < 10000; ++i) EXPECT_LT(rng.Uniform(7), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.UniformReal();
    EXPECT_GE(r, 0.0);
    EXPECT_LT(r, 1.0);
  }
}

TEST(SeededRngTest, SampleWithoutReplacementIsDistinctAndClamped) {
  SeededRng rng(5);
  for (size_t n = 0; n < 30; ++n) {
    for (size_t k = 0; k <= n + 2; ++k) {
      auto picks = rng.SampleWithoutReplacement(n, k);
      EXPECT_EQ(picks.size(), std::min(n, k));
      std::set<size_t> unique(picks.begin(), picks.end());
      EXPECT_EQ(unique.size(), picks.size());
      for (size_t p : picks) EXPECT_LT(p, n);
    }
  }
}

TEST(SeededRngTest, SampleIsRoughlyUniform) {
  SeededRng rng(77);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 20000; ++i) {
    for (size_t p : rng.SampleWithoutReplacement(10, 3)) ++hits[p];
  }
  for (int h : hits) EXPECT_NEAR(h, 6000, 400);
}

}  // namespace
}  // namespace capqa
