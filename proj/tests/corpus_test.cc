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

#include "capqa/corpus.h"

#include <map>

#include <gtest/gtest.h>
#include "capqa/error.h"
#include "json.hpp"
#include "test_util.h"

namespace capqa {
namespace {

using testing::DataPath;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kBadConfig;
}

TEST(LoadCocoTest, SingleAnnotation) {
  Corpus c = LoadCocoFromString(
      R"({"annotations":[{"image_id":7,"caption":"A man is wearing a hat and sitting"}]})");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.Iterate()[0].image_id, 7);
  ASSERT_EQ(c.Iterate()[0].captions.size(), 1u);
  EXPECT_EQ(c.Iterate()[0].captions[0], "A man is wearing a hat and sitting");
  EXPECT_FALSE(c.Iterate()[0].HasDims());
}

TEST(LoadCocoTest, ZeroAnnotationsIsEmptyCorpus) {
  EXPECT_EQ(CodeOf([] { LoadCocoFromString(R"({"annotations":[]})"); }),
            ErrorCode::kEmptyCorpus);
}

TEST(LoadCocoTest, OnlyBlankCaptionsIsEmptyCorpus) {
  EXPECT_EQ(CodeOf([] {
              LoadCocoFromString(R"({"annotations":[{"image_id":1,"caption":"  "}]})");
            }),
            ErrorCode::kEmptyCorpus);
}

TEST(LoadCocoTest, NotJsonOrNoAnnotationsIsMalformed) {
  EXPECT_EQ(CodeOf([] { LoadCocoFromString("not json"); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(CodeOf([] { LoadCocoFromString(R"({"images":[]})"); }),
            ErrorCode::kMalformedInput);
}

TEST(LoadCocoTest, MissingFileIsIoError) {
  EXPECT_EQ(CodeOf([] { LoadCoco("/nonexistent/captions.json"); }), ErrorCode::kIoError);
}

// Oracle: group the raw annotation array by image_id in file order.
TEST(LoadCocoTest, GroupingMatchesRawGroupBy) {
  const std::string text = R"({"annotations":[
      {"image_id":9,"caption":"first"},
      {"image_id":4,"caption":"other"},
      {"image_id":9,"caption":"second"},
      {"image_id":9,"caption":"third"},
      {"image_id":4,"caption":"  "}]})";
  std::map<int64_t, std::vector<std::string>> oracle;
  size_t valid = 0;
  const nlohmann::json raw = nlohmann::json::parse(text);
  for (const auto& a : raw["annotations"]) {
    const std::string cap = a["caption"];
    if (cap.find_first_not_of(' ') == std::string::npos) continue;
    oracle[a["image_id"]].push_back(cap);
    ++valid;
  }
  Corpus c = LoadCocoFromString(text);
  ASSERT_EQ(c.size(), oracle.size());
  size_t i = 0;
  for (const auto& [id, caps] : oracle) {
    EXPECT_EQ(c.Iterate()[i].image_id, id);
    EXPECT_EQ(c.Iterate()[i].captions, caps);
    ++i;
  }
  EXPECT_EQ(c.CaptionCount(), valid);
  EXPECT_EQ(c.dropped_blank(), 1u);
  ASSERT_NE(c.Find(9), nullptr);
  EXPECT_EQ(c.Find(9)->captions.size(), 3u);
}

TEST(LoadCocoTest, DimensionsAttached) {
  Corpus c = LoadCoco(DataPath("captions_small.json"));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.Find(7)->width, 640);
  EXPECT_EQ(c.Find(7)->height, 480);
  EXPECT_FALSE(c.Find(12)->HasDims());
}

TEST(LoadCocoTest, DuplicateCaptionsKeptAndCounted) {
  Corpus c = LoadCocoFromString(R"({"annotations":[
      {"image_id":1,"caption":"a dog"},{"image_id":1,"caption":"a dog"}]})");
  EXPECT_EQ(c.Find(1)->captions.size(), 2u);
  EXPECT_EQ(c.duplicate_captions(), 1u);
}

TEST(CorpusTest, IteratesInAscendingIdOrder) {
  Corpus c({{12, {}, {}, {"c"}}, {3, {}, {}, {"a"}}, {7, {}, {}, {"b"}}}, "x");
  std::vector<ImageId> ids;
  for (const auto& r : c.Iterate()) ids.push_back(r.image_id);
  EXPECT_EQ(ids, (std::vector<ImageId>{3, 7, 12}));
  std::vector<ImageId> again;
  for (const auto& r : c.Iterate()) again.push_back(r.image_id);
  EXPECT_EQ(ids, again);
}

TEST(CorpusTest, EmptyCorpusYieldsNothing) {
  Corpus c;
  EXPECT_TRUE(c.Iterate().empty());
}

TEST(CorpusTest, DuplicateIdsRejected) {
  EXPECT_EQ(CodeOf([] { Corpus c({{1, {}, {}, {"a"}}, {1, {}, {}, {"b"}}}, "x"); }),
            ErrorCode::kMalformedInput);
}

TEST(CorpusTest, SaveLoadRoundTripIsIdempotent) {
  Corpus first = LoadCoco(DataPath("captions_golden.json"));
  testing::TempDir dir("corpus");
  SaveCoco(first, dir.File("c.json"));
  Corpus second = LoadCoco(dir.File("c.json"));
  ASSERT_EQ(first.size(), second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first.Iterate()[i], second.Iterate()[i]);
  }
}

TEST(CorpusTest, CaptionCountEqualsValidAnnotations) {
  Corpus fixture = testing::FixtureCorpus(100, 3);
  const std::string json = CorpusToCocoJson(fixture);
  size_t annotations = nlohmann::json::parse(json)["annotations"].size();
  EXPECT_EQ(LoadCocoFromString(json).CaptionCount(), annotations);
  EXPECT_EQ(annotations, 500u);
}

}  // namespace
}  // namespace capqa
