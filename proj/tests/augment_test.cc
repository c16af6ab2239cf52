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

#include "capqa/augment.h"

#include <chrono>
#include <thread>

#include <gtest/gtest.h>
#include "capqa/error.h"
#include "httplib.h"
#include "test_util.h"

namespace capqa {
namespace {

const std::string kBackpack =
    "Is the girl who is to the left of the sailboats wearing a backpack?";

QAPair Pair(const std::string& id, const std::string& question, const std::string& answer,
            AnswerType type = AnswerType::kYesNo) {
  QAPair qa;
  qa.qa_id = id;
  qa.image_id = 42;
  qa.question = question;
  qa.answer = answer;
  qa.answer_type = type;
  return qa;
}

std::string FakeRewriter(const std::string& args = "") {
  return std::string(CAPQA_FAKE_REWRITER) + (args.empty() ? "" : " " + args);
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

TEST(RewriteProtocolTest, RequestValidation) {
  RewriteRequest r{"1", "Is there a dog?", RewriteMode::kBacktranslate, std::nullopt};
  EXPECT_EQ(CodeOf([&] { r.Validate(); }), ErrorCode::kMalformedInput);
  r.pivot_language = "it";
  EXPECT_EQ(CodeOf([&] { r.Validate(); }), ErrorCode::kMalformedInput);
  r.pivot_language = "es";
  EXPECT_NO_THROW(r.Validate());
  r.mode = RewriteMode::kParaphrase;
  EXPECT_EQ(CodeOf([&] { r.Validate(); }), ErrorCode::kMalformedInput);
  r.pivot_language.reset();
  r.text = "";
  EXPECT_EQ(CodeOf([&] { r.Validate(); }), ErrorCode::kMalformedInput);
}

TEST(RewriteProtocolTest, JsonRoundTrip) {
  RewriteRequest r{"7:backtranslate", kBackpack, RewriteMode::kBacktranslate, "de"};
  RewriteRequest back = RequestFromJson(RequestToJson(r));
  EXPECT_EQ(back.request_id, r.request_id);
  EXPECT_EQ(back.text, r.text);
  EXPECT_EQ(back.mode, r.mode);
  EXPECT_EQ(back.pivot_language, r.pivot_language);
  RewriteResponse resp{"7:backtranslate", {"a?", "b?"}};
  RewriteResponse rb = ResponseFromJson(ResponseToJson(resp));
  EXPECT_EQ(rb.request_id, resp.request_id);
  EXPECT_EQ(rb.rewrites, resp.rewrites);
  EXPECT_THROW(ResponseFromJson("[1,2]"), Error);
}

TEST(BuiltinRewriteTest, RuleTable) {
  auto dog = BuiltinRewrite("Is there a dog?", 1, 5);
  EXPECT_NE(std::find(dog.begin(), dog.end(), "Can you see a dog?"), dog.end());
  auto cars = BuiltinRewrite("How many cars are visible?", 1, 5);
  EXPECT_NE(std::find(cars.begin(), cars.end(), "How many cars can be seen?"), cars.end());
  EXPECT_NE(std::find(cars.begin(), cars.end(), "How many cars are we looking at?"),
            cars.end());
  auto seen = BuiltinRewrite("How many cars can be seen?", 1, 5);
  EXPECT_NE(std::find(seen.begin(), seen.end(), "How many cars are visible?"), seen.end());
  auto what = BuiltinRewrite("What is the man holding?", 1, 5);
  EXPECT_NE(std::find(what.begin(), what.end(), "What's the man holding?"), what.end());
  auto isnt = BuiltinRewrite("Why isn't the dog running?", 1, 5);
  EXPECT_NE(std::find(isnt.begin(), isnt.end(), "Why is not the dog running?"), isnt.end());
  EXPECT_TRUE(BuiltinRewrite("Who is sitting?", 1, 5).empty());
  EXPECT_TRUE(BuiltinRewrite("Is there no boy?", 1, 5).empty());
}

TEST(BuiltinRewriteTest, DeterministicBoundedSubset) {
  const std::string q = "How many cars are visible?";
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto a = BuiltinRewrite(q, seed, 1);
    EXPECT_EQ(a, BuiltinRewrite(q, seed, 1));
    EXPECT_LE(a.size(), 1u);
    auto all = BuiltinRewrite(q, seed, 10);
    for (const auto& x : a) EXPECT_NE(std::find(all.begin(), all.end(), x), all.end());
  }
}

TEST(PreservesAnswerTest, PresenceMustNotChange) {
  EXPECT_TRUE(PreservesAnswer("How many cars are visible?", "How many cars can be seen?", "3"));
  EXPECT_FALSE(PreservesAnswer("What is on the bed?", "What cat is on the bed?", "cat"));
  EXPECT_FALSE(PreservesAnswer("Is there a cat on the bed?", "Is there a dog on the bed?",
                               "cat"));
  EXPECT_FALSE(PreservesAnswer("What is on the bed?", "What cats are on the bed?", "cat"));
}

TEST(AugmentSubprocessTest, BackTranslationBox) {
  SubprocessRewriter rewriter(FakeRewriter(), 10);
  AugmentConfig cfg;
  cfg.modes = {RewriteMode::kBacktranslate};
  cfg.pivots = {"es"};
  std::vector<QAPair> in = {Pair("p1", kBackpack, "yes")};
  AugmentStats stats;
  auto out = AugmentBatch(in, &rewriter, cfg, &stats);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], in[0]);
  EXPECT_EQ(out[1].question, "Does the girl to the left of the sailboats carry a backpack?");
  EXPECT_EQ(out[1].answer, "yes");
  EXPECT_EQ(out[1].answer_type, AnswerType::kYesNo);
  EXPECT_EQ(out[1].image_id, 42);
  EXPECT_EQ(out[1].source, Source::kBacktranslate);
  EXPECT_EQ(out[1].parent_qa_id, "p1");
  EXPECT_NE(out[1].qa_id, "p1");
  EXPECT_EQ(stats.accepted, 1u);
  EXPECT_EQ(stats.fallback_batches, 0u);
}

TEST(AugmentSubprocessTest, ParaphraseRow) {
  SubprocessRewriter rewriter(FakeRewriter(), 10);
  AugmentConfig cfg;
  auto out = AugmentBatch(
      std::vector<QAPair>{Pair("p2", "How many cars are visible?", "3", AnswerType::kNumber)},
      &rewriter, cfg);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].question, "How many cars are we looking at?");
  EXPECT_EQ(out[1].source, Source::kParaphrase);
  EXPECT_EQ(out[1].answer, "3");
}

TEST(AugmentSubprocessTest, VerbatimRewritesAddNothing) {
  SubprocessRewriter rewriter(FakeRewriter("--echo"), 10);
  std::vector<QAPair> in = {Pair("a", kBackpack, "yes"), Pair("b", "Is there a dog?", "no")};
  auto out = AugmentBatch(in, &rewriter, AugmentConfig());
  EXPECT_EQ(out, in);
}

TEST(AugmentSubprocessTest, AnswerChangingRewritesRejected) {
  SubprocessRewriter rewriter(FakeRewriter("--append cat"), 10);
  AugmentStats stats;
  auto out = AugmentBatch(
      std::vector<QAPair>{Pair("a", "What is on the bed?", "cat", AnswerType::kObject),
                          Pair("b", "Is there a dog?", "yes")},
      &rewriter, AugmentConfig(), &stats);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[2].question, "Is there a dog cat?");
  EXPECT_EQ(stats.rejected, 1u);
}

TEST(AugmentSubprocessTest, FailureFallsBackOrThrows) {
  std::vector<QAPair> in = {Pair("a", "Is there a dog?", "yes")};
  AugmentConfig cfg;
  SubprocessRewriter failing(FakeRewriter("--fail"), 10);
  AugmentStats stats;
  auto out = AugmentBatch(in, &failing, cfg, &stats);
  EXPECT_EQ(stats.fallback_batches, 1u);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].question, "Can you see a dog?");

  cfg.fallback = false;
  EXPECT_EQ(CodeOf([&] { AugmentBatch(in, &failing, cfg); }),
            ErrorCode::kRewriterUnavailable);
  SubprocessRewriter missing("/nonexistent/rewriter", 10);
  EXPECT_EQ(CodeOf([&] { AugmentBatch(in, &missing, cfg); }),
            ErrorCode::kRewriterUnavailable);
}

TEST(AugmentSubprocessTest, TimeoutIsUnavailable) {
  SubprocessRewriter slow(FakeRewriter("--sleep 5"), 0.3);
  AugmentConfig cfg;
  cfg.fallback = false;
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(CodeOf([&] {
              AugmentBatch(std::vector<QAPair>{Pair("a", "Is there a dog?", "yes")}, &slow,
                           cfg);
            }),
            ErrorCode::kRewriterUnavailable);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
}

TEST(AugmentBuiltinTest, InvariantsOverManyPairs) {
  std::vector<QAPair> in;
  const std::vector<std::string> questions = {
      "Is there a dog?", "How many cars are visible?", "What is the man holding?",
      "Are there two cats on the sofa?", "Where is the girl sitting?", "Who is sitting?"};
  for (size_t i = 0; i < 60; ++i) {
    in.push_back(Pair("id" + std::to_string(i), questions[i % questions.size()], "x",
                      AnswerType::kObject));
  }
  AugmentConfig cfg;
  cfg.seed = 3;
  cfg.modes = {RewriteMode::kParaphrase, RewriteMode::kBacktranslate};
  cfg.max_variants = 1;
  cfg.batch_size = 7;
  auto out = AugmentBatch(in, nullptr, cfg);
  EXPECT_LE(out.size(), in.size() * (1 + cfg.max_variants));
  EXPECT_GT(out.size(), in.size());
  std::map<std::string, const QAPair*> originals;
  for (const auto& qa : in) originals[qa.qa_id] = &qa;
  for (const auto& qa : out) {
    if (qa.parent_qa_id.empty()) {
      EXPECT_TRUE(originals.count(qa.qa_id));
      continue;
    }
    const QAPair& parent = *originals.at(qa.parent_qa_id);
    EXPECT_EQ(qa.answer, parent.answer);
    EXPECT_EQ(qa.answer_type, parent.answer_type);
    EXPECT_EQ(qa.image_id, parent.image_id);
    EXPECT_TRUE(qa.source == Source::kParaphrase || qa.source == Source::kBacktranslate);
    EXPECT_EQ(qa.question.back(), '?');
  }
  EXPECT_EQ(out, AugmentBatch(in, nullptr, cfg));
}

TEST(AugmentConfigTest, Validation) {
  AugmentConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.keep_probability = 1.5;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = AugmentConfig();
  cfg.pivots = {"xx"};
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = AugmentConfig();
  cfg.batch_size = 0;
  EXPECT_THROW(cfg.Validate(), Error);
}

class HttpRewriterTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/rewrite", [](const httplib::Request& req, httplib::Response& res) {
      RewriteRequest r = RequestFromJson(req.body);
      RewriteResponse out{r.request_id, {}};
      if (r.text == kBackpack && r.mode == RewriteMode::kBacktranslate) {
        out.rewrites.push_back("Does the girl to the left of the sailboats carry a backpack?");
      } else {
        out.rewrites.push_back(r.text);
      }
      res.set_content(ResponseToJson(out), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(HttpRewriterTest, BackTranslationOverHttp) {
  HttpRewriter rewriter("http://127.0.0.1:" + std::to_string(port_), 5, 3);
  AugmentConfig cfg;
  cfg.modes = {RewriteMode::kBacktranslate};
  std::vector<QAPair> in;
  for (int i = 0; i < 10; ++i) {
    in.push_back(Pair("h" + std::to_string(i), i == 4 ? kBackpack : "Is there a dog?", "yes"));
  }
  auto out = AugmentBatch(in, &rewriter, cfg);
  ASSERT_EQ(out.size(), 11u);
  EXPECT_EQ(out[4].qa_id, "h4");
  EXPECT_EQ(out[5].question, "Does the girl to the left of the sailboats carry a backpack?");
  EXPECT_EQ(out[5].parent_qa_id, "h4");
}

TEST(HttpRewriterUnreachableTest, Unavailable) {
  HttpRewriter rewriter("http://127.0.0.1:1", 1, 2);
  AugmentConfig cfg;
  cfg.fallback = false;
  EXPECT_EQ(CodeOf([&] {
              AugmentBatch(std::vector<QAPair>{Pair("a", "Is there a dog?", "yes")},
                           &rewriter, cfg);
            }),
            ErrorCode::kRewriterUnavailable);
}

}  // namespace
}  // namespace capqa
