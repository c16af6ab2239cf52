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

#include "capqa/pipeline.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include "capqa/error.h"
#include "capqa/patches.h"
#include "capqa/pretrain_data.h"
#include "json.hpp"
#include "test_util.h"

namespace capqa {
namespace {

using testing::DataPath;
using testing::ReadFile;

struct RunResult {
  int code = -1;
  std::string output;
};

// Runs the command-line tool with stderr folded into the captured output.
RunResult Cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + CAPQA_CLI + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string Inputs(const std::string& captions = DataPath("captions_small.json")) {
  return "--captions " + captions + " --vectors " + DataPath("vectors.txt");
}

class CliTest : public ::testing::Test {
 protected:
  testing::TempDir dir_{::testing::UnitTest::GetInstance()->current_test_info()->name()};
};

TEST_F(CliTest, GenerateMatchesFrozenGolden) {
  const std::string out = dir_.File("small.jsonl");
  RunResult r = Cli(Inputs() + " --seed 7 generate -o " + out);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(ReadFile(out), ReadFile(DataPath("golden_small.jsonl")));
  // Sorted by (image_id, qa_id), weights populated, every line parses.
  std::vector<QAPair> pairs = ReadQaJsonl(out);
  ASSERT_FALSE(pairs.empty());
  for (size_t i = 1; i < pairs.size(); ++i) {
    EXPECT_LE(std::tie(pairs[i - 1].image_id, pairs[i - 1].qa_id),
              std::tie(pairs[i].image_id, pairs[i].qa_id));
  }
  for (const auto& qa : pairs) {
    EXPECT_TRUE(qa.weights.has_value());
    EXPECT_EQ(QaInvariantViolation(qa), "");
  }
  auto manifest = nlohmann::json::parse(ReadFile(out + ".manifest.json"));
  EXPECT_EQ(manifest["config"]["seed"], 7);
  EXPECT_EQ(manifest["vectors"]["dim"], 6);
  EXPECT_EQ(manifest["vectors"]["words"], 16);
}

TEST_F(CliTest, SameSeedAndAnyWorkerCountAreByteIdentical) {
  Corpus fixture = testing::FixtureCorpus(200, 1);
  SaveCoco(fixture, dir_.File("fixture.json"));
  const std::string base = Inputs(dir_.File("fixture.json")) + " --seed 11";
  ASSERT_EQ(Cli(base + " generate -o " + dir_.File("a.jsonl")).code, 0);
  ASSERT_EQ(Cli(base + " generate -o " + dir_.File("b.jsonl")).code, 0);
  ASSERT_EQ(Cli(base + " --workers 4 generate -o " + dir_.File("c.jsonl")).code, 0);
  const std::string a = ReadFile(dir_.File("a.jsonl"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, ReadFile(dir_.File("b.jsonl")));
  EXPECT_EQ(a, ReadFile(dir_.File("c.jsonl")));
  ASSERT_EQ(Cli(Inputs(dir_.File("fixture.json")) + " --seed 12 generate -o " +
                dir_.File("d.jsonl")).code, 0);
  EXPECT_NE(a, ReadFile(dir_.File("d.jsonl")));
}

TEST_F(CliTest, MissingVectorsNamesPathAndLeavesNoOutput) {
  const std::string out = dir_.File("x.jsonl");
  RunResult r = Cli("--captions " + DataPath("captions_small.json") +
                    " --vectors /nonexistent/glove.txt generate -o " + out);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("/nonexistent/glove.txt"), std::string::npos) << r.output;
  EXPECT_FALSE(std::filesystem::exists(out));
  EXPECT_FALSE(std::filesystem::exists(out + ".tmp"));

  // Without adversarial substitution vectors are not needed.
  RunResult ok = Cli("--captions " + DataPath("captions_small.json") +
                     " generate --no-adversarial -o " + out);
  EXPECT_EQ(ok.code, 0) << ok.output;
}

TEST_F(CliTest, BadUsageExitsTwo) {
  EXPECT_EQ(Cli("generate").code, 2);
  EXPECT_EQ(Cli("frobnicate").code, 2);
  EXPECT_EQ(Cli("--workers 0 generate -o x").code, 2);
}

TEST_F(CliTest, EnvSeedOverridesConfigAndFlagOverridesEnv) {
  testing::WriteFile(dir_.File("cfg.json"), R"({"seed": 5, "gen": {"split_threshold": 12}})");
  const std::string base = Inputs() + " --config " + dir_.File("cfg.json");
  ASSERT_EQ(Cli(base + " generate -o " + dir_.File("a.jsonl")).code, 0);
  ASSERT_EQ(Cli(base + " generate -o " + dir_.File("b.jsonl"), "CAPQA_SEED=9").code, 0);
  ASSERT_EQ(Cli(base + " --seed 5 generate -o " + dir_.File("c.jsonl"), "CAPQA_SEED=9").code,
            0);
  auto seed_of = [&](const std::string& f) {
    return nlohmann::json::parse(ReadFile(dir_.File(f) + ".manifest.json"))["config"]["seed"]
        .get<uint64_t>();
  };
  EXPECT_EQ(seed_of("a.jsonl"), 5u);
  EXPECT_EQ(seed_of("b.jsonl"), 9u);
  EXPECT_EQ(seed_of("c.jsonl"), 5u);
  EXPECT_EQ(ReadFile(dir_.File("a.jsonl")), ReadFile(dir_.File("c.jsonl")));

  testing::WriteFile(dir_.File("bad.json"), R"({"sede": 5})");
  RunResult bad = Cli(Inputs() + " --config " + dir_.File("bad.json") + " generate -o " +
                      dir_.File("z.jsonl"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.output.find("sede"), std::string::npos) << bad.output;
}

TEST_F(CliTest, SrlFramesAddPhrasePairs) {
  RunResult r = Cli(Inputs() + " --srl-frames " + DataPath("frames.jsonl") +
                    " generate -o " + dir_.File("s.jsonl"));
  ASSERT_EQ(r.code, 0) << r.output;
  size_t srl = 0;
  for (const auto& qa : ReadQaJsonl(dir_.File("s.jsonl"))) {
    if (qa.source == Source::kSrl) ++srl;
  }
  EXPECT_EQ(srl, 4u);
  EXPECT_NE(r.output.find("dropped 1"), std::string::npos) << r.output;
}

TEST_F(CliTest, PatchesCountsDimsAndDefaults) {
  // captions_small: two images with dimensions, one without.
  RunResult missing = Cli(Inputs() + " patches -o " + dir_.File("m.jsonl"));
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.output.find("12"), std::string::npos) << missing.output;

  Corpus two = LoadCoco(DataPath("captions_small.json"));
  std::vector<CaptionRecord> with_dims(two.Iterate().begin(), two.Iterate().begin() + 2);
  SaveCoco(Corpus(with_dims, "x"), dir_.File("two.json"));
  RunResult ok = Cli("--captions " + dir_.File("two.json") + " patches -o " +
                     dir_.File("m2.jsonl"));
  ASSERT_EQ(ok.code, 0) << ok.output;
  EXPECT_EQ(Lines(ReadFile(dir_.File("m2.jsonl"))).size(), 168u);

  RunResult defaults = Cli(Inputs() + " patches --default-dims 640x480 -o " +
                           dir_.File("m3.jsonl"));
  ASSERT_EQ(defaults.code, 0) << defaults.output;
  auto specs = ReadManifest(dir_.File("m3.jsonl"));
  ASSERT_EQ(specs.size(), 3u);
  EXPECT_EQ(specs[2].image_id, 12);
  EXPECT_EQ(specs[2], Pyramid(12, 640, 480, kDefaultLevels));
}

TEST_F(CliTest, SampleEpoch) {
  std::vector<QAPair> pairs;
  for (int i = 0; i < 10; ++i) {
    QAPair qa;
    qa.qa_id = "a" + std::to_string(i);
    qa.image_id = 1;
    qa.question = "Q" + std::to_string(i) + "?";
    qa.answer = "x";
    pairs.push_back(qa);
  }
  for (int i = 0; i < 2; ++i) {
    QAPair qa;
    qa.qa_id = "b" + std::to_string(i);
    qa.image_id = 2;
    qa.question = "R?";
    qa.answer = "y";
    pairs.push_back(qa);
  }
  WriteQaJsonl(dir_.File("in.jsonl"), pairs);
  std::set<std::string> selections;
  for (int epoch = 1; epoch <= 4; ++epoch) {
    const std::string out = dir_.File("e" + std::to_string(epoch) + ".jsonl");
    RunResult r = Cli("--seed 3 sample-epoch -i " + dir_.File("in.jsonl") + " --epoch " +
                      std::to_string(epoch) + " -o " + out);
    ASSERT_EQ(r.code, 0) << r.output;
    auto got = ReadQaJsonl(out);
    std::map<ImageId, size_t> per_image;
    for (const auto& qa : got) ++per_image[qa.image_id];
    EXPECT_EQ(per_image[1], 3u);
    EXPECT_EQ(per_image[2], 2u);
    // Output keeps input order.
    size_t cursor = 0;
    for (const auto& qa : got) {
      while (cursor < pairs.size() && pairs[cursor].qa_id != qa.qa_id) ++cursor;
      EXPECT_LT(cursor, pairs.size());
    }
    selections.insert(ReadFile(out));
    if (epoch == 1) {
      RunResult again = Cli("--seed 3 sample-epoch -i " + dir_.File("in.jsonl") +
                            " --epoch 1 -o " + dir_.File("again.jsonl"));
      ASSERT_EQ(again.code, 0);
      EXPECT_EQ(ReadFile(out), ReadFile(dir_.File("again.jsonl")));
    }
  }
  EXPECT_GT(selections.size(), 1u);

  testing::WriteFile(dir_.File("bad.jsonl"), "{\"qa_id\": 3}\n");
  EXPECT_EQ(Cli("sample-epoch -i " + dir_.File("bad.jsonl") + " --epoch 1 -o " +
                dir_.File("o.jsonl")).code,
            1);
}

TEST_F(CliTest, DownstreamStagesCompose) {
  const std::string gen = dir_.File("gen.jsonl");
  ASSERT_EQ(Cli(Inputs() + " generate -o " + gen).code, 0);

  const std::string aug = dir_.File("aug.jsonl");
  RunResult a = Cli("--rewriter '" + std::string(CAPQA_FAKE_REWRITER) +
                    "' augment --mode paraphrase --mode backtranslate -i " + gen + " -o " + aug);
  ASSERT_EQ(a.code, 0) << a.output;
  EXPECT_GE(ReadQaJsonl(aug).size(), ReadQaJsonl(gen).size());

  const std::string fallback = dir_.File("fb.jsonl");
  RunResult fb = Cli("--rewriter '" + std::string(CAPQA_FAKE_REWRITER) +
                     " --fail' augment -i " + gen + " -o " + fallback);
  EXPECT_EQ(fb.code, 0) << fb.output;
  RunResult nofb = Cli("--rewriter '" + std::string(CAPQA_FAKE_REWRITER) +
                       " --fail' augment --no-fallback -i " + gen + " -o " + fallback + "2");
  EXPECT_EQ(nofb.code, 1);

  const std::string weighed = dir_.File("w.jsonl");
  ASSERT_EQ(Cli("weigh -i " + aug + " -o " + weighed).code, 0);
  for (const auto& qa : ReadQaJsonl(weighed)) EXPECT_TRUE(qa.weights.has_value());

  const std::string vocab = dir_.File("vocab.txt");
  const std::string targets = dir_.File("targets.jsonl");
  ASSERT_EQ(Cli("vocab -i " + weighed + " -o " + vocab + " --targets " + targets).code, 0);
  EXPECT_EQ(ReadFile(vocab).rfind("#capqa-vocab v1 count=", 0), 0u);
  EXPECT_EQ(Lines(ReadFile(targets)).size(), ReadQaJsonl(weighed).size());
  EXPECT_EQ(Cli("vocab --min-count 100000 -i " + weighed + " -o " + vocab).code, 1);

  const std::string samples = dir_.File("pre.jsonl");
  RunResult p = Cli(Inputs() + " pretrain --dataset " + gen + " -o " + samples);
  ASSERT_EQ(p.code, 0) << p.output;
  std::map<std::string, size_t> tasks;
  for (const auto& line : Lines(ReadFile(samples))) {
    ++tasks[std::string(PretrainTaskName(PretrainSampleFromJson(line).task))];
  }
  EXPECT_EQ(tasks["mlm"], 3u);
  EXPECT_EQ(tasks["mqa"], ReadQaJsonl(gen).size());
  EXPECT_GE(tasks["itm"], 3u);

  const std::string report = dir_.File("report.json");
  const std::string emb = dir_.File("emb.txt");
  RunResult s = Cli("--vectors " + DataPath("vectors.txt") + " stats -i " + gen +
                    " --report " + report + " --embeddings " + emb);
  ASSERT_EQ(s.code, 0) << s.output;
  auto j = nlohmann::json::parse(ReadFile(report));
  EXPECT_EQ(j["total"].get<size_t>(), ReadQaJsonl(gen).size());
  EXPECT_DOUBLE_EQ(j["yes_ratio"].get<double>(), 0.5);
  EXPECT_EQ(Lines(ReadFile(emb)).size(), ReadQaJsonl(gen).size());
}

TEST(PipelineConfigTest, JsonKeysAndValidation) {
  PipelineConfig cfg;
  ApplyConfigJson(R"({"seed": 3, "workers": 2, "levels": [1, 2],
                      "default_dims": "320x200", "gen": {"adversarial_threshold": 0.5},
                      "augment": {"max_variants": 4}})",
                  &cfg);
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.workers, 2u);
  EXPECT_EQ(cfg.levels, (std::vector<int>{1, 2}));
  EXPECT_EQ(cfg.default_dims, (std::pair<int64_t, int64_t>{320, 200}));
  EXPECT_EQ(cfg.gen.adversarial_threshold, 0.5);
  EXPECT_EQ(cfg.augment.max_variants, 4u);
  EXPECT_THROW(ApplyConfigJson(R"({"bogus": 1})", &cfg), Error);
  EXPECT_THROW(ApplyConfigJson(R"({"default_dims": "wide"})", &cfg), Error);

  PipelineConfig paths;
  paths.captions = "/nonexistent/c.json";
  EXPECT_THROW(paths.Validate(), Error);
  PipelineConfig zero;
  zero.questions_per_image_per_epoch = 0;
  EXPECT_THROW(zero.Validate(), Error);

  PipelineConfig round;
  ApplyConfigJson(PipelineConfigToJson(cfg), &round);
  EXPECT_EQ(PipelineConfigToJson(round), PipelineConfigToJson(cfg));
}

TEST(PipelineConfigTest, SeedEnv) {
  PipelineConfig cfg;
  cfg.seed = 1;
  setenv("CAPQA_SEED", "77", 1);
  ApplySeedEnv(&cfg);
  unsetenv("CAPQA_SEED");
  EXPECT_EQ(cfg.seed, 77u);
}

TEST(SampleEpochTest, ClampAndDeterminism) {
  std::vector<QAPair> pairs(7);
  for (size_t i = 0; i < pairs.size(); ++i) {
    pairs[i].qa_id = std::to_string(i);
    pairs[i].image_id = i < 5 ? 1 : 2;
  }
  PipelineConfig cfg;
  cfg.questions_per_image_per_epoch = 3;
  auto a = SampleEpoch(pairs, 1, cfg);
  EXPECT_EQ(a.size(), 5u);
  EXPECT_EQ(a, SampleEpoch(pairs, 1, cfg));
}

}  // namespace
}  // namespace capqa
