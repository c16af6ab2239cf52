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

// capqa: command-line front end for the caption-to-QA pipeline.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capqa/error.h"
#include "capqa/pipeline.h"

namespace {

struct Flags {
  std::string config;
  uint64_t seed = 0;
  size_t workers = 1;
  std::string captions;
  std::string vectors;
  size_t vectors_limit = 0;
  std::string srl_frames;
  std::string lexicons;
  std::string rewriter;

  std::string input;
  std::string output;

  bool no_templates = false;
  bool no_adversarial = false;
  size_t max_questions = 0;
  double threshold = 0.4;
  std::string no_transform;
  std::vector<std::string> yesno_prefixes;
  size_t split_threshold = 14;

  std::vector<std::string> modes;
  size_t max_variants = 2;
  double keep_probability = 1.0;
  double timeout = 30.0;
  bool no_fallback = false;

  size_t min_count = 1;
  std::string targets;

  std::vector<int> levels;
  std::string default_dims;

  std::string dataset;
  double neg_ratio = 1.0;

  int64_t epoch = 0;
  size_t per_image = 3;

  std::string report;
  std::string embeddings;
};

bool Given(const CLI::App& app, const std::string& name) {
  const CLI::Option* opt = app.get_option_no_throw(name);
  return opt && opt->count() > 0;
}

capqa::PipelineConfig BuildConfig(const CLI::App& app, const CLI::App& sub,
                                  const Flags& f) {
  capqa::PipelineConfig cfg;
  if (!f.config.empty()) cfg = capqa::LoadPipelineConfig(f.config);
  capqa::ApplySeedEnv(&cfg);
  if (Given(app, "--seed")) cfg.seed = f.seed;
  if (Given(app, "--workers")) cfg.workers = f.workers;
  if (Given(app, "--captions")) cfg.captions = f.captions;
  if (Given(app, "--vectors")) cfg.vectors = f.vectors;
  if (Given(app, "--vectors-limit")) cfg.vectors_limit = f.vectors_limit;
  if (Given(app, "--srl-frames")) cfg.srl_frames = f.srl_frames;
  if (Given(app, "--lexicons")) cfg.lexicons = f.lexicons;
  if (Given(app, "--rewriter")) cfg.rewriter = f.rewriter;

  if (Given(sub, "--no-templates")) cfg.templates = false;
  if (Given(sub, "--no-adversarial")) cfg.adversarial = false;
  if (Given(sub, "--max-questions-per-caption")) cfg.gen.max_questions_per_caption = f.max_questions;
  if (Given(sub, "--threshold")) cfg.gen.adversarial_threshold = f.threshold;
  if (Given(sub, "--split-threshold")) cfg.gen.split_threshold = f.split_threshold;
  if (Given(sub, "--yesno-prefix")) cfg.gen.yesno_prefixes = f.yesno_prefixes;
  if (Given(sub, "--no-transform")) {
    if (f.no_transform == "seeded") cfg.gen.no_transform = capqa::NoTransform::kSeeded;
    else if (f.no_transform == "negation") cfg.gen.no_transform = capqa::NoTransform::kNegation;
    else cfg.gen.no_transform = capqa::NoTransform::kAdversarial;
  }
  if (Given(sub, "--mode")) {
    cfg.augment.modes.clear();
    for (const auto& m : f.modes) cfg.augment.modes.push_back(capqa::ParseRewriteMode(m));
  }
  if (Given(sub, "--max-variants")) cfg.augment.max_variants = f.max_variants;
  if (Given(sub, "--keep-probability")) cfg.augment.keep_probability = f.keep_probability;
  if (Given(sub, "--timeout")) cfg.augment.timeout_seconds = f.timeout;
  if (Given(sub, "--no-fallback")) cfg.augment.fallback = false;
  if (Given(sub, "--min-count")) cfg.min_count = f.min_count;
  if (Given(sub, "--levels")) cfg.levels = f.levels;
  if (Given(sub, "--default-dims")) {
    capqa::ApplyConfigJson("{\"default_dims\": \"" + f.default_dims + "\"}", &cfg);
  }
  if (Given(sub, "--neg-ratio")) cfg.neg_ratio = f.neg_ratio;
  if (Given(sub, "--per-image")) cfg.questions_per_image_per_epoch = f.per_image;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize weighted visual QA data from image captions."};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "JSON config file");
  app.add_option("--seed", f.seed, "Random seed (overrides config and CAPQA_SEED)");
  app.add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--captions", f.captions, "COCO captions JSON");
  app.add_option("--vectors", f.vectors, "Word vectors text file");
  app.add_option("--vectors-limit", f.vectors_limit, "Keep only the first N vectors");
  app.add_option("--srl-frames", f.srl_frames, "SRL frames JSONL");
  app.add_option("--lexicons", f.lexicons, "Lexicon override JSON");
  app.add_option("--rewriter", f.rewriter, "Rewriter command or http:// endpoint");

  CLI::App* generate = app.add_subcommand("generate", "Generate QA pairs from captions");
  generate->add_option("-o,--output", f.output, "Output JSONL")->required();
  generate->add_flag("--no-templates", f.no_templates, "Skip template questions");
  generate->add_flag("--no-adversarial", f.no_adversarial, "No embedding substitution");
  generate->add_option("--max-questions-per-caption", f.max_questions, "0 = unlimited");
  generate->add_option("--threshold", f.threshold, "Adversarial cosine threshold");
  generate->add_option("--split-threshold", f.split_threshold, "Long-caption split length");
  generate->add_option("--yesno-prefix", f.yesno_prefixes, "Yes-No question prefix");
  generate->add_option("--no-transform", f.no_transform, "How 'no' questions are made")
      ->check(CLI::IsMember({"seeded", "negation", "adversarial"}));

  CLI::App* augment = app.add_subcommand("augment", "Paraphrase / back-translate questions");
  augment->add_option("-i,--input", f.input, "Input JSONL")->required();
  augment->add_option("-o,--output", f.output, "Output JSONL")->required();
  augment->add_option("--mode", f.modes, "paraphrase and/or backtranslate")
      ->check(CLI::IsMember({"paraphrase", "backtranslate"}));
  augment->add_option("--max-variants", f.max_variants, "Rewrites kept per question");
  augment->add_option("--keep-probability", f.keep_probability, "Keep rate per rewrite");
  augment->add_option("--timeout", f.timeout, "Seconds per batch");
  augment->add_flag("--no-fallback", f.no_fallback, "Fail when the rewriter is unavailable");

  CLI::App* weigh = app.add_subcommand("weigh", "Attach sub-phrase answer weights");
  weigh->add_option("-i,--input", f.input, "Input JSONL")->required();
  weigh->add_option("-o,--output", f.output, "Output JSONL")->required();

  CLI::App* vocab = app.add_subcommand("vocab", "Build the answer vocabulary");
  vocab->add_option("-i,--input", f.input, "Input JSONL")->required();
  vocab->add_option("-o,--output", f.output, "Vocabulary file")->required();
  vocab->add_option("--min-count", f.min_count, "Minimum phrase frequency");
  vocab->add_option("--targets", f.targets, "Also write sparse SWA targets here");

  CLI::App* patches = app.add_subcommand("patches", "Write the patch manifest");
  patches->add_option("-o,--output", f.output, "Manifest JSONL")->required();
  patches->add_option("--levels", f.levels, "Grid sizes, ascending");
  patches->add_option("--default-dims", f.default_dims, "WxH for images without dims");

  CLI::App* pretrain = app.add_subcommand("pretrain", "Write MLM / MQA / ITM samples");
  pretrain->add_option("-o,--output", f.output, "Samples JSONL")->required();
  pretrain->add_option("--dataset", f.dataset, "QA JSONL for MQA samples");
  pretrain->add_option("--neg-ratio", f.neg_ratio, "ITM negatives per caption");

  CLI::App* sample = app.add_subcommand("sample-epoch", "Sample questions for one epoch");
  sample->add_option("-i,--input", f.input, "Input JSONL")->required();
  sample->add_option("-o,--output", f.output, "Output JSONL")->required();
  sample->add_option("--epoch", f.epoch, "Epoch number")->required();
  sample->add_option("--per-image", f.per_image, "Questions per image")
      ->check(CLI::PositiveNumber);

  CLI::App* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->add_option("-i,--input", f.input, "Input JSONL")->required();
  stats->add_option("--report", f.report, "Write the report JSON here");
  stats->add_option("--embeddings", f.embeddings, "Export mean-pooled question vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const capqa::PipelineConfig cfg = BuildConfig(app, *sub, f);
    if (sub == generate) {
      const capqa::GenerateResult r = capqa::RunGenerate(cfg, f.output);
      std::cout << r.report.ToJson() << '\n';
      if (r.srl_frames_dropped > 0) {
        std::cerr << "capqa: dropped " << r.srl_frames_dropped
                  << " SRL frames with unknown image or caption\n";
      }
    } else if (sub == augment) {
      const capqa::AugmentStats s = capqa::RunAugment(cfg, f.input, f.output);
      std::cerr << "capqa: " << s.requests << " requests, " << s.accepted << " accepted, "
                << s.rejected << " rejected, " << s.fallback_batches
                << " batches on built-in fallback\n";
    } else if (sub == weigh) {
      const size_t n = capqa::RunWeigh(cfg, f.input, f.output);
      std::cerr << "capqa: weighed " << n << " pairs\n";
    } else if (sub == vocab) {
      const size_t n = capqa::RunVocab(cfg, f.input, f.output, f.targets);
      std::cerr << "capqa: vocabulary of " << n << " phrases\n";
    } else if (sub == patches) {
      const size_t n = capqa::RunPatches(cfg, f.output);
      std::cerr << "capqa: wrote " << n << " manifest lines\n";
    } else if (sub == pretrain) {
      const capqa::PretrainCounts c = capqa::RunPretrain(cfg, f.dataset, f.output);
      std::cerr << "capqa: " << c.mlm << " mlm, " << c.mqa << " mqa, " << c.itm
                << " itm samples";
      if (c.itm_shortfall > 0) std::cerr << " (" << c.itm_shortfall << " negatives short)";
      std::cerr << '\n';
    } else if (sub == sample) {
      std::cerr << "capqa: sampled "
                << capqa::RunSampleEpoch(cfg, f.input, f.epoch, f.output) << " pairs\n";
    } else if (sub == stats) {
      const capqa::DatasetReport r = capqa::RunStats(cfg, f.input, f.report, f.embeddings);
      std::cout << r.ToJson() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "capqa: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
