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

// Pipeline stages behind the command-line tool. Each stage reads and writes
// files so stages compose and restart independently.

#ifndef CAPQA_PIPELINE_H_
#define CAPQA_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capqa/augment.h"
#include "capqa/qgen_template.h"
#include "capqa/stats.h"

namespace capqa {

struct PipelineConfig {
  uint64_t seed = 0;

  std::string captions;
  std::string vectors;
  std::optional<size_t> vectors_limit;
  std::string srl_frames;
  std::string lexicons;
  // Empty: built-in rules. "http://host:port": HTTP rewriter. Anything else
  // is a shell command speaking the JSONL protocol.
  std::string rewriter;

  bool templates = true;
  // Embedding-based adversarial substitution; needs `vectors`.
  bool adversarial = true;
  size_t object_vocab_cap = 5000;
  GenConfig gen;

  AugmentConfig augment;

  std::vector<int> levels = {1, 3, 5, 7};
  std::optional<std::pair<int64_t, int64_t>> default_dims;

  double neg_ratio = 1.0;
  size_t min_count = 1;
  size_t questions_per_image_per_epoch = 3;
  size_t workers = 1;

  // Throws BadConfig naming the first bad field.
  void Validate() const;
};

// Reads a JSON config file; keys mirror the PipelineConfig fields. Throws
// BadConfig or IoError.
PipelineConfig LoadPipelineConfig(const std::string& path);
void ApplyConfigJson(const std::string& json_text, PipelineConfig* cfg);
// CAPQA_SEED, when set, replaces the seed.
void ApplySeedEnv(PipelineConfig* cfg);
std::string PipelineConfigToJson(const PipelineConfig& cfg);

// Throws IoError naming the path unless it names an existing file.
void RequireFile(const std::string& path, const std::string& what);

struct GenerateResult {
  size_t pairs = 0;
  size_t srl_frames_dropped = 0;
  // Word vectors used for adversarial substitution; 0 when none were loaded.
  size_t vector_dim = 0;
  size_t vector_count = 0;
  DatasetReport report;
};

// In-memory generation: sorted by (image_id, qa_id), weights populated.
std::vector<QAPair> GeneratePairs(const PipelineConfig& cfg,
                                  GenerateResult* result = nullptr);
// GeneratePairs written to `out_path` (atomically), plus a run manifest at
// `out_path`.manifest.json echoing the effective config.
GenerateResult RunGenerate(const PipelineConfig& cfg, const std::string& out_path);

AugmentStats RunAugment(const PipelineConfig& cfg, const std::string& in_path,
                        const std::string& out_path);
size_t RunWeigh(const PipelineConfig& cfg, const std::string& in_path,
                const std::string& out_path);
// Writes the vocabulary; with `targets_path`, also one sparse SWA target per
// pair. Returns the vocabulary size.
size_t RunVocab(const PipelineConfig& cfg, const std::string& in_path,
                const std::string& vocab_path, const std::string& targets_path = "");
// Returns manifest lines. Throws BadDims listing every image without
// dimensions when no default is configured.
size_t RunPatches(const PipelineConfig& cfg, const std::string& out_path);

struct PretrainCounts {
  size_t mlm = 0;
  size_t mqa = 0;
  size_t itm = 0;
  size_t itm_shortfall = 0;
};
// MLM and ITM samples from the corpus, MQA samples from `dataset_path` when
// given.
PretrainCounts RunPretrain(const PipelineConfig& cfg, const std::string& dataset_path,
                           const std::string& out_path);

// Per image, min(k, available) pairs drawn without replacement with a
// stream seeded by (seed, epoch, image_id); input order kept.
std::vector<QAPair> SampleEpoch(const std::vector<QAPair>& pairs, int64_t epoch,
                                const PipelineConfig& cfg);
size_t RunSampleEpoch(const PipelineConfig& cfg, const std::string& in_path,
                      int64_t epoch, const std::string& out_path);

// Report JSON to `report_path` (or returned only when empty); embeddings
// exported when `embeddings_path` is set.
DatasetReport RunStats(const PipelineConfig& cfg, const std::string& in_path,
                       const std::string& report_path,
                       const std::string& embeddings_path);

}  // namespace capqa

#endif  // CAPQA_PIPELINE_H_
