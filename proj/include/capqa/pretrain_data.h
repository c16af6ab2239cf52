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

// Data side of the three pre-training tasks: masked-token captions (MLM),
// masked answers (MQA) and matching/mismatching image-caption pairs (ITM).

#ifndef CAPQA_PRETRAIN_DATA_H_
#define CAPQA_PRETRAIN_DATA_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "capqa/corpus.h"
#include "capqa/lingo.h"
#include "capqa/qa_pair.h"

namespace capqa {

inline constexpr std::string_view kMaskToken = "[MASK]";

enum class PretrainTask { kMlm, kMqa, kItm };
std::string_view PretrainTaskName(PretrainTask task);

struct PretrainSample {
  PretrainTask task = PretrainTask::kMlm;
  ImageId image_id = 0;
  std::vector<std::string> text;
  // Masked position -> original token (mlm, mqa).
  std::map<size_t, std::string> targets;
  // itm only: true for a matching caption.
  std::optional<bool> match;
  // Provenance: the source pair (mqa) or caption (mlm, itm).
  std::string qa_id;
  int caption_index = -1;
  // itm only: the image the caption was taken from.
  std::optional<ImageId> source_image_id;
};

// Words and single punctuation marks, in order.
std::vector<std::string> PretrainTokens(std::string_view text);
bool IsWordToken(std::string_view token);

// max(1, round(0.15 * T)) with halves rounded up.
size_t MlmMaskCount(size_t word_tokens);

// Masks MlmMaskCount(T) distinct word positions, drawn uniformly without
// replacement from `seed`. Throws MalformedInput when there is no word token.
PretrainSample MlmMask(std::string_view caption, uint64_t seed,
                       ImageId image_id = 0, int caption_index = -1);

// Question tokens followed by one mask per answer word.
PretrainSample MqaMask(const QAPair& qa, uint64_t seed);

using ObjectIndex = std::map<ImageId, std::set<std::string>>;

// Head lemmas of every noun phrase in every caption, per image.
ObjectIndex BuildObjectIndex(const Corpus& corpus, const Lexicons& lex);

struct ItmResult {
  std::vector<PretrainSample> samples;
  // Negatives requested but not found (disjoint pool too small).
  size_t shortfall = 0;
};

// One match per caption plus ceil(neg_ratio * captions) mismatches taken from
// images whose object set is disjoint from this one's.
ItmResult ItmPairs(const CaptionRecord& record, const Corpus& corpus,
                   const ObjectIndex& index, double neg_ratio, uint64_t seed);

std::string PretrainSampleToJson(const PretrainSample& sample);
PretrainSample PretrainSampleFromJson(std::string_view line);

}  // namespace capqa

#endif  // CAPQA_PRETRAIN_DATA_H_
