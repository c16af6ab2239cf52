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

#ifndef CAPQA_QA_PAIR_H_
#define CAPQA_QA_PAIR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capqa/corpus.h"

namespace capqa {

enum class AnswerType { kYesNo, kNumber, kColor, kLocation, kObject, kPhrase };
enum class Source {
  kTemplate,
  kNegation,
  kAdversarial,
  kSrl,
  kParaphrase,
  kBacktranslate,
};

std::string_view AnswerTypeName(AnswerType type);
AnswerType ParseAnswerType(std::string_view name);
std::string_view SourceName(Source source);
Source ParseSource(std::string_view name);

struct WeightedPhrase {
  std::string phrase;
  double weight = 0.0;
  bool operator==(const WeightedPhrase&) const = default;
};

struct QAPair {
  std::string qa_id;
  ImageId image_id = 0;
  std::string question;
  std::string answer;
  AnswerType answer_type = AnswerType::kObject;
  Source source = Source::kTemplate;
  std::string source_caption;
  // Caption the pair was generated from; -1 when unknown.
  int caption_index = -1;
  // Set on pairs derived from another pair (augmentation).
  std::string parent_qa_id;
  std::optional<std::vector<WeightedPhrase>> weights;

  bool operator==(const QAPair&) const = default;
};

// Stable id: hex hash of (image_id, caption_index, generator, ordinal).
std::string MakeQaId(ImageId image_id, int caption_index,
                     std::string_view generator, int ordinal);

// Empty string when the pair satisfies the QAPair invariants, otherwise a
// description of the first violation.
std::string QaInvariantViolation(const QAPair& qa);

// One JSON object, no trailing newline. Weights carry 6 decimal places.
std::string QaToJson(const QAPair& qa);
// Throws MalformedInput.
QAPair QaFromJson(std::string_view line);

std::vector<QAPair> ReadQaJsonl(const std::string& path);
// Writes to `path` atomically (temp file + rename).
void WriteQaJsonl(const std::string& path, const std::vector<QAPair>& pairs);
std::string QaJsonlString(const std::vector<QAPair>& pairs);

// Serialization rounding for weights.
double RoundWeight(double weight);

}  // namespace capqa

#endif  // CAPQA_QA_PAIR_H_
