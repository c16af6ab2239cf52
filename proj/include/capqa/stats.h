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

// Dataset statistics and question-embedding export.
//
// Lengths count whitespace-separated tokens after punctuation is stripped
// (apostrophes and hyphens inside words are kept). Unique answers are
// counted after answer normalization: lowercase, no punctuation, no leading
// determiner.

#ifndef CAPQA_STATS_H_
#define CAPQA_STATS_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "capqa/embed.h"
#include "capqa/qa_pair.h"

namespace capqa {

// Mergeable partial report. Derived quantities are computed on demand.
class DatasetReport {
 public:
  void Add(const QAPair& qa);
  void Merge(const DatasetReport& other);

  size_t total() const { return total_; }
  const std::map<std::string, size_t>& per_source() const { return per_source_; }
  const std::map<std::string, size_t>& per_type() const { return per_type_; }
  size_t unique_answers() const { return answers_.size(); }
  size_t question_tokens() const { return question_tokens_; }
  size_t answer_tokens() const { return answer_tokens_; }
  size_t yes_count() const { return yes_; }
  size_t yesno_count() const { return yesno_; }

  double MeanQuestionLength() const;
  double MeanAnswerLength() const;
  // answer_type -> share of all pairs.
  std::map<std::string, double> TypeFractions() const;
  // yes / (yes + no) over yesno pairs; 0 when there are none.
  double YesRatio() const;

  std::string ToJson() const;

 private:
  size_t total_ = 0;
  std::map<std::string, size_t> per_source_;
  std::map<std::string, size_t> per_type_;
  std::set<std::string> answers_;
  size_t question_tokens_ = 0;
  size_t answer_tokens_ = 0;
  size_t yes_ = 0;
  size_t yesno_ = 0;
};

size_t StatTokenCount(std::string_view text);

// Throws EmptyStream.
DatasetReport Report(std::span<const QAPair> pairs);

// One line per pair: qa_id followed by the mean-pooled question vector,
// six decimals, space-separated. Returns lines written.
size_t ExportEmbeddings(std::span<const QAPair> pairs, const EmbeddingStore& store,
                        const std::string& path);

}  // namespace capqa

#endif  // CAPQA_STATS_H_
