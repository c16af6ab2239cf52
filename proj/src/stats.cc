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

#include "capqa/stats.h"

#include <cctype>
#include <cstdio>
#include <fstream>

#include "capqa/answers.h"
#include "capqa/error.h"
#include "capqa/lingo.h"
#include "json.hpp"

namespace capqa {

namespace {

bool IsWordChar(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

}  // namespace

size_t StatTokenCount(std::string_view text) {
  size_t count = 0;
  bool in_word = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool inner = (c == '\'' || c == '-') && in_word && i + 1 < text.size() &&
                       IsWordChar(text[i + 1]);
    if (IsWordChar(c) || inner) {
      if (!in_word) ++count;
      in_word = true;
    } else {
      in_word = false;
    }
  }
  return count;
}

void DatasetReport::Add(const QAPair& qa) {
  ++total_;
  ++per_source_[std::string(SourceName(qa.source))];
  ++per_type_[std::string(AnswerTypeName(qa.answer_type))];
  std::string normalized = NormalizeAnswer(qa.answer);
  if (normalized.empty()) normalized = ToLower(NormalizeSpaces(qa.answer));
  answers_.insert(std::move(normalized));
  question_tokens_ += StatTokenCount(qa.question);
  answer_tokens_ += StatTokenCount(qa.answer);
  if (qa.answer_type == AnswerType::kYesNo) {
    ++yesno_;
    if (qa.answer == "yes") ++yes_;
  }
}

void DatasetReport::Merge(const DatasetReport& other) {
  total_ += other.total_;
  for (const auto& [k, v] : other.per_source_) per_source_[k] += v;
  for (const auto& [k, v] : other.per_type_) per_type_[k] += v;
  answers_.insert(other.answers_.begin(), other.answers_.end());
  question_tokens_ += other.question_tokens_;
  answer_tokens_ += other.answer_tokens_;
  yes_ += other.yes_;
  yesno_ += other.yesno_;
}

double DatasetReport::MeanQuestionLength() const {
  return total_ == 0 ? 0.0
                     : static_cast<double>(question_tokens_) / static_cast<double>(total_);
}

double DatasetReport::MeanAnswerLength() const {
  return total_ == 0 ? 0.0
                     : static_cast<double>(answer_tokens_) / static_cast<double>(total_);
}

std::map<std::string, double> DatasetReport::TypeFractions() const {
  std::map<std::string, double> out;
  for (const auto& [k, v] : per_type_) {
    out[k] = static_cast<double>(v) / static_cast<double>(total_);
  }
  return out;
}

double DatasetReport::YesRatio() const {
  return yesno_ == 0 ? 0.0 : static_cast<double>(yes_) / static_cast<double>(yesno_);
}

std::string DatasetReport::ToJson() const {
  nlohmann::ordered_json j;
  j["total"] = total_;
  j["per_source"] = per_source_;
  j["unique_answers"] = answers_.size();
  j["mean_question_length"] = MeanQuestionLength();
  j["mean_answer_length"] = MeanAnswerLength();
  j["answer_type_fractions"] = TypeFractions();
  j["yesno_count"] = yesno_;
  j["yes_ratio"] = YesRatio();
  return j.dump(2);
}

DatasetReport Report(std::span<const QAPair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyStream, "no QA pairs to report on");
  DatasetReport report;
  for (const QAPair& qa : pairs) report.Add(qa);
  return report;
}

size_t ExportEmbeddings(std::span<const QAPair> pairs, const EmbeddingStore& store,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  char buf[64];
  for (const QAPair& qa : pairs) {
    std::string line = qa.qa_id;
    for (double v : MeanPool(qa.question, store)) {
      std::snprintf(buf, sizeof(buf), " %.6f", v == 0.0 ? 0.0 : v);
      line += buf;
    }
    out << line << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
  return pairs.size();
}

}  // namespace capqa
