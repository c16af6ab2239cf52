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

#include "capqa/qa_pair.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "capqa/error.h"
#include "capqa/hashing.h"
#include "json.hpp"

namespace capqa {

using ordered_json = nlohmann::ordered_json;

std::string_view AnswerTypeName(AnswerType type) {
  switch (type) {
    case AnswerType::kYesNo: return "yesno";
    case AnswerType::kNumber: return "number";
    case AnswerType::kColor: return "color";
    case AnswerType::kLocation: return "location";
    case AnswerType::kObject: return "object";
    case AnswerType::kPhrase: return "phrase";
  }
  return "object";
}

AnswerType ParseAnswerType(std::string_view name) {
  for (AnswerType t : {AnswerType::kYesNo, AnswerType::kNumber, AnswerType::kColor,
                       AnswerType::kLocation, AnswerType::kObject,
                       AnswerType::kPhrase}) {
    if (AnswerTypeName(t) == name) return t;
  }
  throw Error(ErrorCode::kMalformedInput,
              "unknown answer_type `" + std::string(name) + "`");
}

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kTemplate: return "template";
    case Source::kNegation: return "negation";
    case Source::kAdversarial: return "adversarial";
    case Source::kSrl: return "srl";
    case Source::kParaphrase: return "paraphrase";
    case Source::kBacktranslate: return "backtranslate";
  }
  return "template";
}

Source ParseSource(std::string_view name) {
  for (Source s : {Source::kTemplate, Source::kNegation, Source::kAdversarial,
                   Source::kSrl, Source::kParaphrase, Source::kBacktranslate}) {
    if (SourceName(s) == name) return s;
  }
  throw Error(ErrorCode::kMalformedInput, "unknown source `" + std::string(name) + "`");
}

std::string MakeQaId(ImageId image_id, int caption_index,
                     std::string_view generator, int ordinal) {
  StableHasher h;
  h.Add(static_cast<int64_t>(image_id)).Add(caption_index).Add(generator).Add(ordinal);
  return HexDigest(h.Digest());
}

std::string QaInvariantViolation(const QAPair& qa) {
  if (qa.question.empty() || qa.question.back() != '?') {
    return "question does not end with '?': " + qa.question;
  }
  if (qa.question.find("  ") != std::string::npos) {
    return "question contains a double space: " + qa.question;
  }
  if (qa.answer.empty()) return "empty answer";
  if (qa.answer_type == AnswerType::kYesNo && qa.answer != "yes" &&
      qa.answer != "no") {
    return "yesno answer is `" + qa.answer + "`";
  }
  if (qa.weights) {
    bool has_full = false;
    for (const auto& w : *qa.weights) {
      if (!(w.weight > 0.0 && w.weight <= 1.0)) {
        return "weight out of (0,1] for `" + w.phrase + "`";
      }
      if (w.weight == 1.0) has_full = true;
    }
    if (!has_full) return "weights lack a full-answer entry";
  }
  return "";
}

double RoundWeight(double weight) { return std::round(weight * 1e6) / 1e6; }

std::string QaToJson(const QAPair& qa) {
  ordered_json j;
  j["qa_id"] = qa.qa_id;
  j["image_id"] = qa.image_id;
  j["question"] = qa.question;
  j["answer"] = qa.answer;
  j["answer_type"] = AnswerTypeName(qa.answer_type);
  j["source"] = SourceName(qa.source);
  j["source_caption"] = qa.source_caption;
  if (qa.caption_index >= 0) j["caption_index"] = qa.caption_index;
  if (!qa.parent_qa_id.empty()) j["parent_qa_id"] = qa.parent_qa_id;
  if (qa.weights) {
    ordered_json weights = ordered_json::array();
    for (const auto& w : *qa.weights) {
      weights.push_back({{"phrase", w.phrase}, {"weight", RoundWeight(w.weight)}});
    }
    j["weights"] = std::move(weights);
  }
  return j.dump();
}

QAPair QaFromJson(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("bad QA line: ") + e.what());
  }
  QAPair qa;
  try {
    qa.qa_id = j.at("qa_id").get<std::string>();
    qa.image_id = j.at("image_id").get<ImageId>();
    qa.question = j.at("question").get<std::string>();
    qa.answer = j.at("answer").get<std::string>();
    qa.answer_type = ParseAnswerType(j.at("answer_type").get<std::string>());
    qa.source = ParseSource(j.at("source").get<std::string>());
    qa.source_caption = j.value("source_caption", std::string());
    qa.caption_index = j.value("caption_index", -1);
    qa.parent_qa_id = j.value("parent_qa_id", std::string());
    if (auto it = j.find("weights"); it != j.end() && !it->is_null()) {
      std::vector<WeightedPhrase> weights;
      for (const auto& w : *it) {
        weights.push_back({w.at("phrase").get<std::string>(),
                           w.at("weight").get<double>()});
      }
      qa.weights = std::move(weights);
    }
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("bad QA record: ") + e.what());
  }
  return qa;
}

std::vector<QAPair> ReadQaJsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<QAPair> pairs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      pairs.push_back(QaFromJson(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedInput,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return pairs;
}

std::string QaJsonlString(const std::vector<QAPair>& pairs) {
  std::string out;
  for (const auto& qa : pairs) {
    out += QaToJson(qa);
    out.push_back('\n');
  }
  return out;
}

void WriteQaJsonl(const std::string& path, const std::vector<QAPair>& pairs) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp);
    out << QaJsonlString(pairs);
    if (!out) {
      std::remove(tmp.c_str());
      throw Error(ErrorCode::kIoError, "write failed for " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::kIoError, "cannot rename " + tmp + ": " + ec.message());
  }
}

}  // namespace capqa
