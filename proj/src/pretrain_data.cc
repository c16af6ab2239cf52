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

#include "capqa/pretrain_data.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "capqa/error.h"
#include "capqa/hashing.h"
#include "json.hpp"

namespace capqa {

namespace {

using ordered_json = nlohmann::ordered_json;

bool IsWordChar(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

bool Disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

const std::set<std::string>& ObjectsOf(const ObjectIndex& index, ImageId id) {
  static const std::set<std::string> kEmpty;
  auto it = index.find(id);
  return it == index.end() ? kEmpty : it->second;
}

}  // namespace

std::string_view PretrainTaskName(PretrainTask task) {
  switch (task) {
    case PretrainTask::kMlm: return "mlm";
    case PretrainTask::kMqa: return "mqa";
    case PretrainTask::kItm: return "itm";
  }
  return "mlm";
}

std::vector<std::string> PretrainTokens(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (IsWordChar(c)) {
      word.push_back(c);
    } else if ((c == '\'' || c == '-') && !word.empty() && i + 1 < text.size() &&
               IsWordChar(text[i + 1])) {
      word.push_back(c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '[' && text.substr(i, kMaskToken.size()) == kMaskToken) {
      flush();
      out.emplace_back(kMaskToken);
      i += kMaskToken.size() - 1;
    } else {
      flush();
      out.emplace_back(1, c);
    }
  }
  flush();
  return out;
}

bool IsWordToken(std::string_view token) {
  return std::any_of(token.begin(), token.end(), IsWordChar);
}

size_t MlmMaskCount(size_t word_tokens) {
  return std::max<size_t>(1, (15 * word_tokens + 50) / 100);
}

PretrainSample MlmMask(std::string_view caption, uint64_t seed, ImageId image_id,
                       int caption_index) {
  PretrainSample s;
  s.task = PretrainTask::kMlm;
  s.image_id = image_id;
  s.caption_index = caption_index;
  s.text = PretrainTokens(caption);
  std::vector<size_t> words;
  for (size_t i = 0; i < s.text.size(); ++i) {
    if (IsWordToken(s.text[i])) words.push_back(i);
  }
  if (words.empty()) {
    throw Error(ErrorCode::kMalformedInput,
                "caption has no word token: " + std::string(caption));
  }
  SeededRng rng(seed);
  for (size_t pick : rng.SampleWithoutReplacement(words.size(), MlmMaskCount(words.size()))) {
    const size_t pos = words[pick];
    s.targets[pos] = s.text[pos];
    s.text[pos] = std::string(kMaskToken);
  }
  return s;
}

PretrainSample MqaMask(const QAPair& qa, uint64_t seed) {
  (void)seed;
  PretrainSample s;
  s.task = PretrainTask::kMqa;
  s.image_id = qa.image_id;
  s.qa_id = qa.qa_id;
  s.caption_index = qa.caption_index;
  s.text = PretrainTokens(qa.question);
  std::vector<std::string> answer;
  for (std::string& t : PretrainTokens(qa.answer)) {
    if (IsWordToken(t)) answer.push_back(std::move(t));
  }
  if (answer.empty()) {
    throw Error(ErrorCode::kMalformedInput, "answer has no word token: " + qa.answer);
  }
  for (std::string& t : answer) {
    s.targets[s.text.size()] = std::move(t);
    s.text.emplace_back(kMaskToken);
  }
  return s;
}

ObjectIndex BuildObjectIndex(const Corpus& corpus, const Lexicons& lex) {
  ObjectIndex index;
  for (const CaptionRecord& record : corpus.Iterate()) {
    std::set<std::string>& objects = index[record.image_id];
    for (const std::string& caption : record.captions) {
      for (const NounPhrase& np : Analyze(caption, lex).nps) {
        objects.insert(np.Head().lemma);
      }
    }
  }
  return index;
}

ItmResult ItmPairs(const CaptionRecord& record, const Corpus& corpus,
                   const ObjectIndex& index, double neg_ratio, uint64_t seed) {
  if (!(neg_ratio >= 0.0) || !std::isfinite(neg_ratio)) {
    throw Error(ErrorCode::kBadConfig, "neg_ratio must be a finite value >= 0");
  }
  ItmResult out;
  for (size_t c = 0; c < record.captions.size(); ++c) {
    PretrainSample s;
    s.task = PretrainTask::kItm;
    s.image_id = record.image_id;
    s.text = PretrainTokens(record.captions[c]);
    s.match = true;
    s.caption_index = static_cast<int>(c);
    s.source_image_id = record.image_id;
    out.samples.push_back(std::move(s));
  }
  const size_t wanted = static_cast<size_t>(
      std::ceil(neg_ratio * static_cast<double>(record.captions.size()) - 1e-9));
  if (wanted == 0) return out;

  const std::set<std::string>& own = ObjectsOf(index, record.image_id);
  const std::span<const CaptionRecord> records = corpus.Iterate();
  auto eligible = [&](const CaptionRecord& other) {
    return other.image_id != record.image_id &&
           Disjoint(own, ObjectsOf(index, other.image_id));
  };

  SeededRng rng(seed);
  std::set<std::pair<ImageId, size_t>> chosen;
  std::vector<std::pair<const CaptionRecord*, size_t>> negatives;
  auto take = [&](const CaptionRecord& other, size_t caption) {
    if (chosen.insert({other.image_id, caption}).second) {
      negatives.emplace_back(&other, caption);
    }
  };
  // Random probes first; a full scan from a random offset when the pool is
  // too sparse for probing to fill the quota.
  if (records.size() > 1) {
    for (size_t attempt = 0; attempt < 32 * wanted && negatives.size() < wanted; ++attempt) {
      const CaptionRecord& other = records[rng.Uniform(records.size())];
      if (!eligible(other)) continue;
      take(other, rng.Uniform(other.captions.size()));
    }
    if (negatives.size() < wanted) {
      const size_t offset = rng.Uniform(records.size());
      for (size_t k = 0; k < records.size() && negatives.size() < wanted; ++k) {
        const CaptionRecord& other = records[(offset + k) % records.size()];
        if (!eligible(other)) continue;
        for (size_t c = 0; c < other.captions.size() && negatives.size() < wanted; ++c) {
          take(other, c);
        }
      }
    }
  }
  for (const auto& [other, caption] : negatives) {
    PretrainSample s;
    s.task = PretrainTask::kItm;
    s.image_id = record.image_id;
    s.text = PretrainTokens(other->captions[caption]);
    s.match = false;
    s.caption_index = static_cast<int>(caption);
    s.source_image_id = other->image_id;
    out.samples.push_back(std::move(s));
  }
  out.shortfall = wanted - negatives.size();
  return out;
}

std::string PretrainSampleToJson(const PretrainSample& s) {
  ordered_json j;
  j["task"] = PretrainTaskName(s.task);
  j["image_id"] = s.image_id;
  j["text"] = s.text;
  ordered_json targets = ordered_json::array();
  for (const auto& [pos, token] : s.targets) {
    targets.push_back({{"pos", pos}, {"token", token}});
  }
  j["targets"] = std::move(targets);
  if (s.match) j["label"] = *s.match ? "match" : "mismatch";
  if (!s.qa_id.empty()) j["qa_id"] = s.qa_id;
  if (s.caption_index >= 0) j["caption_index"] = s.caption_index;
  if (s.source_image_id) j["source_image_id"] = *s.source_image_id;
  return j.dump();
}

PretrainSample PretrainSampleFromJson(std::string_view line) {
  PretrainSample s;
  try {
    const ordered_json j = ordered_json::parse(line);
    const std::string task = j.at("task").get<std::string>();
    if (task == "mlm") {
      s.task = PretrainTask::kMlm;
    } else if (task == "mqa") {
      s.task = PretrainTask::kMqa;
    } else if (task == "itm") {
      s.task = PretrainTask::kItm;
    } else {
      throw Error(ErrorCode::kMalformedInput, "unknown task " + task);
    }
    s.image_id = j.at("image_id").get<ImageId>();
    s.text = j.at("text").get<std::vector<std::string>>();
    for (const auto& t : j.at("targets")) {
      s.targets[t.at("pos").get<size_t>()] = t.at("token").get<std::string>();
    }
    if (j.contains("label")) s.match = j["label"].get<std::string>() == "match";
    s.qa_id = j.value("qa_id", std::string());
    s.caption_index = j.value("caption_index", -1);
    if (j.contains("source_image_id")) s.source_image_id = j["source_image_id"].get<ImageId>();
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("bad sample: ") + e.what());
  }
  return s;
}

}  // namespace capqa
