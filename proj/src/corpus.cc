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

#include "capqa/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "capqa/error.h"
#include "json.hpp"

namespace capqa {

using json = nlohmann::json;

namespace {

bool IsBlank(const std::string& text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::string Trim(const std::string& text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return text.substr(begin, end - begin);
}

std::optional<int> PositiveDim(const json& image, const char* key) {
  auto it = image.find(key);
  if (it == image.end() || !it->is_number_integer()) return std::nullopt;
  int value = it->get<int>();
  if (value <= 0) return std::nullopt;
  return value;
}

}  // namespace

Corpus::Corpus(std::vector<CaptionRecord> records, std::string source_path)
    : records_(std::move(records)), source_path_(std::move(source_path)) {
  std::sort(records_.begin(), records_.end(),
            [](const CaptionRecord& a, const CaptionRecord& b) {
              return a.image_id < b.image_id;
            });
  for (size_t i = 0; i < records_.size(); ++i) {
    if (i > 0 && records_[i].image_id == records_[i - 1].image_id) {
      throw Error(ErrorCode::kMalformedInput,
                  "duplicate image_id " + std::to_string(records_[i].image_id));
    }
    if (records_[i].captions.empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  "image " + std::to_string(records_[i].image_id) +
                      " has no captions");
    }
  }
}

const CaptionRecord* Corpus::Find(ImageId image_id) const {
  auto it = std::lower_bound(
      records_.begin(), records_.end(), image_id,
      [](const CaptionRecord& r, ImageId id) { return r.image_id < id; });
  if (it == records_.end() || it->image_id != image_id) return nullptr;
  return &*it;
}

size_t Corpus::CaptionCount() const {
  size_t total = 0;
  for (const auto& r : records_) total += r.captions.size();
  return total;
}

Corpus LoadCocoFromString(const std::string& json_text,
                          const std::string& source_path) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput,
                source_path + ": not valid JSON (" + e.what() + ")");
  }
  if (!doc.is_object() || !doc.contains("annotations") ||
      !doc["annotations"].is_array()) {
    throw Error(ErrorCode::kMalformedInput,
                source_path + ": missing `annotations` array");
  }

  // Group in file order; std::map gives the ascending id order for free.
  std::map<ImageId, CaptionRecord> grouped;
  size_t dropped_blank = 0;
  for (const auto& ann : doc["annotations"]) {
    if (!ann.is_object() || !ann.contains("image_id") ||
        !ann["image_id"].is_number_integer() || !ann.contains("caption") ||
        !ann["caption"].is_string()) {
      throw Error(ErrorCode::kMalformedInput,
                  source_path + ": annotation without integer `image_id` and "
                                "string `caption`");
    }
    const std::string& caption = ann["caption"].get_ref<const std::string&>();
    if (IsBlank(caption)) {
      ++dropped_blank;
      continue;
    }
    ImageId id = ann["image_id"].get<ImageId>();
    CaptionRecord& record = grouped[id];
    record.image_id = id;
    record.captions.push_back(Trim(caption));
  }
  if (grouped.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                source_path + ": no usable caption annotations");
  }

  if (auto images = doc.find("images");
      images != doc.end() && images->is_array()) {
    for (const auto& image : *images) {
      if (!image.is_object() || !image.contains("id") ||
          !image["id"].is_number_integer()) {
        continue;
      }
      auto it = grouped.find(image["id"].get<ImageId>());
      if (it == grouped.end()) continue;
      it->second.width = PositiveDim(image, "width");
      it->second.height = PositiveDim(image, "height");
    }
  }

  std::vector<CaptionRecord> records;
  records.reserve(grouped.size());
  size_t duplicates = 0;
  for (auto& [id, record] : grouped) {
    std::set<std::string> seen;
    for (const auto& c : record.captions) {
      if (!seen.insert(c).second) ++duplicates;
    }
    records.push_back(std::move(record));
  }
  Corpus corpus(std::move(records), source_path);
  corpus.dropped_blank_ = dropped_blank;
  corpus.duplicate_captions_ = duplicates;
  return corpus;
}

Corpus LoadCoco(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return LoadCocoFromString(buffer.str(), path);
}

std::string CorpusToCocoJson(const Corpus& corpus) {
  json images = json::array();
  json annotations = json::array();
  int64_t ann_id = 0;
  for (const auto& record : corpus.Iterate()) {
    json image = {{"id", record.image_id}};
    if (record.width) image["width"] = *record.width;
    if (record.height) image["height"] = *record.height;
    images.push_back(std::move(image));
    for (const auto& caption : record.captions) {
      annotations.push_back(
          {{"id", ann_id++}, {"image_id", record.image_id}, {"caption", caption}});
    }
  }
  json doc = {{"images", std::move(images)},
              {"annotations", std::move(annotations)}};
  return doc.dump();
}

void SaveCoco(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << CorpusToCocoJson(corpus) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace capqa
