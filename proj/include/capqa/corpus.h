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

#ifndef CAPQA_CORPUS_H_
#define CAPQA_CORPUS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace capqa {

using ImageId = int64_t;

// One image and the captions written for it.
struct CaptionRecord {
  ImageId image_id = 0;
  std::optional<int> width;
  std::optional<int> height;
  std::vector<std::string> captions;

  bool HasDims() const { return width.has_value() && height.has_value(); }
  bool operator==(const CaptionRecord&) const = default;
};

// Immutable after construction. Records are kept sorted by image_id.
class Corpus {
 public:
  Corpus() = default;

  // Throws MalformedInput on duplicate ids or records without captions.
  Corpus(std::vector<CaptionRecord> records, std::string source_path);

  // Ascending image_id order, same sequence on every call.
  std::span<const CaptionRecord> Iterate() const { return records_; }

  const CaptionRecord* Find(ImageId image_id) const;

  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::string& source_path() const { return source_path_; }

  size_t CaptionCount() const;

  // Annotations dropped at load because their caption was blank.
  size_t dropped_blank() const { return dropped_blank_; }
  // Captions repeated verbatim within one image (kept, only counted).
  size_t duplicate_captions() const { return duplicate_captions_; }

 private:
  friend Corpus LoadCocoFromString(const std::string&, const std::string&);

  std::vector<CaptionRecord> records_;
  std::string source_path_;
  size_t dropped_blank_ = 0;
  size_t duplicate_captions_ = 0;
};

// Reads a COCO captions JSON document: an `annotations` array of
// {image_id, caption} plus an optional `images` array of {id, width, height}.
Corpus LoadCoco(const std::string& path);
Corpus LoadCocoFromString(const std::string& json_text,
                          const std::string& source_path = "<memory>");

// Serializes back to the COCO captions layout (one annotation per caption).
std::string CorpusToCocoJson(const Corpus& corpus);
void SaveCoco(const Corpus& corpus, const std::string& path);

}  // namespace capqa

#endif  // CAPQA_CORPUS_H_
