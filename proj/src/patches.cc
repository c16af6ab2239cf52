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

#include "capqa/patches.h"

#include <filesystem>
#include <fstream>

#include "capqa/error.h"
#include "json.hpp"

namespace capqa {

using ordered_json = nlohmann::ordered_json;

void ValidateLevels(std::span<const int> levels) {
  if (levels.empty()) throw Error(ErrorCode::kBadLevels, "no pyramid levels");
  for (size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) {
      throw Error(ErrorCode::kBadLevels,
                  "level " + std::to_string(levels[i]) + " is below 1");
    }
    if (i > 0 && levels[i] <= levels[i - 1]) {
      throw Error(ErrorCode::kBadLevels, "levels must be distinct and ascending");
    }
  }
}

std::pair<int64_t, int64_t> PatchInterval(int64_t extent, int k, int index) {
  const int64_t cells = k + 1;
  const int64_t start = index * extent / cells;
  int64_t end = std::min(extent, (index + 2) * extent / cells);
  if (end <= start) end = std::min(extent, start + 1);
  return {start, end};
}

PatchSpec Pyramid(ImageId image_id, int64_t width, int64_t height,
                  std::span<const int> levels) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kBadDims, "image " + std::to_string(image_id) +
                                         " has dimensions " + std::to_string(width) +
                                         "x" + std::to_string(height));
  }
  ValidateLevels(levels);
  PatchSpec spec;
  spec.image_id = image_id;
  spec.width = width;
  spec.height = height;
  spec.levels.assign(levels.begin(), levels.end());
  for (size_t li = 0; li < levels.size(); ++li) {
    const int k = levels[li];
    for (int row = 0; row < k; ++row) {
      const auto [y0, y1] = PatchInterval(height, k, row);
      for (int col = 0; col < k; ++col) {
        const auto [x0, x1] = PatchInterval(width, k, col);
        Patch p;
        p.level = k;
        p.row = row;
        p.col = col;
        p.rect = {x0, y0, x1, y1};
        p.pos_enc = {static_cast<double>(x0) / static_cast<double>(width),
                     static_cast<double>(y0) / static_cast<double>(height),
                     static_cast<double>(x1) / static_cast<double>(width),
                     static_cast<double>(y1) / static_cast<double>(height),
                     static_cast<double>(li)};
        spec.patches.push_back(p);
      }
    }
  }
  return spec;
}

std::string ManifestLine(const PatchSpec& spec, const Patch& patch) {
  ordered_json j;
  j["image_id"] = spec.image_id;
  j["width"] = spec.width;
  j["height"] = spec.height;
  j["level"] = patch.level;
  j["row"] = patch.row;
  j["col"] = patch.col;
  j["rect"] = {patch.rect.x0, patch.rect.y0, patch.rect.x1, patch.rect.y1};
  j["pos_enc"] = patch.pos_enc;
  return j.dump();
}

size_t WriteManifest(std::span<const PatchSpec> specs, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write manifest " + path);
  size_t lines = 0;
  for (const PatchSpec& spec : specs) {
    for (const Patch& p : spec.patches) {
      out << ManifestLine(spec, p) << '\n';
      ++lines;
    }
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
  return lines;
}

std::vector<PatchSpec> ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open manifest " + path);
  std::vector<PatchSpec> specs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const ordered_json j = ordered_json::parse(line);
      const ImageId id = j.at("image_id").get<ImageId>();
      if (specs.empty() || specs.back().image_id != id) {
        PatchSpec spec;
        spec.image_id = id;
        spec.width = j.at("width").get<int64_t>();
        spec.height = j.at("height").get<int64_t>();
        specs.push_back(std::move(spec));
      }
      PatchSpec& spec = specs.back();
      Patch p;
      p.level = j.at("level").get<int>();
      p.row = j.at("row").get<int>();
      p.col = j.at("col").get<int>();
      const auto rect = j.at("rect").get<std::vector<int64_t>>();
      if (rect.size() != 4) throw Error(ErrorCode::kMalformedInput, "rect needs 4 values");
      p.rect = {rect[0], rect[1], rect[2], rect[3]};
      const auto enc = j.at("pos_enc").get<std::vector<double>>();
      if (enc.size() != 5) throw Error(ErrorCode::kMalformedInput, "pos_enc needs 5 values");
      std::copy(enc.begin(), enc.end(), p.pos_enc.begin());
      if (spec.levels.empty() || spec.levels.back() != p.level) spec.levels.push_back(p.level);
      spec.patches.push_back(p);
    } catch (const ordered_json::exception& e) {
      throw Error(ErrorCode::kMalformedInput,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return specs;
}

}  // namespace capqa
