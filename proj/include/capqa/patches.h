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

// Spatial-pyramid patch geometry: per level k, a k x k grid of patches of
// side 2W/(k+1) with stride W/(k+1), so neighbours overlap by half a patch
// and the grid covers the image exactly.

#ifndef CAPQA_PATCHES_H_
#define CAPQA_PATCHES_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "capqa/corpus.h"

namespace capqa {

inline const std::vector<int> kDefaultLevels = {1, 3, 5, 7};

struct Rect {
  int64_t x0 = 0;
  int64_t y0 = 0;
  int64_t x1 = 0;
  int64_t y1 = 0;
  bool operator==(const Rect&) const = default;
};

struct Patch {
  int level = 1;  // grid size k
  int row = 0;
  int col = 0;
  Rect rect;
  // (x0/W, y0/H, x1/W, y1/H, level_index)
  std::array<double, 5> pos_enc{};
  bool operator==(const Patch&) const = default;
};

struct PatchSpec {
  ImageId image_id = 0;
  int64_t width = 0;
  int64_t height = 0;
  std::vector<int> levels;
  std::vector<Patch> patches;
  bool operator==(const PatchSpec&) const = default;
};

// Throws BadLevels unless levels are non-empty, >= 1 and strictly ascending.
void ValidateLevels(std::span<const int> levels);

// [start, end) of grid cell `index` of `k` along an axis of `extent` pixels.
// Offsets round down; the far edge is clamped to the extent.
std::pair<int64_t, int64_t> PatchInterval(int64_t extent, int k, int index);

// Throws BadDims (non-positive width/height) or BadLevels.
PatchSpec Pyramid(ImageId image_id, int64_t width, int64_t height,
                  std::span<const int> levels);

// JSONL, one patch per line. Returns the number of lines written.
size_t WriteManifest(std::span<const PatchSpec> specs, const std::string& path);
std::string ManifestLine(const PatchSpec& spec, const Patch& patch);
// Regroups manifest lines into PatchSpecs, in file order. Throws
// MalformedInput or IoError.
std::vector<PatchSpec> ReadManifest(const std::string& path);

}  // namespace capqa

#endif  // CAPQA_PATCHES_H_
