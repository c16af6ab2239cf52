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

// Platform-independent hashing and random streams. Standard library
// distributions are implementation-defined, so every seeded draw in the
// toolkit goes through SeededRng to keep outputs byte-identical everywhere.

#ifndef CAPQA_HASHING_H_
#define CAPQA_HASHING_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace capqa {

// Incremental 64-bit hash over a sequence of typed fields.
class StableHasher {
 public:
  StableHasher() = default;

  StableHasher& Add(uint64_t value);
  StableHasher& Add(int64_t value) { return Add(static_cast<uint64_t>(value)); }
  StableHasher& Add(int value) { return Add(static_cast<uint64_t>(static_cast<int64_t>(value))); }
  StableHasher& Add(std::string_view text);

  uint64_t Digest() const;

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
  uint64_t length_ = 0;
};

uint64_t Mix64(uint64_t x);

// Lowercase 16-digit hexadecimal rendering.
std::string HexDigest(uint64_t value);

// SplitMix64 stream.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(seed) {}

  uint64_t Next();

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t Uniform(uint64_t bound);

  // Uniform real in [0, 1).
  double UniformReal();

  // k distinct indices from [0, n), uniformly without replacement, in draw
  // order. k is clamped to n.
  std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k);

 private:
  uint64_t state_;
};

}  // namespace capqa

#endif  // CAPQA_HASHING_H_
