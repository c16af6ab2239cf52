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

#include "capqa/hashing.h"

#include <cstdio>
#include <numeric>

#include "capqa/error.h"

namespace capqa {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnknownWord: return "UnknownWord";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kNoObjects: return "NoObjects";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kRewriterUnavailable: return "RewriterUnavailable";
    case ErrorCode::kEmptyVocab: return "EmptyVocab";
    case ErrorCode::kAnswerNotInVocab: return "AnswerNotInVocab";
    case ErrorCode::kBadDims: return "BadDims";
    case ErrorCode::kBadLevels: return "BadLevels";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEmptyStream: return "EmptyStream";
    case ErrorCode::kBadConfig: return "BadConfig";
  }
  return "Unknown";
}

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

StableHasher& StableHasher::Add(uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (value >> (8 * i)) & 0xff;
    state_ *= 0x100000001b3ULL;
  }
  ++length_;
  return *this;
}

StableHasher& StableHasher::Add(std::string_view text) {
  // Length prefix keeps ("ab","c") and ("a","bc") apart.
  Add(static_cast<uint64_t>(text.size()));
  for (unsigned char c : text) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

uint64_t StableHasher::Digest() const { return Mix64(state_ ^ Mix64(length_)); }

std::string HexDigest(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

uint64_t SeededRng::Next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t SeededRng::Uniform(uint64_t bound) {
  // Rejection sampling removes modulo bias.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t draw;
  do {
    draw = Next();
  } while (draw >= limit);
  return draw % bound;
}

double SeededRng::UniformReal() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

std::vector<size_t> SeededRng::SampleWithoutReplacement(size_t n, size_t k) {
  if (k > n) k = n;
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), size_t{0});
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + Uniform(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace capqa
