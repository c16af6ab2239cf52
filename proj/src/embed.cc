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

#include "capqa/embed.h"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "capqa/error.h"
#include "capqa/lingo.h"

namespace capqa {

void EmbeddingStore::Add(std::string_view word, std::span<const double> vector) {
  if (dim_ == 0) dim_ = vector.size();
  if (vector.size() != dim_ || dim_ == 0) {
    throw Error(ErrorCode::kMalformedInput,
                "vector for `" + std::string(word) + "` has " +
                    std::to_string(vector.size()) + " components, expected " +
                    std::to_string(dim_));
  }
  double sq = 0.0;
  for (double v : vector) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kMalformedInput,
                  "non-finite component in `" + std::string(word) + "`");
    }
    sq += v * v;
  }
  std::string key = ToLower(word);
  if (index_.count(key)) return;
  index_.emplace(key, words_.size());
  words_.push_back(std::move(key));
  data_.insert(data_.end(), vector.begin(), vector.end());
  norms_.push_back(std::sqrt(sq));
}

bool EmbeddingStore::Contains(std::string_view word) const {
  return index_.count(ToLower(word)) > 0;
}

const double* EmbeddingStore::Find(std::string_view word) const {
  auto it = index_.find(ToLower(word));
  if (it == index_.end()) return nullptr;
  return data_.data() + it->second * dim_;
}

double EmbeddingStore::Norm(std::string_view word) const {
  auto it = index_.find(ToLower(word));
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownWord, std::string(word));
  }
  return norms_[it->second];
}

EmbeddingStore LoadVectors(std::istream& in, std::optional<size_t> limit,
                           const std::string& source_name) {
  EmbeddingStore store;
  std::string line;
  std::vector<double> values;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (limit && store.size() >= *limit) break;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    values.clear();
    std::string field;
    bool all_integral = true;
    while (fields >> field) {
      const char* begin = field.c_str();
      char* end = nullptr;
      errno = 0;
      double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0' || errno == ERANGE) {
        throw Error(ErrorCode::kMalformedInput,
                    source_name + ":" + std::to_string(line_no) +
                        ": non-numeric component `" + field + "`");
      }
      if (field.find_first_not_of("0123456789") != std::string::npos) {
        all_integral = false;
      }
      values.push_back(v);
    }
    // word2vec text header: "<count> <dim>".
    if (line_no == 1 && values.size() == 1 && all_integral &&
        word.find_first_not_of("0123456789") == std::string::npos) {
      continue;
    }
    if (values.empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  source_name + ":" + std::to_string(line_no) +
                      ": word without vector");
    }
    try {
      store.Add(word, values);
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedInput,
                  source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return store;
}

EmbeddingStore LoadVectors(const std::string& path, std::optional<size_t> limit) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open vectors file " + path);
  return LoadVectors(in, limit, path);
}

double Cosine(std::string_view a, std::string_view b,
              const EmbeddingStore& store) {
  const double* va = store.Find(a);
  if (!va) throw Error(ErrorCode::kUnknownWord, std::string(a));
  const double* vb = store.Find(b);
  if (!vb) throw Error(ErrorCode::kUnknownWord, std::string(b));
  const double na = store.Norm(a);
  const double nb = store.Norm(b);
  if (na == 0.0) throw Error(ErrorCode::kZeroVector, std::string(a));
  if (nb == 0.0) throw Error(ErrorCode::kZeroVector, std::string(b));
  double dot = 0.0;
  for (size_t i = 0; i < store.dim(); ++i) dot += va[i] * vb[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::vector<ScoredWord> Nearest(std::string_view word,
                                const EmbeddingStore& store,
                                const std::set<std::string>& candidates,
                                const std::set<std::string>& exclude,
                                size_t k) {
  const std::string query = ToLower(word);
  if (!store.Contains(query)) throw Error(ErrorCode::kUnknownWord, query);
  std::vector<ScoredWord> scored;
  if (store.Norm(query) == 0.0) return scored;
  for (const std::string& c : candidates) {
    if (c == query || exclude.count(c) || !store.Contains(c)) continue;
    if (store.Norm(c) == 0.0) continue;
    scored.emplace_back(c, Cosine(query, c, store));
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredWord& x, const ScoredWord& y) {
              if (x.second != y.second) return x.second > y.second;
              return x.first < y.first;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

std::vector<std::string> EmbeddingTokens(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80 || c == '-' || c == '\'') {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<double> MeanPool(std::string_view text, const EmbeddingStore& store) {
  std::vector<double> sum(store.dim(), 0.0);
  size_t count = 0;
  for (const std::string& token : EmbeddingTokens(text)) {
    const double* v = store.Find(token);
    if (!v) continue;
    for (size_t i = 0; i < store.dim(); ++i) sum[i] += v[i];
    ++count;
  }
  if (count > 0) {
    for (double& x : sum) x /= static_cast<double>(count);
  }
  return sum;
}

}  // namespace capqa
