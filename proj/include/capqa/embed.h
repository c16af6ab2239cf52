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

#ifndef CAPQA_EMBED_H_
#define CAPQA_EMBED_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace capqa {

// Word vectors read from a GloVe-style text file. Immutable once loaded.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(size_t dim = 0) : dim_(dim) {}

  // Words are lowercased; a repeated word keeps its first vector.
  // Throws MalformedInput on a length mismatch or a non-finite component.
  void Add(std::string_view word, std::span<const double> vector);

  size_t dim() const { return dim_; }
  size_t size() const { return words_.size(); }
  bool Contains(std::string_view word) const;

  // nullptr for out-of-vocabulary words.
  const double* Find(std::string_view word) const;
  double Norm(std::string_view word) const;

  // Words in file order.
  const std::vector<std::string>& vocab_order() const { return words_; }

 private:
  size_t dim_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::vector<double> norms_;
};

// Lines of `word v1 ... vd`. A leading word2vec-style "count dim" header is
// skipped. Keeps the first `limit` entries in file order when set.
EmbeddingStore LoadVectors(const std::string& path,
                           std::optional<size_t> limit = std::nullopt);
EmbeddingStore LoadVectors(std::istream& in, std::optional<size_t> limit,
                           const std::string& source_name);

// Throws UnknownWord / ZeroVector.
double Cosine(std::string_view a, std::string_view b,
              const EmbeddingStore& store);

using ScoredWord = std::pair<std::string, double>;

// Top-k candidates by cosine to `word`, excluding `exclude` and `word`
// itself. Descending score; ties go to the lexicographically smaller word.
// Throws UnknownWord when `word` is not in the store.
std::vector<ScoredWord> Nearest(std::string_view word,
                                const EmbeddingStore& store,
                                const std::set<std::string>& candidates,
                                const std::set<std::string>& exclude,
                                size_t k);

// Mean of the in-vocabulary lowercase word vectors; zeros if there are none.
std::vector<double> MeanPool(std::string_view text,
                             const EmbeddingStore& store);

// Word-level tokens used by MeanPool: lowercase, split at anything that is
// not a letter, digit, hyphen or apostrophe.
std::vector<std::string> EmbeddingTokens(std::string_view text);

}  // namespace capqa

#endif  // CAPQA_EMBED_H_
