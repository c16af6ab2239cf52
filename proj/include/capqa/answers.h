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

// Sub-phrase weighted answers: every sub-phrase of an answer, weighted by its
// share of the answer's tokens, plus the answer vocabulary those phrases
// index into.

#ifndef CAPQA_ANSWERS_H_
#define CAPQA_ANSWERS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "capqa/lingo.h"
#include "capqa/qa_pair.h"

namespace capqa {

// Answers longer than this expand to contiguous spans only.
inline constexpr size_t kMaxSubsequenceTokens = 12;

struct AnswerEntry {
  std::string phrase;
  // Exact weight numerator / denominator (token counts).
  int64_t tokens = 0;
  int64_t total = 1;

  double weight() const { return static_cast<double>(tokens) / static_cast<double>(total); }
};

struct WeightedAnswerSet {
  // Normalized full answer.
  std::string full_answer;
  std::vector<AnswerEntry> entries;
};

// Lowercase, punctuation stripped (apostrophes and hyphens inside words
// kept), leading determiners dropped. Empty when nothing is left.
std::vector<std::string> NormalizeAnswerTokens(std::string_view answer);
std::string NormalizeAnswer(std::string_view answer);

// The full answer (weight 1), every proper order-preserving subsequence that
// is a single word or keeps the head word, their number word/digit variants,
// and the singular/plural variant of the head word alone. Each entry weighs
// its token count over the answer's token count. Throws MalformedInput when
// the answer normalizes to nothing.
WeightedAnswerSet ExpandAnswer(std::string_view answer, const Lexicons& lex);

// ExpandAnswer as QAPair weights.
std::vector<WeightedPhrase> AnswerWeights(std::string_view answer, const Lexicons& lex);

class AnswerVocab {
 public:
  AnswerVocab() = default;
  explicit AnswerVocab(std::vector<std::string> phrases);

  const std::vector<std::string>& phrases() const { return phrases_; }
  size_t size() const { return phrases_.size(); }
  // -1 when absent.
  int64_t IndexOf(std::string_view phrase) const;

 private:
  std::vector<std::string> phrases_;
  std::unordered_map<std::string, size_t> index_;
};

// Each pair contributes every phrase of its expansion once (its weights when
// present, otherwise a fresh expansion). Phrases with frequency >= min_count,
// most frequent first, ties lexicographic. Throws EmptyVocab.
AnswerVocab BuildVocab(std::span<const QAPair> pairs, size_t min_count,
                       const Lexicons& lex);
// Phrase frequencies as BuildVocab counts them, for mergeable partial counts.
std::map<std::string, size_t> CountAnswerPhrases(std::span<const QAPair> pairs,
                                                 const Lexicons& lex);
AnswerVocab VocabFromCounts(const std::map<std::string, size_t>& counts,
                            size_t min_count);

// "#capqa-vocab v1 count=N" followed by one phrase per line.
void SaveVocab(const AnswerVocab& vocab, const std::string& path);
AnswerVocab LoadVocab(const std::string& path);

struct SwaTargetVector {
  std::map<size_t, double> values;
  // Expansion phrases missing from the vocabulary.
  size_t dropped = 0;
};

// Requires qa.weights (MalformedInput otherwise). Throws AnswerNotInVocab
// when the full answer itself is not in the vocabulary.
SwaTargetVector SwaTarget(const QAPair& qa, const AnswerVocab& vocab);

}  // namespace capqa

#endif  // CAPQA_ANSWERS_H_
