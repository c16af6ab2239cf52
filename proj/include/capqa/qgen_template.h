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

// Template-based question generation from analyzed captions: Yes-No, Object,
// Number, Color and Location questions, plus the negation, adversarial-word
// and antonym transformations that produce "no"-answer counterparts.

#ifndef CAPQA_QGEN_TEMPLATE_H_
#define CAPQA_QGEN_TEMPLATE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "capqa/corpus.h"
#include "capqa/embed.h"
#include "capqa/lingo.h"
#include "capqa/qa_pair.h"

namespace capqa {

// How the "no" counterpart of a Yes-No question is produced.
enum class NoTransform {
  kSeeded,       // negation or adversarial, chosen by the caption's stream
  kNegation,
  kAdversarial,  // falls back to antonym, then negation
};

struct GenConfig {
  uint64_t seed = 0;
  std::vector<std::string> yesno_prefixes = {"is there", "is this", "is the",
                                             "are there"};
  std::vector<std::string> number_frames = {"how many", "what is the count of"};
  // Minimum cosine for an adversarial substitute.
  double adversarial_threshold = 0.4;
  // 0 means unlimited. A Yes-No pair counts as two and is never split.
  size_t max_questions_per_caption = 0;
  // Object questions split captions longer than this many words.
  size_t split_threshold = 14;
  NoTransform no_transform = NoTransform::kSeeded;

  bool yesno = true;
  bool object = true;
  bool number = true;
  bool color = true;
  bool location = true;
  // Adversarial variants of Number and Object questions.
  bool adversarial_open = true;
  // Negated variants of Color questions.
  bool negate_color = true;

  // Throws BadConfig.
  void Validate() const;
};

// Per-(caption, generator) random stream seed. Independent of every other
// image, so adding or removing images never perturbs existing output.
uint64_t StreamSeed(uint64_t seed, ImageId image_id, int caption_index,
                    std::string_view generator);

// Head lemmas of all noun phrases over all captions of one image.
std::set<std::string> ImageObjectLemmas(const CaptionRecord& record,
                                        const Lexicons& lex);

// Noun-phrase head lemmas over the whole corpus, the `cap` most frequent
// (ties lexicographic).
std::set<std::string> BuildObjectVocab(const Corpus& corpus,
                                       const Lexicons& lex, size_t cap = 5000);

// Nearest-neighbour lookup of adversarial substitutes. Results equal
// Nearest(word, store, object_vocab, exclude, 1) filtered by the threshold;
// per-word rankings are memoized, so one instance is shared across workers.
class AdversarialIndex {
 public:
  AdversarialIndex(const EmbeddingStore* store, std::set<std::string> object_vocab,
                   double threshold);

  // Tries the surface word first, then its lemma. nullopt when the word is
  // out of vocabulary or no candidate clears the threshold.
  std::optional<ScoredWord> Substitute(std::string_view word,
                                       const std::set<std::string>& exclude) const;

  const std::set<std::string>& object_vocab() const { return object_vocab_; }
  double threshold() const { return threshold_; }

 private:
  const std::vector<ScoredWord>& Ranking(const std::string& word) const;

  const EmbeddingStore* store_;
  std::set<std::string> object_vocab_;
  double threshold_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::string, std::unique_ptr<std::vector<ScoredWord>>> cache_;
};

// Everything a generator needs about the image besides the caption itself.
struct ImageContext {
  const CaptionRecord* record = nullptr;
  std::set<std::string> object_lemmas;
  const AdversarialIndex* adversarial = nullptr;  // may be null
};

// One "yes" question and exactly one paired "no" question. Throws NoObjects
// when the caption has no noun phrase.
std::vector<QAPair> GenYesNo(const ImageContext& image, int caption_index,
                             const Analysis& analysis, const Lexicons& lex,
                             const GenConfig& cfg);
std::vector<QAPair> GenObject(const ImageContext& image, int caption_index,
                              const Analysis& analysis, const Lexicons& lex,
                              const GenConfig& cfg);
std::vector<QAPair> GenNumber(const ImageContext& image, int caption_index,
                              const Analysis& analysis, const Lexicons& lex,
                              const GenConfig& cfg);
std::vector<QAPair> GenColor(const ImageContext& image, int caption_index,
                             const Analysis& analysis, const Lexicons& lex,
                             const GenConfig& cfg);
std::vector<QAPair> GenLocation(const ImageContext& image, int caption_index,
                                const Analysis& analysis, const Lexicons& lex,
                                const GenConfig& cfg);

// yesno: "not"/"no" inserted after the auxiliary and its subject, answer
// flipped. color: "What is not the color of ...", answer a different color
// drawn from `seed`. Other answer types throw Unsupported. The result keeps
// the input's ids; callers assign a new qa_id.
QAPair NegateQa(const QAPair& qa, const Lexicons& lex, uint64_t seed);

// Swaps the first substitutable object word for an embedding neighbour that
// appears in no caption of the image. yesno -> "no", number -> "none",
// anything else -> "can't say".
std::optional<QAPair> AdversarialQa(const QAPair& qa, const Lexicons& lex,
                                    const AdversarialIndex& index,
                                    const std::set<std::string>& image_objects);

// Swaps the first adjective with a listed antonym; yesno only.
std::optional<QAPair> AntonymQa(const QAPair& qa, const Lexicons& lex);

// All enabled template generators over every caption of one record, with
// transformations applied and qa_ids assigned.
std::vector<QAPair> GenerateTemplates(const ImageContext& image,
                                      const Lexicons& lex, const GenConfig& cfg);

}  // namespace capqa

#endif  // CAPQA_QGEN_TEMPLATE_H_
