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

// Question-answer pairs rendered from semantic-role frames produced by an
// external SRL model. Frames arrive as JSONL; this module never runs a model.

#ifndef CAPQA_QGEN_SRL_H_
#define CAPQA_QGEN_SRL_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "capqa/corpus.h"
#include "capqa/lingo.h"
#include "capqa/qa_pair.h"

namespace capqa {

enum class Role { kAgent, kPatient, kLocation, kTime, kManner, kOther };

std::string_view RoleName(Role role);
// Accepts the role names and PropBank labels (ARG0, ARG1, ARGM-LOC,
// ARGM-TMP, ARGM-MNR); any other label maps to kOther.
Role ParseRole(std::string_view label);

// Byte range into the caption, half-open.
struct CharSpan {
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const CharSpan&) const = default;
};

struct SrlArg {
  Role role = Role::kOther;
  std::string text;
  CharSpan span;
  bool operator==(const SrlArg&) const = default;
};

struct SrlFrame {
  ImageId image_id = 0;
  int caption_index = 0;
  std::string predicate_lemma;
  CharSpan predicate_span;
  std::vector<SrlArg> args;
  // The caption the spans index into; filled in by LoadFrames.
  std::string caption;
};

struct FrameSet {
  std::vector<SrlFrame> frames;
  // Frames whose image_id or caption_index is not in the corpus.
  size_t dropped = 0;
};

// Throws MalformedInput on bad JSON, spans outside the caption, argument text
// that does not match its span, empty arguments, or a repeated AGENT/PATIENT.
FrameSet LoadFrames(const std::string& path, const Corpus& corpus);
FrameSet LoadFrames(std::istream& in, const Corpus& corpus,
                    const std::string& source_name);

enum class Animacy { kAnimate, kInanimate };

// Animate iff the head lemma of the phrase's first noun phrase (or its last
// word when it has none) is a person or animal word.
Animacy PhraseAnimacy(std::string_view phrase, const Lexicons& lex);

// Wh-word for a role; empty for kOther.
std::string_view WhWord(Role role);

// One phrase-answer pair per non-OTHER argument, in argument order.
std::vector<QAPair> RenderQa(const SrlFrame& frame, const Lexicons& lex);

}  // namespace capqa

#endif  // CAPQA_QGEN_SRL_H_
