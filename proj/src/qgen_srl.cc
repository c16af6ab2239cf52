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

#include "capqa/qgen_srl.h"

#include <fstream>
#include <set>

#include "capqa/error.h"
#include "json.hpp"

namespace capqa {

namespace {

using json = nlohmann::json;

CharSpan ParseSpan(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw Error(ErrorCode::kMalformedInput, "span must be [start, end]");
  }
  const int64_t b = j[0].get<int64_t>();
  const int64_t e = j[1].get<int64_t>();
  if (b < 0 || e <= b) {
    throw Error(ErrorCode::kMalformedInput,
                "bad span [" + std::to_string(b) + ", " + std::to_string(e) + "]");
  }
  return {static_cast<size_t>(b), static_cast<size_t>(e)};
}

void CheckSpan(const CharSpan& span, const std::string& caption) {
  if (span.end > caption.size()) {
    throw Error(ErrorCode::kMalformedInput,
                "span [" + std::to_string(span.begin) + ", " +
                    std::to_string(span.end) + "] exceeds caption length " +
                    std::to_string(caption.size()));
  }
}

SrlFrame ParseFrame(const json& j, const Corpus& corpus, bool* resolved) {
  SrlFrame frame;
  frame.image_id = j.at("image_id").get<ImageId>();
  frame.caption_index = j.at("caption_index").get<int>();
  const json& predicate = j.at("predicate");
  frame.predicate_lemma = ToLower(predicate.at("lemma").get<std::string>());
  frame.predicate_span = ParseSpan(predicate.at("span"));
  for (const json& arg : j.at("args")) {
    SrlArg a;
    a.role = ParseRole(arg.at("role").get<std::string>());
    a.text = arg.at("text").get<std::string>();
    a.span = ParseSpan(arg.at("span"));
    if (NormalizeSpaces(a.text).empty()) {
      throw Error(ErrorCode::kMalformedInput, "empty argument text");
    }
    frame.args.push_back(std::move(a));
  }
  int agents = 0;
  int patients = 0;
  for (const SrlArg& a : frame.args) {
    agents += a.role == Role::kAgent;
    patients += a.role == Role::kPatient;
  }
  if (agents > 1 || patients > 1) {
    throw Error(ErrorCode::kMalformedInput, "AGENT or PATIENT repeated in one frame");
  }

  const CaptionRecord* record = corpus.Find(frame.image_id);
  *resolved = record && frame.caption_index >= 0 &&
              static_cast<size_t>(frame.caption_index) < record->captions.size();
  if (!*resolved) return frame;
  frame.caption = record->captions[frame.caption_index];
  CheckSpan(frame.predicate_span, frame.caption);
  for (const SrlArg& a : frame.args) {
    CheckSpan(a.span, frame.caption);
    if (frame.caption.compare(a.span.begin, a.span.end - a.span.begin, a.text) != 0) {
      throw Error(ErrorCode::kMalformedInput,
                  "argument text `" + a.text + "` does not match its span");
    }
  }
  return frame;
}

std::string Filler(Animacy animacy) {
  return animacy == Animacy::kAnimate ? "someone" : "something";
}

}  // namespace

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kAgent: return "AGENT";
    case Role::kPatient: return "PATIENT";
    case Role::kLocation: return "LOCATION";
    case Role::kTime: return "TIME";
    case Role::kManner: return "MANNER";
    case Role::kOther: return "OTHER";
  }
  return "OTHER";
}

Role ParseRole(std::string_view label) {
  const std::string upper = [&] {
    std::string s(label);
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  if (upper == "AGENT" || upper == "ARG0" || upper == "A0") return Role::kAgent;
  if (upper == "PATIENT" || upper == "ARG1" || upper == "A1") return Role::kPatient;
  if (upper == "LOCATION" || upper == "ARGM-LOC" || upper == "AM-LOC") return Role::kLocation;
  if (upper == "TIME" || upper == "ARGM-TMP" || upper == "AM-TMP") return Role::kTime;
  if (upper == "MANNER" || upper == "ARGM-MNR" || upper == "AM-MNR") return Role::kManner;
  return Role::kOther;
}

FrameSet LoadFrames(std::istream& in, const Corpus& corpus,
                    const std::string& source_name) {
  FrameSet out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (NormalizeSpaces(line).empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no) + ": ";
    try {
      json j = json::parse(line);
      bool resolved = false;
      SrlFrame frame = ParseFrame(j, corpus, &resolved);
      if (!resolved) {
        ++out.dropped;
        continue;
      }
      out.frames.push_back(std::move(frame));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, where + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedInput, where + e.what());
    }
  }
  return out;
}

FrameSet LoadFrames(const std::string& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open frames file " + path);
  return LoadFrames(in, corpus, path);
}

Animacy PhraseAnimacy(std::string_view phrase, const Lexicons& lex) {
  if (NormalizeSpaces(phrase).empty()) {
    throw Error(ErrorCode::kMalformedInput, "empty phrase");
  }
  const Analysis a = Analyze(phrase, lex);
  std::string lemma;
  if (!a.nps.empty()) {
    lemma = a.nps.front().Head().lemma;
  } else {
    for (auto it = a.tokens.rbegin(); it != a.tokens.rend(); ++it) {
      if (!it->IsPunct()) {
        lemma = Singularize(it->Lower());
        break;
      }
    }
  }
  return lex.IsAnimate(lemma) ? Animacy::kAnimate : Animacy::kInanimate;
}

std::string_view WhWord(Role role) {
  switch (role) {
    case Role::kAgent: return "who";
    case Role::kPatient: return "what";
    case Role::kLocation: return "where";
    case Role::kTime: return "when";
    case Role::kManner: return "how";
    case Role::kOther: return "";
  }
  return "";
}

std::vector<QAPair> RenderQa(const SrlFrame& frame, const Lexicons& lex) {
  std::vector<QAPair> out;
  const SrlArg* agent = nullptr;
  const SrlArg* patient = nullptr;
  for (const SrlArg& a : frame.args) {
    if (a.role == Role::kAgent) agent = &a;
    if (a.role == Role::kPatient) patient = &a;
  }

  std::string aux = "is";
  std::string verb = PresentParticiple(frame.predicate_lemma);
  if (frame.predicate_span.end <= frame.caption.size() &&
      frame.predicate_span.begin < frame.predicate_span.end) {
    const std::string surface = ToLower(frame.caption.substr(
        frame.predicate_span.begin,
        frame.predicate_span.end - frame.predicate_span.begin));
    if (surface.size() > 4 && surface.ends_with("ing")) verb = surface;
    if (!frame.caption.empty()) {
      const Analysis before =
          Analyze(frame.caption.substr(0, frame.predicate_span.begin) + ".", lex);
      for (const Token& t : before.tokens) {
        const std::string w = t.Lower();
        if (w == "was" || w == "were") aux = "was";
      }
    }
  }
  const std::string subject_slot =
      agent ? Filler(PhraseAnimacy(agent->text, lex)) : "something";
  const std::string object_slot =
      patient ? Filler(PhraseAnimacy(patient->text, lex)) : "";

  const std::string generator =
      "srl-" + frame.predicate_lemma + "-" + std::to_string(frame.predicate_span.begin);
  int ordinal = 0;
  for (const SrlArg& arg : frame.args) {
    const std::string_view wh = WhWord(arg.role);
    if (wh.empty()) {
      ++ordinal;
      continue;
    }
    std::vector<std::string> words = {std::string(wh), aux};
    if (arg.role != Role::kAgent) words.push_back(subject_slot);
    words.push_back(verb);
    if (arg.role != Role::kPatient && !object_slot.empty()) words.push_back(object_slot);
    std::string question = JoinWords(words);
    question[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(question[0])));
    question.push_back('?');

    QAPair qa;
    qa.qa_id = MakeQaId(frame.image_id, frame.caption_index, generator, ordinal++);
    qa.image_id = frame.image_id;
    qa.question = std::move(question);
    qa.answer = arg.text;
    qa.answer_type = AnswerType::kPhrase;
    qa.source = Source::kSrl;
    qa.source_caption = frame.caption;
    qa.caption_index = frame.caption_index;
    out.push_back(std::move(qa));
  }
  return out;
}

}  // namespace capqa
