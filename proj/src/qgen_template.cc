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

#include "capqa/qgen_template.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "capqa/error.h"
#include "capqa/hashing.h"
#include "lexicon_data.h"

namespace capqa {

namespace {

bool IsClauseBreak(const Token& t) {
  const std::string lower = t.Lower();
  return lower == "and" || lower == "or" || lower == "but" || lower == "while" ||
         lower == "whilst" || t.text == "," || t.text == ";";
}

bool IsPastTenseOnly(const std::string& lower) {
  static const lexdata::WordSet kPast = {
      "ate", "wore", "threw", "drove", "rode", "flew", "swam", "saw", "went",
      "took", "gave", "ran", "came", "began", "fell", "got", "lay", "told",
      "found"};
  return kPast.count(lower) > 0;
}

// Index one past the last token that is not sentence-final punctuation.
size_t ContentEnd(const Analysis& a) {
  size_t n = a.tokens.size();
  while (n > 0) {
    const std::string& t = a.tokens[n - 1].text;
    if (t == "." || t == "!" || t == "?" || t == "," || t == ";" || t == ":") {
      --n;
    } else {
      break;
    }
  }
  return n;
}

// Token text, with the sentence-initial capital dropped.
std::string WordAt(const Analysis& a, size_t i) {
  const Token& t = a.tokens[i];
  if (i != 0 || t.pos == Pos::kPropn || t.text == "I") return t.text;
  std::string w = t.text;
  bool rest_lower = std::none_of(w.begin() + 1, w.end(), [](char c) {
    return std::isupper(static_cast<unsigned char>(c));
  });
  if (rest_lower) w[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(w[0])));
  return w;
}

std::vector<std::string> Words(const Analysis& a, size_t begin, size_t end) {
  std::vector<std::string> out;
  for (size_t i = begin; i < end && i < a.tokens.size(); ++i) out.push_back(WordAt(a, i));
  return out;
}

// Index of the first clause break at or after `begin`, or `end`.
size_t ClauseEnd(const Analysis& a, size_t begin, size_t end) {
  for (size_t i = begin; i < end; ++i) {
    if (IsClauseBreak(a.tokens[i])) return i;
  }
  return end;
}

void Append(std::vector<std::string>& dst, const std::vector<std::string>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string FinishQuestion(std::vector<std::string> words) {
  while (!words.empty()) {
    const std::string& w = words.back();
    if (w == "." || w == "!" || w == "?" || w == "," || w == ";" || w == ":") {
      words.pop_back();
    } else {
      break;
    }
  }
  std::string text = NormalizeSpaces(FixArticles(JoinWords(words)));
  if (!text.empty()) {
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  }
  text.push_back('?');
  return text;
}

struct ClauseParse {
  const NounPhrase* subject = nullptr;
  bool existential = false;
  std::optional<size_t> aux;
  std::optional<size_t> verb;
  // First AUX/VERB token after the subject and its modifiers.
  size_t group_begin = 0;
  // One past the verb group (aux, verb, particles).
  size_t verb_end = 0;
  size_t end = 0;

  bool HasPredicate() const { return aux.has_value() || verb.has_value(); }
};

ClauseParse ParseClause(const Analysis& a) {
  ClauseParse p;
  p.end = ContentEnd(a);
  size_t start = 0;
  if (p.end >= 2 && a.tokens[0].Lower() == "there" &&
      a.tokens[1].pos == Pos::kAux) {
    p.existential = true;
    p.aux = 1;
    start = 2;
  }
  p.subject = a.NpStartingAt(start);
  if (!p.subject || p.subject->end > p.end) {
    p.subject = nullptr;
    return p;
  }
  size_t j = p.subject->end;
  while (j < p.end) {
    const Token& t = a.tokens[j];
    if (t.pos == Pos::kAux || t.pos == Pos::kVerb) break;
    if (t.IsPunct() || IsClauseBreak(t)) {
      j = p.end;
      break;
    }
    ++j;
  }
  // A participle directly after the subject is a reduced relative when an
  // auxiliary follows it in the same clause: "a girl wearing a hat is ...".
  if (j < p.end && !p.existential && a.tokens[j].pos == Pos::kVerb &&
      (IsProgressiveForm(a.tokens[j]) || IsParticipleForm(a.tokens[j]))) {
    for (size_t m = j + 1; m + 1 < p.end; ++m) {
      const Token& t = a.tokens[m];
      if (t.IsPunct() || IsClauseBreak(t)) break;
      if (t.pos == Pos::kAux) {
        j = m;
        break;
      }
    }
  }
  p.group_begin = j;
  p.verb_end = j;
  if (j >= p.end) return p;
  if (a.tokens[j].pos == Pos::kAux) {
    if (!p.existential) p.aux = j;
    ++j;
    while (j < p.end && (a.tokens[j].pos == Pos::kAux ||
                         (a.tokens[j].pos == Pos::kAdv &&
                          a.tokens[j].Lower() != "not" &&
                          a.tokens[j].Lower() != "n't"))) {
      ++j;
    }
  }
  if (j < p.end && a.tokens[j].pos == Pos::kVerb) {
    p.verb = j;
    ++j;
    while (j < p.end && lexdata::Particles().count(a.tokens[j].Lower())) ++j;
  }
  p.verb_end = j;
  return p;
}

// The subject restated for a fronted question: "A young man in a hat" ->
// "the young man in a hat".
std::vector<std::string> SubjectWords(const Analysis& a, const ClauseParse& p,
                                      bool with_modifiers) {
  const NounPhrase& np = *p.subject;
  std::vector<std::string> words;
  if (!np.determiner && np.Head().pos != Pos::kPropn && !np.is_possessed) {
    words.push_back("the");
  }
  for (size_t k = np.begin; k < np.end; ++k) {
    std::string w = WordAt(a, k);
    if (np.determiner && k == np.begin + *np.determiner) {
      const std::string lower = ToLower(w);
      if (lower == "a" || lower == "an") w = "the";
    }
    words.push_back(std::move(w));
  }
  if (with_modifiers) Append(words, Words(a, np.end, p.group_begin));
  return words;
}

struct FrontedVerb {
  std::string aux;
  std::vector<std::string> verb_words;
};

// Auxiliary to front and the verb words left in place. nullopt when the verb
// form cannot be inverted reliably (simple past without an auxiliary).
std::optional<FrontedVerb> FrontVerb(const Analysis& a, const ClauseParse& p,
                                     const Lexicons& lex,
                                     bool target_follows_verb) {
  if (!p.subject || !p.HasPredicate()) return std::nullopt;
  const bool plural = IsPluralPhrase(*p.subject, lex);
  FrontedVerb out;
  if (p.existential) {
    out.aux = a.tokens[1].Lower();
    if (p.verb) out.verb_words = Words(a, *p.verb, p.verb_end);
    return out;
  }
  if (p.aux) {
    out.aux = a.tokens[*p.aux].Lower();
    if (out.aux == "'s") out.aux = "is";
    if (out.aux == "'re") out.aux = "are";
    out.verb_words = Words(a, *p.aux + 1, p.verb_end);
    return out;
  }
  const Token& v = a.tokens[*p.verb];
  const std::string lower = v.Lower();
  if (IsProgressiveForm(v)) {
    out.aux = plural ? "are" : "is";
    out.verb_words = Words(a, *p.verb, p.verb_end);
    return out;
  }
  if (IsParticipleForm(v)) {
    // "A man parked a car" is active past; only reduced passives invert.
    if (target_follows_verb) return std::nullopt;
    out.aux = plural ? "are" : "is";
    out.verb_words = Words(a, *p.verb, p.verb_end);
    return out;
  }
  if (IsPastTenseOnly(lower)) return std::nullopt;
  const std::string base = VerbBase(lower);
  if (base != lower) {
    out.aux = "does";
    out.verb_words.push_back(base);
    Append(out.verb_words, Words(a, *p.verb + 1, p.verb_end));
    return out;
  }
  out.aux = "do";
  out.verb_words = Words(a, *p.verb, p.verb_end);
  return out;
}

bool IsFiniteVerb(const Token& t) {
  return t.pos == Pos::kVerb && !IsProgressiveForm(t) && !IsParticipleForm(t);
}

bool EligibleObject(const NounPhrase& np) {
  if (np.is_possessor || np.HasPossessiveDeterminer()) return false;
  if (!np.Head().IsNominal()) return false;
  return lexdata::RelationalNouns().count(np.Head().lemma) == 0;
}

std::string ObjectAnswer(const NounPhrase& np) {
  if (!np.quantifier && !np.color) return np.Head().Lower();
  std::vector<std::string> words;
  for (size_t k = 0; k < np.tokens.size(); ++k) {
    if (np.determiner && k == *np.determiner) continue;
    words.push_back(np.tokens[k].Lower());
  }
  return JoinWords(words);
}

std::vector<std::string> PluralNpWords(const NounPhrase& np) {
  std::vector<std::string> words;
  for (size_t k = 0; k < np.tokens.size(); ++k) {
    if (np.determiner && k == *np.determiner) continue;
    if (np.quantifier && k == *np.quantifier) continue;
    if (k == np.head) {
      words.push_back(IsPluralNoun(np.Head()) ? np.Head().Lower()
                                              : Pluralize(np.Head().lemma));
    } else {
      words.push_back(np.tokens[k].Lower());
    }
  }
  return words;
}

QAPair MakePair(const ImageContext& image, int caption_index,
                std::string_view generator, int ordinal, std::string question,
                std::string answer, AnswerType type, Source source) {
  QAPair qa;
  qa.qa_id = MakeQaId(image.record->image_id, caption_index, generator, ordinal);
  qa.image_id = image.record->image_id;
  qa.question = std::move(question);
  qa.answer = std::move(answer);
  qa.answer_type = type;
  qa.source = source;
  qa.caption_index = caption_index;
  if (caption_index >= 0 &&
      static_cast<size_t>(caption_index) < image.record->captions.size()) {
    qa.source_caption = image.record->captions[caption_index];
  }
  return qa;
}

// Long captions are split at the first coordination or at a second
// participial verb; the second part inherits the subject when it starts
// with a verb.
std::vector<Analysis> ObjectClauses(const Analysis& a, const Lexicons& lex,
                                    size_t threshold) {
  const size_t end = ContentEnd(a);
  size_t words = 0;
  for (size_t i = 0; i < end; ++i) words += a.tokens[i].IsPunct() ? 0 : 1;
  if (words <= threshold) return {a};
  const ClauseParse p = ParseClause(a);
  const size_t after_subject = p.subject ? p.subject->end : 1;
  std::optional<size_t> boundary;
  bool at_conj = false;
  for (size_t i = std::max<size_t>(after_subject, 2); i < end; ++i) {
    if (IsClauseBreak(a.tokens[i])) {
      boundary = i;
      at_conj = true;
      break;
    }
    if (p.verb && i > *p.verb && a.tokens[i].pos == Pos::kVerb &&
        IsProgressiveForm(a.tokens[i])) {
      boundary = i;
      break;
    }
  }
  if (!boundary) return {a};
  std::vector<Analysis> out;
  out.push_back(Analyze(JoinTokens(std::span(a.tokens).subspan(0, *boundary)), lex));
  const size_t rest_begin = *boundary + (at_conj ? 1 : 0);
  if (rest_begin >= end) return out;
  std::string rest = JoinTokens(std::span(a.tokens).subspan(rest_begin, end - rest_begin));
  const Pos first = a.tokens[rest_begin].pos;
  if ((first == Pos::kVerb || first == Pos::kAux) && p.subject) {
    rest = p.subject->Text() + " " + rest;
  }
  out.push_back(Analyze(rest, lex));
  return out;
}

}  // namespace

void GenConfig::Validate() const {
  if (yesno_prefixes.empty()) {
    throw Error(ErrorCode::kBadConfig, "yesno_prefixes must not be empty");
  }
  if (number_frames.empty()) {
    throw Error(ErrorCode::kBadConfig, "number_frames must not be empty");
  }
  if (!(adversarial_threshold >= 0.0 && adversarial_threshold <= 1.0)) {
    throw Error(ErrorCode::kBadConfig, "adversarial_threshold must lie in [0,1]");
  }
}

uint64_t StreamSeed(uint64_t seed, ImageId image_id, int caption_index,
                    std::string_view generator) {
  StableHasher h;
  h.Add(seed).Add(static_cast<int64_t>(image_id)).Add(caption_index).Add(generator);
  return h.Digest();
}

std::set<std::string> ImageObjectLemmas(const CaptionRecord& record,
                                        const Lexicons& lex) {
  std::set<std::string> lemmas;
  for (const auto& caption : record.captions) {
    if (NormalizeSpaces(caption).empty()) continue;
    Analysis a = Analyze(caption, lex);
    for (const auto& np : a.nps) lemmas.insert(np.Head().lemma);
  }
  return lemmas;
}

std::set<std::string> BuildObjectVocab(const Corpus& corpus, const Lexicons& lex,
                                       size_t cap) {
  std::map<std::string, size_t> counts;
  for (const auto& record : corpus.Iterate()) {
    for (const auto& caption : record.captions) {
      Analysis a = Analyze(caption, lex);
      for (const auto& np : a.nps) ++counts[np.Head().lemma];
    }
  }
  std::vector<std::pair<std::string, size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second > y.second;
  });
  if (ranked.size() > cap) ranked.resize(cap);
  std::set<std::string> vocab;
  for (auto& [word, count] : ranked) vocab.insert(word);
  return vocab;
}

AdversarialIndex::AdversarialIndex(const EmbeddingStore* store,
                                   std::set<std::string> object_vocab,
                                   double threshold)
    : store_(store), object_vocab_(std::move(object_vocab)), threshold_(threshold) {}

const std::vector<ScoredWord>& AdversarialIndex::Ranking(const std::string& word) const {
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(word);
    if (it != cache_.end()) return *it->second;
  }
  auto ranking = std::make_unique<std::vector<ScoredWord>>(
      Nearest(word, *store_, object_vocab_, {}, object_vocab_.size()));
  auto cut = std::find_if(ranking->begin(), ranking->end(),
                          [&](const ScoredWord& s) { return s.second < threshold_; });
  ranking->erase(cut, ranking->end());
  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.emplace(word, std::move(ranking));
  return *it->second;
}

std::optional<ScoredWord> AdversarialIndex::Substitute(
    std::string_view word, const std::set<std::string>& exclude) const {
  if (!store_) return std::nullopt;
  std::string query = ToLower(word);
  if (!store_->Contains(query)) {
    query = Singularize(query);
    if (!store_->Contains(query)) return std::nullopt;
  }
  const std::string lemma = Singularize(query);
  for (const ScoredWord& candidate : Ranking(query)) {
    if (candidate.first == lemma || exclude.count(candidate.first)) continue;
    return candidate;
  }
  return std::nullopt;
}

std::vector<QAPair> GenYesNo(const ImageContext& image, int caption_index,
                             const Analysis& analysis, const Lexicons& lex,
                             const GenConfig& cfg) {
  if (analysis.nps.empty()) {
    throw Error(ErrorCode::kNoObjects, "no noun phrase in: " + analysis.text);
  }
  SeededRng rng(StreamSeed(cfg.seed, image.record->image_id, caption_index, "yesno"));
  const size_t end = ContentEnd(analysis);
  constexpr size_t kIndefinite = static_cast<size_t>(-1);

  std::vector<size_t> body;
  bool removed = false;
  for (size_t i = 0; i < end; ++i) {
    if (!removed && lex.stop_aux.count(analysis.tokens[i].Lower())) {
      removed = true;
      continue;
    }
    body.push_back(i);
  }
  if (!body.empty() && analysis.tokens[body[0]].Lower() == "there") {
    body.erase(body.begin());
  }

  const bool plural = IsPluralPhrase(analysis.nps.front(), lex);
  std::vector<std::string> prefix =
      SplitWords(ToLower(cfg.yesno_prefixes[rng.Uniform(cfg.yesno_prefixes.size())]));
  for (std::string& w : prefix) {
    if (w == "is" || w == "are") w = plural ? "are" : "is";
    if (w == "this" || w == "these") w = plural ? "these" : "this";
  }
  if (!prefix.empty() && prefix.back() == "the" && !body.empty() &&
      analysis.tokens[body[0]].pos == Pos::kDet) {
    body.erase(body.begin());
  }
  if (!prefix.empty() && prefix.back() == "there" && !body.empty() &&
      analysis.tokens[body[0]].Lower() == "the") {
    if (plural) {
      body.erase(body.begin());
    } else {
      body[0] = kIndefinite;
    }
  }
  std::vector<std::string> words = prefix;
  bool verb_seen = false;
  for (size_t i : body) {
    if (i == kIndefinite) {
      words.push_back("a");
      continue;
    }
    const Token& t = analysis.tokens[i];
    // Without a stripped auxiliary a finite verb reads "Is there a dog
    // running", not "Is there a dog runs".
    if (!removed && !verb_seen && t.pos == Pos::kVerb) {
      verb_seen = true;
      const std::string lower = t.Lower();
      if (IsFiniteVerb(t) && !IsPastTenseOnly(lower)) {
        words.push_back(PresentParticiple(VerbBase(lower)));
        continue;
      }
    }
    words.push_back(WordAt(analysis, i));
  }

  std::vector<QAPair> out;
  out.push_back(MakePair(image, caption_index, "yesno", 0, FinishQuestion(words),
                         "yes", AnswerType::kYesNo, Source::kTemplate));

  NoTransform mode = cfg.no_transform;
  if (mode == NoTransform::kSeeded) {
    mode = rng.Uniform(2) == 0 ? NoTransform::kNegation : NoTransform::kAdversarial;
  }
  const uint64_t negation_seed = rng.Next();
  std::optional<QAPair> no;
  if (mode == NoTransform::kAdversarial) {
    if (image.adversarial) {
      no = AdversarialQa(out[0], lex, *image.adversarial, image.object_lemmas);
    }
    if (!no) no = AntonymQa(out[0], lex);
  }
  if (!no) no = NegateQa(out[0], lex, negation_seed);
  no->qa_id = MakeQaId(image.record->image_id, caption_index, "yesno-no", 0);
  out.push_back(std::move(*no));
  return out;
}

std::vector<QAPair> GenObject(const ImageContext& image, int caption_index,
                              const Analysis& analysis, const Lexicons& lex,
                              const GenConfig& cfg) {
  std::vector<QAPair> out;
  std::set<std::string> seen;
  int ordinal = 0;
  for (const Analysis& a : ObjectClauses(analysis, lex, cfg.split_threshold)) {
    const ClauseParse p = ParseClause(a);
    for (const NounPhrase& np : a.nps) {
      if (np.end > p.end || !EligibleObject(np)) continue;
      std::vector<std::string> words;
      if (p.subject && np.begin == p.subject->begin) {
        if (lex.persons.count(np.Head().lemma)) continue;
        if (p.existential) {
          words = {"what", a.tokens[1].Lower()};
          Append(words, Words(a, np.end, p.end));
        } else if (np.end == p.end) {
          words = {"what", "is", "this"};
        } else {
          const Token& next = a.tokens[np.end];
          if (IsClauseBreak(next)) continue;
          words = {"what"};
          if (next.pos != Pos::kAux && !IsFiniteVerb(next)) {
            words.push_back(IsPluralPhrase(np, lex) ? "are" : "is");
          }
          Append(words, Words(a, np.end, p.end));
        }
      } else if (p.subject && p.HasPredicate() && np.begin >= p.verb_end) {
        auto fv = FrontVerb(a, p, lex, np.begin == p.verb_end);
        if (!fv) continue;
        words = {"what", fv->aux};
        Append(words, SubjectWords(a, p, true));
        Append(words, fv->verb_words);
        Append(words, Words(a, p.verb_end, np.begin));
        Append(words, Words(a, np.end, ClauseEnd(a, np.end, p.end)));
      } else {
        continue;
      }
      std::string question = FinishQuestion(words);
      std::string answer = ObjectAnswer(np);
      if (!seen.insert(question + "\t" + answer).second) continue;
      out.push_back(MakePair(image, caption_index, "object", ordinal++,
                             std::move(question), std::move(answer),
                             AnswerType::kObject, Source::kTemplate));
    }
  }
  return out;
}

std::vector<QAPair> GenNumber(const ImageContext& image, int caption_index,
                              const Analysis& a, const Lexicons& lex,
                              const GenConfig& cfg) {
  std::vector<QAPair> out;
  SeededRng rng(StreamSeed(cfg.seed, image.record->image_id, caption_index, "number"));
  const ClauseParse p = ParseClause(a);
  int ordinal = 0;
  for (const NounPhrase& np : a.nps) {
    if (!np.quantifier || np.is_possessor || np.end > p.end) continue;
    auto value = lex.NumberValue(np.tokens[*np.quantifier].text);
    if (!value) continue;
    const std::vector<std::string> frame =
        SplitWords(ToLower(cfg.number_frames[rng.Uniform(cfg.number_frames.size())]));
    const bool how_many = frame.size() >= 2 && frame[0] == "how" && frame[1] == "many";
    const bool is_subject = p.subject && np.begin == p.subject->begin;
    std::vector<std::string> words = frame;
    Append(words, PluralNpWords(np));

    if (is_subject && p.existential) {
      if (how_many) words.push_back("are");
      Append(words, Words(a, np.end, p.end));
    } else if (is_subject) {
      const bool rest_empty = np.end == p.end || IsClauseBreak(a.tokens[np.end]);
      if (rest_empty) {
        if (how_many) Append(words, {"are", "there"});
      } else {
        const Token& next = a.tokens[np.end];
        if (!how_many) {
          Append(words, Words(a, np.end + (next.pos == Pos::kAux ? 1 : 0), p.end));
        } else {
          bool insert_aux;
          if (next.pos == Pos::kAux || IsFiniteVerb(next)) {
            insert_aux = false;
          } else if (next.pos == Pos::kVerb && IsProgressiveForm(next)) {
            insert_aux = true;
          } else if (next.pos == Pos::kVerb) {
            // Reduced relative ("boats anchored by ropes") stays as is; a bare
            // clause-final participle ("cars parked") takes the copula.
            insert_aux = p.verb == np.end && p.verb_end == p.end;
          } else {
            insert_aux = true;
          }
          if (insert_aux) words.push_back("are");
          Append(words, Words(a, np.end, p.end));
        }
      }
    } else if (p.subject && p.HasPredicate() && np.begin >= p.verb_end) {
      if (how_many) {
        auto fv = FrontVerb(a, p, lex, np.begin == p.verb_end);
        if (!fv) continue;
        words.push_back(fv->aux);
        Append(words, SubjectWords(a, p, true));
        Append(words, fv->verb_words);
      } else {
        Append(words, SubjectWords(a, p, true));
        Append(words, Words(a, p.group_begin, p.verb_end));
      }
      Append(words, Words(a, p.verb_end, np.begin));
      Append(words, Words(a, np.end, p.end));
    } else {
      if (how_many) Append(words, {"are", "there"});
    }
    out.push_back(MakePair(image, caption_index, "number", ordinal++,
                           FinishQuestion(words), std::to_string(*value),
                           AnswerType::kNumber, Source::kTemplate));
  }
  return out;
}

std::vector<QAPair> GenColor(const ImageContext& image, int caption_index,
                             const Analysis& a, const Lexicons& lex,
                             const GenConfig& cfg) {
  (void)lex;
  (void)cfg;
  std::vector<QAPair> out;
  int ordinal = 0;
  for (size_t n = 0; n < a.nps.size(); ++n) {
    const NounPhrase& np = a.nps[n];
    if (!np.color || np.is_possessor) continue;
    std::vector<std::string> object;
    if (np.is_possessed && n > 0 && a.nps[n - 1].end + 1 == np.begin) {
      const NounPhrase owner = Definitize(a.nps[n - 1]);
      if (!owner.determiner && owner.Head().pos != Pos::kPropn) object.push_back("the");
      for (const Token& t : owner.tokens) object.push_back(ToLower(t.text));
      object.push_back("'s");
    } else if (!np.determiner) {
      object.push_back("the");
    }
    for (size_t k = 0; k < np.tokens.size(); ++k) {
      if (k == *np.color) continue;
      std::string w = np.tokens[k].Lower();
      if (np.determiner && k == *np.determiner && (w == "a" || w == "an")) w = "the";
      object.push_back(std::move(w));
    }
    std::vector<std::string> words = {"what", "is", "the", "color", "of"};
    Append(words, object);
    out.push_back(MakePair(image, caption_index, "color", ordinal++,
                           FinishQuestion(words), np.tokens[*np.color].Lower(),
                           AnswerType::kColor, Source::kTemplate));
  }
  return out;
}

std::vector<QAPair> GenLocation(const ImageContext& image, int caption_index,
                                const Analysis& a, const Lexicons& lex,
                                const GenConfig& cfg) {
  (void)cfg;
  std::vector<QAPair> out;
  const ClauseParse p = ParseClause(a);
  if (!p.subject) return out;
  const NounPhrase& subject = *p.subject;
  const bool plural = IsPluralPhrase(subject, lex);
  int ordinal = 0;
  for (const LocationMatch& m : FindLocations(a, lex)) {
    const size_t loc = m.adp_index;
    if (loc <= subject.begin || loc < subject.end) continue;
    std::vector<std::string> words = {"where"};
    const Token& last = a.tokens[loc - 1];
    if (last.pos == Pos::kVerb || lexdata::Particles().count(last.Lower())) {
      size_t v = loc - 1;
      while (v > subject.end && a.tokens[v].pos != Pos::kVerb) --v;
      if (a.tokens[v].pos != Pos::kVerb) continue;
      size_t aux = v;
      while (aux > subject.end && a.tokens[aux - 1].pos == Pos::kAdv) --aux;
      std::string aux_word;
      std::vector<std::string> verb_words = Words(a, v, loc);
      if (aux > subject.end && a.tokens[aux - 1].pos == Pos::kAux) {
        aux_word = a.tokens[aux - 1].Lower();
      } else if (IsProgressiveForm(a.tokens[v]) || IsParticipleForm(a.tokens[v])) {
        aux_word = plural ? "are" : "is";
      } else if (IsPastTenseOnly(a.tokens[v].Lower())) {
        continue;
      } else {
        const std::string lower = a.tokens[v].Lower();
        const std::string base = VerbBase(lower);
        aux_word = base != lower ? "does" : "do";
        verb_words[0] = base;
      }
      ClauseParse head_only = p;
      words.push_back(aux_word);
      Append(words, SubjectWords(a, head_only, false));
      Append(words, verb_words);
    } else if (last.pos == Pos::kAux) {
      words.push_back(last.Lower());
      std::vector<std::string> subj = SubjectWords(a, p, false);
      Append(words, subj);
      Append(words, Words(a, subject.end, loc - 1));
    } else if (p.HasPredicate() && p.group_begin < loc && p.verb_end <= loc) {
      auto fv = FrontVerb(a, p, lex, false);
      if (!fv) continue;
      words.push_back(fv->aux);
      Append(words, SubjectWords(a, p, true));
      Append(words, fv->verb_words);
      Append(words, Words(a, p.verb_end, loc));
    } else {
      // No predicate before the location: the whole prefix is the subject.
      size_t number_from = subject.begin;
      for (size_t k = subject.begin; k < loc; ++k) {
        if (a.tokens[k].pos == Pos::kAdp) break;
        if (a.tokens[k].IsNominal()) number_from = k;
      }
      const bool prefix_plural = IsPluralNoun(a.tokens[number_from]);
      words.push_back(prefix_plural ? "are" : "is");
      Append(words, SubjectWords(a, p, false));
      Append(words, Words(a, subject.end, loc));
    }
    out.push_back(MakePair(image, caption_index, "location", ordinal++,
                           FinishQuestion(words), m.phrase,
                           AnswerType::kLocation, Source::kTemplate));
  }
  return out;
}

QAPair NegateQa(const QAPair& qa, const Lexicons& lex, uint64_t seed) {
  QAPair out = qa;
  out.source = Source::kNegation;
  if (qa.answer_type == AnswerType::kYesNo) {
    const Analysis a = Analyze(qa.question, lex);
    const size_t end = ContentEnd(a);
    std::vector<std::string> words;
    for (size_t i = 0; i < end; ++i) words.push_back(a.tokens[i].text);
    auto lower_at = [&](size_t i) { return i < end ? a.tokens[i].Lower() : ""; };
    std::optional<size_t> insert_at;
    if (lower_at(1) == "there") {
      const std::string det = lower_at(2);
      if (det == "a" || det == "an" || det == "any" || det == "some") {
        words[2] = "no";
      } else if (det == "no") {
        words[2] = "a";
      } else {
        insert_at = 2;
      }
    } else {
      static const lexdata::WordSet kDemonstratives = {
          "this", "that", "these", "those", "it", "he", "she", "they"};
      if (kDemonstratives.count(lower_at(1))) {
        insert_at = 2;
      } else if (const NounPhrase* np = a.NpStartingAt(1)) {
        insert_at = np->end;
      } else {
        insert_at = std::min<size_t>(1, end);
      }
    }
    if (insert_at) {
      const size_t at = *insert_at;
      if (at < words.size() && (ToLower(words[at]) == "not" || words[at] == "n't")) {
        words.erase(words.begin() + at);
      } else {
        words.insert(words.begin() + std::min(at, words.size()), "not");
      }
    }
    out.question = FinishQuestion(words);
    out.answer = qa.answer == "yes" ? "no" : "yes";
    return out;
  }
  if (qa.answer_type == AnswerType::kColor) {
    static constexpr std::string_view kPrefix = "what is the color of ";
    const std::string lower = ToLower(qa.question);
    if (lower.compare(0, kPrefix.size(), kPrefix) != 0) {
      throw Error(ErrorCode::kUnsupported,
                  "color question not in template form: " + qa.question);
    }
    std::vector<std::string> choices;
    for (const auto& c : lex.colors) {
      if (c != ToLower(qa.answer)) choices.push_back(c);
    }
    if (choices.empty()) {
      throw Error(ErrorCode::kUnsupported, "color lexicon has no alternative color");
    }
    SeededRng rng(seed);
    out.question = "What is not the color of " + qa.question.substr(kPrefix.size());
    out.answer = choices[rng.Uniform(choices.size())];
    return out;
  }
  throw Error(ErrorCode::kUnsupported,
              "negation is defined for yesno and color questions, not " +
                  std::string(AnswerTypeName(qa.answer_type)));
}

std::optional<QAPair> AdversarialQa(const QAPair& qa, const Lexicons& lex,
                                    const AdversarialIndex& index,
                                    const std::set<std::string>& image_objects) {
  const Analysis a = Analyze(qa.question, lex);
  for (const NounPhrase& np : a.nps) {
    const Token& head = np.Head();
    if (!head.IsNominal() || np.is_possessor) continue;
    std::set<std::string> exclude = image_objects;
    exclude.insert(head.lemma);
    auto substitute = index.Substitute(head.Lower(), exclude);
    if (!substitute) continue;
    std::string replacement =
        IsPluralNoun(head) ? Pluralize(substitute->first) : substitute->first;
    std::vector<std::string> words;
    const size_t head_index = np.begin + np.head;
    for (size_t i = 0; i < a.tokens.size(); ++i) {
      words.push_back(i == head_index ? replacement : a.tokens[i].text);
    }
    QAPair out = qa;
    out.question = FinishQuestion(words);
    out.source = Source::kAdversarial;
    out.weights.reset();
    switch (qa.answer_type) {
      case AnswerType::kYesNo: out.answer = "no"; break;
      case AnswerType::kNumber: out.answer = "none"; break;
      default: out.answer = "can't say"; break;
    }
    return out;
  }
  return std::nullopt;
}

std::optional<QAPair> AntonymQa(const QAPair& qa, const Lexicons& lex) {
  if (qa.answer_type != AnswerType::kYesNo) return std::nullopt;
  const Analysis a = Analyze(qa.question, lex);
  for (size_t i = 0; i < a.tokens.size(); ++i) {
    const Token& t = a.tokens[i];
    if (t.pos != Pos::kAdj) continue;
    auto it = lex.antonyms.find(t.Lower());
    if (it == lex.antonyms.end()) continue;
    std::vector<std::string> words;
    for (size_t k = 0; k < a.tokens.size(); ++k) {
      words.push_back(k == i ? it->second : a.tokens[k].text);
    }
    QAPair out = qa;
    out.question = FinishQuestion(words);
    out.answer = qa.answer == "yes" ? "no" : "yes";
    out.source = Source::kAdversarial;
    return out;
  }
  return std::nullopt;
}

std::vector<QAPair> GenerateTemplates(const ImageContext& image,
                                      const Lexicons& lex, const GenConfig& cfg) {
  std::vector<QAPair> all;
  const CaptionRecord& record = *image.record;
  for (size_t c = 0; c < record.captions.size(); ++c) {
    const int ci = static_cast<int>(c);
    if (NormalizeSpaces(record.captions[c]).empty()) continue;
    const Analysis a = Analyze(record.captions[c], lex);

    std::vector<QAPair> yesno;
    if (cfg.yesno) {
      try {
        yesno = GenYesNo(image, ci, a, lex, cfg);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoObjects) throw;
      }
    }
    std::vector<QAPair> others;
    auto add_adversarial = [&](const std::vector<QAPair>& pairs,
                               std::string_view generator) {
      if (!cfg.adversarial_open || !image.adversarial) return;
      int ordinal = 0;
      for (const QAPair& qa : pairs) {
        auto adv = AdversarialQa(qa, lex, *image.adversarial, image.object_lemmas);
        if (!adv) continue;
        adv->qa_id = MakeQaId(record.image_id, ci, generator, ordinal++);
        others.push_back(std::move(*adv));
      }
    };
    if (cfg.object) {
      auto pairs = GenObject(image, ci, a, lex, cfg);
      others.insert(others.end(), pairs.begin(), pairs.end());
      add_adversarial(pairs, "object-adv");
    }
    if (cfg.number) {
      auto pairs = GenNumber(image, ci, a, lex, cfg);
      others.insert(others.end(), pairs.begin(), pairs.end());
      add_adversarial(pairs, "number-adv");
    }
    if (cfg.color) {
      auto pairs = GenColor(image, ci, a, lex, cfg);
      others.insert(others.end(), pairs.begin(), pairs.end());
      if (cfg.negate_color) {
        int ordinal = 0;
        for (const QAPair& qa : pairs) {
          QAPair neg = NegateQa(
              qa, lex, StreamSeed(cfg.seed, record.image_id, ci, "color-neg") + ordinal);
          neg.qa_id = MakeQaId(record.image_id, ci, "color-neg", ordinal++);
          others.push_back(std::move(neg));
        }
      }
    }
    if (cfg.location) {
      auto pairs = GenLocation(image, ci, a, lex, cfg);
      others.insert(others.end(), pairs.begin(), pairs.end());
    }

    if (cfg.max_questions_per_caption > 0) {
      size_t budget = cfg.max_questions_per_caption;
      if (yesno.size() > budget) yesno.clear();
      budget -= yesno.size();
      if (others.size() > budget) others.resize(budget);
    }
    all.insert(all.end(), yesno.begin(), yesno.end());
    all.insert(all.end(), others.begin(), others.end());
  }
  return all;
}

}  // namespace capqa
