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

// Rule- and lexicon-based analysis of caption sentences.
//
// The tagger is a closed-lexicon tagger with suffix heuristics: embedded word
// lists decide determiners, auxiliaries, prepositions and a core of verbs and
// adjectives; -ing/-ed/-ly suffixes and a little left context decide the rest;
// unknown content words default to NOUN. Captions are short declaratives, so
// this gets the noun phrases right most of the time. It is an approximation,
// not a parser.

#ifndef CAPQA_LINGO_H_
#define CAPQA_LINGO_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace capqa {

enum class Pos {
  kNoun,
  kPropn,
  kVerb,
  kAux,
  kAdj,
  kAdv,
  kDet,
  kNum,
  kAdp,
  kPron,
  kOther,
};

std::string_view PosName(Pos pos);

struct Token {
  std::string text;
  std::string lemma;
  Pos pos = Pos::kOther;
  // Byte offsets into the analyzed text, half-open.
  size_t start = 0;
  size_t end = 0;

  bool IsNominal() const { return pos == Pos::kNoun || pos == Pos::kPropn; }
  bool IsPunct() const;
  std::string Lower() const;
};

// A maximal DET? NUM? ADJ* NOUN+ run.
struct NounPhrase {
  // Token range [begin, end) in the sentence it was chunked from.
  size_t begin = 0;
  size_t end = 0;
  std::vector<Token> tokens;
  // Indices into `tokens`.
  size_t head = 0;
  std::optional<size_t> determiner;
  std::optional<size_t> quantifier;
  std::optional<size_t> color;
  // Followed by a possessive 's ("the woman" in "the woman's shirt").
  bool is_possessor = false;
  // Preceded by a possessive 's ("shirt" in "the woman's shirt").
  bool is_possessed = false;

  const Token& Head() const { return tokens[head]; }
  std::string Text() const;
  bool HasPossessiveDeterminer() const;
};

// User-overridable lexicons. All entries lowercase.
struct Lexicons {
  std::set<std::string> colors;
  std::set<std::string> locations;
  std::map<std::string, std::string> antonyms;
  // Bijection word <-> value for 0..20.
  std::map<std::string, int> number_words;
  // Copulas and modals removed by StripAux.
  std::set<std::string> stop_aux;
  // Head lemmas of people and animals (animacy and answer filtering).
  std::set<std::string> persons;
  std::set<std::string> animals;

  static Lexicons Builtin();
  // Builtin lexicons with the keys present in a JSON override file
  // (`colors`, `locations`, `antonyms`, `number_words`) replaced.
  static Lexicons Load(const std::string& path);
  static Lexicons FromOverrideJson(const std::string& json_text);

  // Throws MalformedInput when number_words is not a bijection or an entry
  // is not lowercase.
  void Validate() const;

  // Digit strings and number words; nullopt for anything else.
  std::optional<int> NumberValue(std::string_view word) const;
  std::optional<std::string> NumberWord(int value) const;

  bool IsAnimate(const std::string& lemma) const {
    return persons.count(lemma) > 0 || animals.count(lemma) > 0;
  }
};

struct Analysis {
  std::string text;
  std::vector<Token> tokens;
  std::vector<NounPhrase> nps;

  // Noun phrase starting at token index `begin`, if any.
  const NounPhrase* NpStartingAt(size_t begin) const;
};

// Tokenizes, tags and chunks. `caption` must be non-empty (MalformedInput).
// Tokens cover every non-whitespace byte; spans are ordered and disjoint.
Analysis Analyze(std::string_view caption, const Lexicons& lex);

// Caption text with the first copula/modal removed, re-joined with single
// spaces.
std::string StripAux(std::span<const Token> tokens, const Lexicons& lex);

// "a"/"an" become "the"; everything else is returned unchanged.
NounPhrase Definitize(const NounPhrase& np);

// Noun phrases directly after "in"/"within" whose head is a known location.
struct LocationMatch {
  size_t adp_index = 0;  // token index of "in"/"within"
  size_t np_index = 0;   // index into Analysis::nps
  std::string phrase;
};
std::vector<LocationMatch> FindLocations(const Analysis& analysis,
                                         const Lexicons& lex);
std::vector<std::string> ExtractLocations(const Analysis& analysis,
                                          const Lexicons& lex);

// Word-level helpers shared by the generators.

// Lowercase singular form of a (possibly plural) noun.
std::string Singularize(std::string_view word);
std::string Pluralize(std::string_view lemma);
bool IsPluralNoun(const Token& token);
bool IsPluralPhrase(const NounPhrase& np, const Lexicons& lex);
// holding -> holding, hold -> holding, sit -> sitting, make -> making.
std::string PresentParticiple(std::string_view verb_lemma);
// Base form of a third-person singular verb: holds -> hold, watches -> watch.
std::string VerbBase(std::string_view finite_verb);
bool IsParticipleForm(const Token& token);
bool IsProgressiveForm(const Token& token);

// Joins tokens with single spaces, attaching punctuation and clitics to the
// preceding token.
std::string JoinTokens(std::span<const Token> tokens);
std::string JoinWords(const std::vector<std::string>& words);
// Rewrites standalone "a"/"an" to agree with the following word.
std::string FixArticles(std::string_view text);
std::string ToLower(std::string_view text);
// Collapses whitespace runs and trims.
std::string NormalizeSpaces(std::string_view text);

}  // namespace capqa

#endif  // CAPQA_LINGO_H_
