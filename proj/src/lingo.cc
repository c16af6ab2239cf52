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

#include "capqa/lingo.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "capqa/error.h"
#include "json.hpp"
#include "lexicon_data.h"

namespace capqa {

namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}
bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

// Raw byte spans of the tokens, before tagging.
std::vector<std::pair<size_t, size_t>> SplitTokens(std::string_view text) {
  std::vector<std::pair<size_t, size_t>> spans;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    if (IsSpace(text[i])) {
      ++i;
      continue;
    }
    if (!IsAlnum(text[i])) {
      // Leading clitic: "'s" after a space-free word is handled below; a bare
      // apostrophe followed by letters ("'re") stays attached.
      spans.emplace_back(i, i + 1);
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n) {
      char c = text[j];
      if (IsAlnum(c)) {
        ++j;
        continue;
      }
      bool next_alnum = j + 1 < n && IsAlnum(text[j + 1]);
      if ((c == '-' || c == '\'') && next_alnum) {
        ++j;
        continue;
      }
      if ((c == '.' || c == ',') && next_alnum && IsDigit(text[j - 1]) &&
          IsDigit(text[j + 1])) {
        ++j;
        continue;
      }
      break;
    }
    // Split off clitics so "woman's" -> "woman" "'s", "isn't" -> "is" "n't".
    std::string_view word = text.substr(i, j - i);
    std::string lower = ToLower(word);
    size_t split = j;
    if (lower.size() > 2 && EndsWith(lower, "'s")) {
      split = j - 2;
    } else if (lower.size() > 3 && EndsWith(lower, "n't")) {
      split = j - 3;
    } else if (lower.size() > 3 &&
               (EndsWith(lower, "'re") || EndsWith(lower, "'ll") ||
                EndsWith(lower, "'ve"))) {
      split = j - 3;
    }
    if (split != j) {
      spans.emplace_back(i, split);
      spans.emplace_back(split, j);
    } else {
      spans.emplace_back(i, j);
    }
    i = j;
  }
  return spans;
}

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  bool any = false;
  for (char c : s) {
    if (IsDigit(c)) {
      any = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return any;
}

bool IsPunctText(std::string_view s) {
  return std::none_of(s.begin(), s.end(), IsAlnum);
}

// Tag assigned from the word alone.
Pos LexicalTag(const std::string& lower, bool capitalized, size_t index,
               const Lexicons& lex) {
  using namespace lexdata;
  if (IsPunctText(lower)) return Pos::kOther;
  if (AllDigits(lower) || lex.number_words.count(lower)) return Pos::kNum;
  if (lower == "'s" || lower == "'re" || lower == "'m") return Pos::kAux;
  if (lower == "n't" || lower == "not") return Pos::kAdv;
  if (Determiners().count(lower)) return Pos::kDet;
  if (Pronouns().count(lower)) return Pos::kPron;
  if (Auxiliaries().count(lower) || lex.stop_aux.count(lower)) return Pos::kAux;
  if (Prepositions().count(lower)) return Pos::kAdp;
  if (Conjunctions().count(lower)) return Pos::kOther;
  if (lex.colors.count(lower) || Adjectives().count(lower)) return Pos::kAdj;
  if (Adverbs().count(lower)) return Pos::kAdv;
  if (Verbs().count(lower) || IrregularParticiples().count(lower)) {
    return Pos::kVerb;
  }
  if (lower.size() > 4 && EndsWith(lower, "ing") && !IngNouns().count(lower)) {
    return Pos::kVerb;
  }
  if (lower.size() > 4 && EndsWith(lower, "ed") && !EdNouns().count(lower)) {
    return Pos::kVerb;
  }
  if (lower.size() > 4 && EndsWith(lower, "ly") && !LyNouns().count(lower)) {
    return Pos::kAdv;
  }
  for (std::string_view suffix :
       {"ous", "ful", "ive", "less", "able", "ible", "ical"}) {
    if (lower.size() > suffix.size() + 2 && EndsWith(lower, suffix)) {
      return Pos::kAdj;
    }
  }
  if (capitalized && index > 0) return Pos::kPropn;
  return Pos::kNoun;
}

bool IsNominalPos(Pos p) { return p == Pos::kNoun || p == Pos::kPropn; }

void ApplyContext(std::vector<Token>& tokens) {
  using namespace lexdata;
  const size_t n = tokens.size();
  for (size_t i = 0; i < n; ++i) {
    Token& t = tokens[i];
    const std::string lower = t.Lower();
    const Pos prev = i > 0 ? tokens[i - 1].pos : Pos::kOther;
    const bool after_modifier =
        prev == Pos::kDet || prev == Pos::kNum || prev == Pos::kAdj;

    if (t.pos == Pos::kVerb && after_modifier) {
      // "a parked car", "the sitting area", "a ride".
      if (IsProgressiveForm(t) || IsParticipleForm(t)) {
        t.pos = (IngNouns().count(lower) || EdNouns().count(lower))
                    ? Pos::kNoun
                    : Pos::kAdj;
      } else {
        t.pos = Pos::kNoun;
      }
    }
    if (t.pos == Pos::kNoun && i > 0 && Modals().count(tokens[i - 1].Lower())) {
      t.pos = Pos::kVerb;
    }
    if (lower == "'s" && i > 0) {
      // Possessive when it sits between a nominal and what it owns.
      const bool owner = IsNominalPos(prev);
      const bool owned = i + 1 < n && (IsNominalPos(tokens[i + 1].pos) ||
                                       tokens[i + 1].pos == Pos::kAdj ||
                                       tokens[i + 1].pos == Pos::kNum);
      if (owner && owned) t.pos = Pos::kOther;
    }
  }
  // Nominal use of adjectives: "an orange on a plate", "the left of".
  for (size_t i = 1; i < n; ++i) {
    Token& t = tokens[i];
    if (t.pos != Pos::kAdj) continue;
    const Pos prev = tokens[i - 1].pos;
    if (prev != Pos::kDet && prev != Pos::kNum) continue;
    const bool at_end = i + 1 == n;
    const Pos next = at_end ? Pos::kOther : tokens[i + 1].pos;
    const bool next_is_punct = !at_end && tokens[i + 1].IsPunct() &&
                               tokens[i + 1].text != ",";
    if (at_end || next_is_punct || next == Pos::kAdp || next == Pos::kAux ||
        next == Pos::kVerb) {
      t.pos = Pos::kNoun;
    }
  }
}

std::vector<NounPhrase> Chunk(const std::vector<Token>& tokens,
                              const Lexicons& lex) {
  std::vector<NounPhrase> nps;
  const size_t n = tokens.size();
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    std::optional<size_t> det;
    std::optional<size_t> num;
    if (tokens[j].pos == Pos::kDet) det = j++;
    if (j < n && tokens[j].pos == Pos::kNum) num = j++;
    size_t adj_begin = j;
    while (j < n) {
      if (tokens[j].pos == Pos::kAdj) {
        ++j;
      } else if (tokens[j].pos == Pos::kAdv && j + 1 < n &&
                 tokens[j + 1].pos == Pos::kAdj && tokens[j].Lower() != "not" &&
                 tokens[j].Lower() != "n't") {
        ++j;
      } else {
        break;
      }
    }
    size_t k = j;
    while (k < n && tokens[k].IsNominal()) ++k;
    if (k == j) {
      ++i;
      continue;
    }
    NounPhrase np;
    np.begin = i;
    np.end = k;
    np.tokens.assign(tokens.begin() + i, tokens.begin() + k);
    np.head = k - 1 - i;
    if (det) np.determiner = *det - i;
    if (num) np.quantifier = *num - i;
    for (size_t a = adj_begin; a < j; ++a) {
      if (tokens[a].pos == Pos::kAdj && lex.colors.count(tokens[a].lemma)) {
        np.color = a - i;
        break;
      }
    }
    np.is_possessor = k < n && tokens[k].Lower() == "'s" &&
                      tokens[k].pos == Pos::kOther;
    np.is_possessed = i > 0 && tokens[i - 1].Lower() == "'s" &&
                      tokens[i - 1].pos == Pos::kOther;
    nps.push_back(std::move(np));
    i = k;
  }
  return nps;
}

}  // namespace

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kPropn: return "PROPN";
    case Pos::kVerb: return "VERB";
    case Pos::kAux: return "AUX";
    case Pos::kAdj: return "ADJ";
    case Pos::kAdv: return "ADV";
    case Pos::kDet: return "DET";
    case Pos::kNum: return "NUM";
    case Pos::kAdp: return "ADP";
    case Pos::kPron: return "PRON";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

bool Token::IsPunct() const { return IsPunctText(text); }

std::string Token::Lower() const { return ToLower(text); }

std::string NounPhrase::Text() const { return JoinTokens(tokens); }

bool NounPhrase::HasPossessiveDeterminer() const {
  return determiner &&
         lexdata::PossessiveDeterminers().count(tokens[*determiner].Lower());
}

const NounPhrase* Analysis::NpStartingAt(size_t begin) const {
  for (const auto& np : nps) {
    if (np.begin == begin) return &np;
    if (np.begin > begin) break;
  }
  return nullptr;
}

Lexicons Lexicons::Builtin() {
  Lexicons lex;
  for (auto& w : lexdata::DefaultColors()) lex.colors.insert(w);
  for (auto& w : lexdata::DefaultLocations()) lex.locations.insert(w);
  for (auto& [a, b] : lexdata::DefaultAntonyms()) lex.antonyms[a] = b;
  static const char* const kNumbers[] = {
      "zero",  "one",    "two",     "three",    "four",    "five",   "six",
      "seven", "eight",  "nine",    "ten",      "eleven",  "twelve", "thirteen",
      "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen",
      "twenty"};
  for (int v = 0; v <= 20; ++v) lex.number_words[kNumbers[v]] = v;
  lex.stop_aux = {"is",    "are",   "was",   "were",  "am",     "be",
                  "can",   "could", "will",  "would", "shall",  "should",
                  "may",   "might", "must"};
  for (auto& w : lexdata::DefaultPersons()) lex.persons.insert(w);
  for (auto& w : lexdata::DefaultAnimals()) lex.animals.insert(w);
  return lex;
}

Lexicons Lexicons::FromOverrideJson(const std::string& json_text) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("lexicon override is not JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedInput, "lexicon override must be an object");
  }
  Lexicons lex = Builtin();
  auto read_set = [&](const char* key, std::set<std::string>& out) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_array()) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string("lexicon key `") + key + "` must be an array");
    }
    out.clear();
    for (const auto& v : *it) {
      if (!v.is_string()) {
        throw Error(ErrorCode::kMalformedInput,
                    std::string("lexicon key `") + key + "` holds a non-string");
      }
      out.insert(v.get<std::string>());
    }
  };
  try {
    read_set("colors", lex.colors);
    read_set("locations", lex.locations);
    if (auto it = doc.find("antonyms"); it != doc.end()) {
      lex.antonyms.clear();
      for (auto& [k, v] : it->items()) {
        lex.antonyms[k] = v.get<std::string>();
      }
    }
    if (auto it = doc.find("number_words"); it != doc.end()) {
      lex.number_words.clear();
      for (auto& [k, v] : it->items()) lex.number_words[k] = v.get<int>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("bad lexicon override: ") + e.what());
  }
  lex.Validate();
  return lex;
}

Lexicons Lexicons::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open lexicon file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromOverrideJson(buffer.str());
}

void Lexicons::Validate() const {
  auto require_lower = [](const std::string& word) {
    if (word.empty() || word != ToLower(word)) {
      throw Error(ErrorCode::kMalformedInput,
                  "lexicon entry empty or not lowercase: `" + word + "`");
    }
  };
  for (const auto& w : colors) require_lower(w);
  for (const auto& w : locations) require_lower(w);
  for (const auto& [from, to] : antonyms) {
    require_lower(from);
    require_lower(to);
  }
  std::set<int> values;
  for (const auto& [word, value] : number_words) {
    if (!values.insert(value).second) {
      throw Error(ErrorCode::kMalformedInput,
                  "number_words maps two words to " + std::to_string(value));
    }
    require_lower(word);
  }
}

std::optional<int> Lexicons::NumberValue(std::string_view word) const {
  std::string lower = ToLower(word);
  if (!lower.empty() &&
      std::all_of(lower.begin(), lower.end(), [](char c) { return IsDigit(c); })) {
    if (lower.size() > 9) return std::nullopt;
    return std::stoi(lower);
  }
  auto it = number_words.find(lower);
  if (it == number_words.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Lexicons::NumberWord(int value) const {
  for (const auto& [word, v] : number_words) {
    if (v == value) return word;
  }
  return std::nullopt;
}

Analysis Analyze(std::string_view caption, const Lexicons& lex) {
  if (std::all_of(caption.begin(), caption.end(), IsSpace)) {
    throw Error(ErrorCode::kMalformedInput, "cannot analyze an empty caption");
  }
  Analysis out;
  out.text = std::string(caption);
  for (auto [start, end] : SplitTokens(caption)) {
    Token t;
    t.text = std::string(caption.substr(start, end - start));
    t.start = start;
    t.end = end;
    out.tokens.push_back(std::move(t));
  }
  for (size_t i = 0; i < out.tokens.size(); ++i) {
    Token& t = out.tokens[i];
    const bool capitalized = std::isupper(static_cast<unsigned char>(t.text[0]));
    t.pos = LexicalTag(t.Lower(), capitalized, i, lex);
  }
  ApplyContext(out.tokens);
  for (Token& t : out.tokens) {
    t.lemma = t.IsNominal() ? Singularize(t.text) : t.Lower();
  }
  out.nps = Chunk(out.tokens, lex);
  return out;
}

std::string StripAux(std::span<const Token> tokens, const Lexicons& lex) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  bool removed = false;
  for (const Token& t : tokens) {
    if (!removed && lex.stop_aux.count(t.Lower())) {
      removed = true;
      continue;
    }
    kept.push_back(t);
  }
  return JoinTokens(kept);
}

NounPhrase Definitize(const NounPhrase& np) {
  NounPhrase out = np;
  if (!out.determiner) return out;
  Token& det = out.tokens[*out.determiner];
  const std::string lower = det.Lower();
  if (lower != "a" && lower != "an") return out;
  const bool upper = std::isupper(static_cast<unsigned char>(det.text[0]));
  det.text = upper ? "The" : "the";
  det.lemma = "the";
  return out;
}

std::vector<LocationMatch> FindLocations(const Analysis& analysis,
                                         const Lexicons& lex) {
  std::vector<LocationMatch> out;
  for (size_t i = 0; i + 1 < analysis.tokens.size(); ++i) {
    const Token& t = analysis.tokens[i];
    if (t.pos != Pos::kAdp) continue;
    const std::string lower = t.Lower();
    if (lower != "in" && lower != "within") continue;
    for (size_t k = 0; k < analysis.nps.size(); ++k) {
      const NounPhrase& np = analysis.nps[k];
      if (np.begin != i + 1) continue;
      if (!np.is_possessor && lex.locations.count(np.Head().lemma)) {
        out.push_back({i, k, np.Text()});
      }
      break;
    }
  }
  return out;
}

std::vector<std::string> ExtractLocations(const Analysis& analysis,
                                          const Lexicons& lex) {
  std::vector<std::string> out;
  for (auto& m : FindLocations(analysis, lex)) out.push_back(m.phrase);
  return out;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string NormalizeSpaces(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string Singularize(std::string_view word) {
  std::string w = ToLower(word);
  const auto& irregular = lexdata::IrregularPlurals();
  if (auto it = irregular.find(w); it != irregular.end()) return it->second;
  if (lexdata::NonPluralS().count(w) || w.size() <= 3) return w;
  if (EndsWith(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "sses") || EndsWith(w, "shes") || EndsWith(w, "ches") ||
      EndsWith(w, "xes") || EndsWith(w, "zzes")) {
    return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "ss") || EndsWith(w, "us") || EndsWith(w, "is") ||
      EndsWith(w, "'s")) {
    return w;
  }
  if (EndsWith(w, "s")) return w.substr(0, w.size() - 1);
  return w;
}

std::string Pluralize(std::string_view lemma) {
  static const auto* inverse = [] {
    auto* m = new std::unordered_map<std::string, std::string>;
    for (const auto& [plural, single] : lexdata::IrregularPlurals()) {
      // Keep the first-listed plural for lemmas with several.
      m->emplace(single, plural);
    }
    return m;
  }();
  std::string w = ToLower(lemma);
  if (auto it = inverse->find(w); it != inverse->end()) return it->second;
  if (EndsWith(w, "s") || EndsWith(w, "x") || EndsWith(w, "z") ||
      EndsWith(w, "ch") || EndsWith(w, "sh")) {
    return w + "es";
  }
  if (w.size() > 1 && EndsWith(w, "y") && !IsVowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ies";
  }
  return w + "s";
}

bool IsPluralNoun(const Token& token) {
  if (!token.IsNominal()) return false;
  const std::string lower = token.Lower();
  if (lower == "sheep" || lower == "fish" || lower == "deer") return false;
  return Singularize(lower) != lower;
}

bool IsPluralPhrase(const NounPhrase& np, const Lexicons& lex) {
  if (np.quantifier) {
    if (auto v = lex.NumberValue(np.tokens[*np.quantifier].text)) return *v != 1;
  }
  if (np.determiner) {
    static const lexdata::WordSet kPluralDets = {
        "these", "those", "several", "many", "few", "both", "multiple",
        "various", "numerous", "all"};
    const std::string det = np.tokens[*np.determiner].Lower();
    if (kPluralDets.count(det)) return true;
    if (det == "a" || det == "an" || det == "this" || det == "that" ||
        det == "each" || det == "every" || det == "another") {
      return false;
    }
  }
  return IsPluralNoun(np.Head());
}

std::string PresentParticiple(std::string_view verb_lemma) {
  std::string w = ToLower(verb_lemma);
  static const lexdata::WordSet kIngBases = {
      "sing", "bring", "ring", "swing", "sting", "cling", "fling", "wring",
      "spring", "string", "wing"};
  if (w.size() > 4 && EndsWith(w, "ing") && !kIngBases.count(w)) return w;
  if (EndsWith(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
  if (EndsWith(w, "ee") || EndsWith(w, "ye") || EndsWith(w, "oe")) return w + "ing";
  if (w.size() > 2 && EndsWith(w, "e")) return w.substr(0, w.size() - 1) + "ing";
  if (w.size() >= 3) {
    const char last = w[w.size() - 1];
    const char mid = w[w.size() - 2];
    const char first = w[w.size() - 3];
    int vowel_groups = 0;
    bool in_group = false;
    for (char c : w) {
      bool v = IsVowel(c);
      if (v && !in_group) ++vowel_groups;
      in_group = v;
    }
    if (!IsVowel(last) && last != 'w' && last != 'x' && last != 'y' &&
        IsVowel(mid) && !IsVowel(first) && vowel_groups == 1) {
      return w + last + "ing";
    }
  }
  return w + "ing";
}

std::string VerbBase(std::string_view finite_verb) {
  std::string w = ToLower(finite_verb);
  const auto& irregular = lexdata::IrregularVerbForms();
  if (auto it = irregular.find(w); it != irregular.end()) return it->second;
  if (w.size() > 4 && EndsWith(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "sses") || EndsWith(w, "shes") || EndsWith(w, "ches") ||
      EndsWith(w, "xes") || EndsWith(w, "zes") || EndsWith(w, "oes")) {
    return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "s") && !EndsWith(w, "ss")) return w.substr(0, w.size() - 1);
  return w;
}

bool IsParticipleForm(const Token& token) {
  const std::string lower = token.Lower();
  return (lower.size() > 3 && EndsWith(lower, "ed")) ||
         lexdata::IrregularParticiples().count(lower) > 0;
}

bool IsProgressiveForm(const Token& token) {
  const std::string lower = token.Lower();
  return lower.size() > 4 && EndsWith(lower, "ing");
}

std::string JoinTokens(std::span<const Token> tokens) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const Token& t : tokens) words.push_back(t.text);
  return JoinWords(words);
}

std::string JoinWords(const std::vector<std::string>& words) {
  std::string out;
  bool prev_open = false;
  for (const std::string& w : words) {
    if (w.empty()) continue;
    const bool attach = w == "," || w == "." || w == "?" || w == "!" ||
                        w == ";" || w == ":" || w == ")" || w == "n't" ||
                        StartsWith(w, "'");
    if (!out.empty() && !attach && !prev_open) out.push_back(' ');
    out += w;
    prev_open = w == "(";
  }
  return out;
}

std::string FixArticles(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) words.push_back(w);
  for (size_t i = 0; i + 1 < words.size(); ++i) {
    const std::string lower = ToLower(words[i]);
    if (lower != "a" && lower != "an") continue;
    const std::string next = ToLower(words[i + 1]);
    if (next.empty()) continue;
    bool vowel_sound = IsVowel(next[0]) || next[0] == '8';
    if (StartsWith(next, "uni") || StartsWith(next, "use") ||
        StartsWith(next, "usu") || StartsWith(next, "eu") ||
        StartsWith(next, "one") || StartsWith(next, "ute")) {
      vowel_sound = false;
    }
    if (StartsWith(next, "hour") || StartsWith(next, "honest") ||
        StartsWith(next, "heir")) {
      vowel_sound = true;
    }
    const bool upper = std::isupper(static_cast<unsigned char>(words[i][0]));
    words[i] = vowel_sound ? (upper ? "An" : "an") : (upper ? "A" : "a");
  }
  std::string out;
  for (const auto& word : words) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

}  // namespace capqa
