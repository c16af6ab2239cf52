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

// Embedded closed-class word lists for the rule-based tagger. Not part of the
// public API; the user-overridable lexicons live in capqa/lingo.h.

#ifndef CAPQA_SRC_LEXICON_DATA_H_
#define CAPQA_SRC_LEXICON_DATA_H_

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace capqa::lexdata {

using WordSet = std::unordered_set<std::string>;

const WordSet& Determiners();
const WordSet& PossessiveDeterminers();
const WordSet& Pronouns();
const WordSet& Prepositions();
const WordSet& Particles();
const WordSet& Auxiliaries();
const WordSet& Modals();
const WordSet& Conjunctions();
const WordSet& Adverbs();
const WordSet& Adjectives();
const WordSet& Verbs();
const WordSet& IrregularParticiples();
const WordSet& IngNouns();
const WordSet& EdNouns();
const WordSet& LyNouns();
const WordSet& RelationalNouns();
const WordSet& NonPluralS();

// plural -> singular.
const std::unordered_map<std::string, std::string>& IrregularPlurals();
// base -> third person singular, for verbs that do not follow the -s rule.
const std::unordered_map<std::string, std::string>& IrregularVerbForms();

// Defaults for the overridable lexicons.
std::vector<std::string> DefaultColors();
std::vector<std::string> DefaultLocations();
std::vector<std::pair<std::string, std::string>> DefaultAntonyms();
std::vector<std::string> DefaultPersons();
std::vector<std::string> DefaultAnimals();

}  // namespace capqa::lexdata

#endif  // CAPQA_SRC_LEXICON_DATA_H_
