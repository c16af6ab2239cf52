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

#include "capqa/answers.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "capqa/error.h"

namespace capqa {

namespace {

bool IsWordChar(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

bool IsLeadingDeterminer(const std::string& w) {
  static const std::set<std::string> kDets = {
      "a", "an", "the", "this", "that", "these", "those", "some", "any",
      "his", "her", "their", "its", "my", "your", "our"};
  return kDets.count(w) > 0;
}

class Expander {
 public:
  Expander(std::vector<std::string> tokens, const Lexicons& lex)
      : tokens_(std::move(tokens)), lex_(lex), n_(static_cast<int64_t>(tokens_.size())) {
    const std::string joined = JoinWords(tokens_);
    head_ = tokens_.size() - 1;
    const Analysis a = Analyze(joined, lex);
    if (!a.nps.empty()) {
      const std::string head = a.nps.front().Head().Lower();
      for (size_t i = tokens_.size(); i-- > 0;) {
        if (tokens_[i] == head) {
          head_ = i;
          head_is_noun_ = true;
          break;
        }
      }
    }
    const std::string& h = tokens_[head_];
    if (h == "yes" || h == "no" || h == "none" || lex.colors.count(h) ||
        lex.NumberValue(h)) {
      head_is_noun_ = false;
    }
  }

  WeightedAnswerSet Run() {
    WeightedAnswerSet out;
    out.full_answer = JoinWords(tokens_);
    const size_t n = tokens_.size();
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    Add(all);
    if (n == 1) {
      Variants(all);
    } else if (n <= kMaxSubsequenceTokens) {
      const uint32_t full = (1u << n) - 1;
      for (uint32_t mask = 1; mask < full; ++mask) {
        std::vector<size_t> picked;
        for (size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) picked.push_back(i);
        }
        Consider(picked);
      }
    } else {
      for (size_t len = 1; len < n; ++len) {
        for (size_t b = 0; b + len <= n; ++b) {
          std::vector<size_t> picked(len);
          for (size_t k = 0; k < len; ++k) picked[k] = b + k;
          Consider(picked);
        }
      }
    }
    out.entries = std::move(entries_);
    return out;
  }

 private:
  void Consider(const std::vector<size_t>& picked) {
    const bool has_head =
        std::find(picked.begin(), picked.end(), head_) != picked.end();
    if (picked.size() != 1 && !has_head) return;
    Add(picked);
    Variants(picked);
  }

  void Variants(const std::vector<size_t>& picked) {
    std::vector<std::string> words;
    bool changed = false;
    for (size_t i : picked) {
      const std::string& w = tokens_[i];
      auto value = lex_.NumberValue(w);
      if (value) {
        const bool is_digit = std::all_of(w.begin(), w.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        });
        std::optional<std::string> alt =
            is_digit ? lex_.NumberWord(*value) : std::optional(std::to_string(*value));
        if (alt && *alt != w) {
          words.push_back(*alt);
          changed = true;
          continue;
        }
      }
      words.push_back(w);
    }
    if (changed) Add(JoinWords(words), static_cast<int64_t>(picked.size()));
    if (picked.size() == 1 && picked[0] == head_ && head_is_noun_) {
      const std::string& h = tokens_[head_];
      const std::string singular = Singularize(h);
      Add(singular != h ? singular : Pluralize(h), 1);
    }
  }

  void Add(const std::vector<size_t>& picked) {
    std::vector<std::string> words;
    for (size_t i : picked) words.push_back(tokens_[i]);
    Add(JoinWords(words), static_cast<int64_t>(picked.size()));
  }

  void Add(const std::string& phrase, int64_t count) {
    auto it = seen_.find(phrase);
    if (it != seen_.end()) {
      AnswerEntry& e = entries_[it->second];
      if (count > e.tokens) e.tokens = count;
      return;
    }
    seen_.emplace(phrase, entries_.size());
    entries_.push_back({phrase, count, n_});
  }

  std::vector<std::string> tokens_;
  const Lexicons& lex_;
  int64_t n_;
  size_t head_ = 0;
  bool head_is_noun_ = false;
  std::vector<AnswerEntry> entries_;
  std::map<std::string, size_t> seen_;
};

}  // namespace

std::vector<std::string> NormalizeAnswerTokens(std::string_view answer) {
  std::string cleaned;
  for (size_t i = 0; i < answer.size(); ++i) {
    const char c = answer[i];
    if (IsWordChar(c)) {
      cleaned.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if ((c == '\'' || c == '-') && i > 0 && i + 1 < answer.size() &&
               IsWordChar(answer[i - 1]) && IsWordChar(answer[i + 1])) {
      cleaned.push_back(c);
    } else {
      cleaned.push_back(' ');
    }
  }
  std::vector<std::string> tokens;
  std::istringstream in(cleaned);
  std::string w;
  while (in >> w) tokens.push_back(w);
  size_t skip = 0;
  while (skip < tokens.size() && IsLeadingDeterminer(tokens[skip])) ++skip;
  tokens.erase(tokens.begin(), tokens.begin() + skip);
  return tokens;
}

std::string NormalizeAnswer(std::string_view answer) {
  return JoinWords(NormalizeAnswerTokens(answer));
}

WeightedAnswerSet ExpandAnswer(std::string_view answer, const Lexicons& lex) {
  std::vector<std::string> tokens = NormalizeAnswerTokens(answer);
  if (tokens.empty()) {
    throw Error(ErrorCode::kMalformedInput,
                "answer `" + std::string(answer) + "` has no content tokens");
  }
  return Expander(std::move(tokens), lex).Run();
}

std::vector<WeightedPhrase> AnswerWeights(std::string_view answer, const Lexicons& lex) {
  std::vector<WeightedPhrase> out;
  for (const AnswerEntry& e : ExpandAnswer(answer, lex).entries) {
    out.push_back({e.phrase, e.weight()});
  }
  return out;
}

AnswerVocab::AnswerVocab(std::vector<std::string> phrases) : phrases_(std::move(phrases)) {
  for (size_t i = 0; i < phrases_.size(); ++i) {
    if (!index_.emplace(phrases_[i], i).second) {
      throw Error(ErrorCode::kMalformedInput, "duplicate vocab phrase `" + phrases_[i] + "`");
    }
  }
}

int64_t AnswerVocab::IndexOf(std::string_view phrase) const {
  auto it = index_.find(std::string(phrase));
  return it == index_.end() ? -1 : static_cast<int64_t>(it->second);
}

std::map<std::string, size_t> CountAnswerPhrases(std::span<const QAPair> pairs,
                                                 const Lexicons& lex) {
  std::map<std::string, size_t> counts;
  for (const QAPair& qa : pairs) {
    std::set<std::string> phrases;
    if (qa.weights) {
      for (const auto& w : *qa.weights) phrases.insert(w.phrase);
    } else {
      for (const auto& e : ExpandAnswer(qa.answer, lex).entries) phrases.insert(e.phrase);
    }
    for (const auto& p : phrases) ++counts[p];
  }
  return counts;
}

AnswerVocab VocabFromCounts(const std::map<std::string, size_t>& counts,
                            size_t min_count) {
  std::vector<std::pair<std::string, size_t>> kept;
  for (const auto& [phrase, count] : counts) {
    if (count >= min_count) kept.emplace_back(phrase, count);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyVocab,
                "no answer phrase reaches min_count " + std::to_string(min_count));
  }
  // counts is ordered by phrase, so a stable sort keeps ties lexicographic.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  std::vector<std::string> phrases;
  phrases.reserve(kept.size());
  for (auto& [phrase, count] : kept) phrases.push_back(std::move(phrase));
  return AnswerVocab(std::move(phrases));
}

AnswerVocab BuildVocab(std::span<const QAPair> pairs, size_t min_count,
                       const Lexicons& lex) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyVocab, "no QA pairs");
  return VocabFromCounts(CountAnswerPhrases(pairs, lex), min_count);
}

void SaveVocab(const AnswerVocab& vocab, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << "#capqa-vocab v1 count=" << vocab.size() << "\n";
  for (const auto& p : vocab.phrases()) out << p << "\n";
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

AnswerVocab LoadVocab(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open vocab " + path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("#capqa-vocab v1 count=", 0) != 0) {
    throw Error(ErrorCode::kMalformedInput, path + ": missing vocab header");
  }
  size_t expected = 0;
  try {
    expected = std::stoul(header.substr(header.find('=') + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMalformedInput, path + ": bad vocab header");
  }
  std::vector<std::string> phrases;
  std::string line;
  while (std::getline(in, line)) phrases.push_back(line);
  if (phrases.size() != expected) {
    throw Error(ErrorCode::kMalformedInput,
                path + ": header says " + std::to_string(expected) + " phrases, found " +
                    std::to_string(phrases.size()));
  }
  return AnswerVocab(std::move(phrases));
}

SwaTargetVector SwaTarget(const QAPair& qa, const AnswerVocab& vocab) {
  if (!qa.weights) {
    throw Error(ErrorCode::kMalformedInput, "pair " + qa.qa_id + " has no weights");
  }
  const std::string full = NormalizeAnswer(qa.answer);
  const int64_t full_index = vocab.IndexOf(full);
  if (full_index < 0) {
    throw Error(ErrorCode::kAnswerNotInVocab, "answer `" + full + "` not in vocabulary");
  }
  SwaTargetVector out;
  for (const auto& w : *qa.weights) {
    const int64_t i = vocab.IndexOf(w.phrase);
    if (i < 0) {
      ++out.dropped;
      continue;
    }
    double& slot = out.values[static_cast<size_t>(i)];
    slot = std::max(slot, w.weight);
  }
  out.values[static_cast<size_t>(full_index)] = 1.0;
  return out;
}

}  // namespace capqa
