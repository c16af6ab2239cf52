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

// Paraphrase and back-translation augmentation. Rewrites come from an
// external rewriter (a subprocess speaking JSONL on stdin/stdout, or an HTTP
// endpoint) or from a small built-in rule table that works offline.

#ifndef CAPQA_AUGMENT_H_
#define CAPQA_AUGMENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capqa/lingo.h"
#include "capqa/qa_pair.h"

namespace capqa {

enum class RewriteMode { kParaphrase, kBacktranslate };
std::string_view RewriteModeName(RewriteMode mode);
RewriteMode ParseRewriteMode(std::string_view name);

struct RewriteRequest {
  std::string request_id;
  std::string text;
  RewriteMode mode = RewriteMode::kParaphrase;
  // "fr", "de" or "es"; required for backtranslate, absent otherwise.
  std::optional<std::string> pivot_language;

  // Throws MalformedInput.
  void Validate() const;
};

struct RewriteResponse {
  std::string request_id;
  std::vector<std::string> rewrites;
};

std::string RequestToJson(const RewriteRequest& request);
RewriteRequest RequestFromJson(std::string_view line);
std::string ResponseToJson(const RewriteResponse& response);
RewriteResponse ResponseFromJson(std::string_view line);

class Rewriter {
 public:
  virtual ~Rewriter() = default;
  // One response per request that received any; order not significant.
  // Throws RewriterUnavailable when the backend cannot be reached or times
  // out.
  virtual std::vector<RewriteResponse> Rewrite(std::span<const RewriteRequest> batch) = 0;
  virtual std::string Name() const = 0;
};

// Rule-table rewrites: "How many X are visible?" <-> "How many X can be
// seen?" / "How many X are we looking at?", "Is there" <-> "Can you see",
// "What is" <-> "What's" and negative contractions. At most `max_variants`,
// chosen deterministically from `seed` when more rules fire.
std::vector<std::string> BuiltinRewrite(std::string_view question, uint64_t seed,
                                        size_t max_variants);

class BuiltinRewriter : public Rewriter {
 public:
  BuiltinRewriter(uint64_t seed, size_t max_variants)
      : seed_(seed), max_variants_(max_variants) {}
  std::vector<RewriteResponse> Rewrite(std::span<const RewriteRequest> batch) override;
  std::string Name() const override { return "builtin"; }

 private:
  uint64_t seed_;
  size_t max_variants_;
};

// Runs `command` through /bin/sh once per batch, writes one request per line
// to its stdin and reads one response per line from its stdout.
class SubprocessRewriter : public Rewriter {
 public:
  SubprocessRewriter(std::string command, double timeout_seconds)
      : command_(std::move(command)), timeout_seconds_(timeout_seconds) {}
  std::vector<RewriteResponse> Rewrite(std::span<const RewriteRequest> batch) override;
  std::string Name() const override { return "subprocess:" + command_; }

 private:
  std::string command_;
  double timeout_seconds_;
};

// POSTs each request to `<endpoint>/rewrite`, up to `in_flight` at a time.
class HttpRewriter : public Rewriter {
 public:
  HttpRewriter(std::string endpoint, double timeout_seconds, size_t in_flight = 4)
      : endpoint_(std::move(endpoint)),
        timeout_seconds_(timeout_seconds),
        in_flight_(in_flight == 0 ? 1 : in_flight) {}
  std::vector<RewriteResponse> Rewrite(std::span<const RewriteRequest> batch) override;
  std::string Name() const override { return "http:" + endpoint_; }

 private:
  std::string endpoint_;
  double timeout_seconds_;
  size_t in_flight_;
};

struct AugmentConfig {
  uint64_t seed = 0;
  std::vector<RewriteMode> modes = {RewriteMode::kParaphrase};
  std::vector<std::string> pivots = {"fr", "de", "es"};
  size_t max_variants = 2;
  // Each accepted rewrite is kept with this probability (seeded).
  double keep_probability = 1.0;
  size_t batch_size = 64;
  double timeout_seconds = 30.0;
  // Substitute the built-in rules when the rewriter fails.
  bool fallback = true;

  void Validate() const;
};

struct AugmentStats {
  size_t requests = 0;
  size_t accepted = 0;
  size_t rejected = 0;  // failed the answer-consistency filter
  size_t fallback_batches = 0;
};

// True when the answer and its head lemma occur in `rewrite` exactly as they
// occur in `original`.
bool PreservesAnswer(std::string_view original, std::string_view rewrite,
                     std::string_view answer);

// Originals in input order, each followed by its accepted rewrites. A null
// rewriter means the built-in rules.
std::vector<QAPair> AugmentBatch(std::span<const QAPair> pairs, Rewriter* rewriter,
                                 const AugmentConfig& cfg,
                                 AugmentStats* stats = nullptr);

}  // namespace capqa

#endif  // CAPQA_AUGMENT_H_
