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

#include "capqa/augment.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "capqa/answers.h"
#include "capqa/error.h"
#include "capqa/hashing.h"
#include "httplib.h"
#include "json.hpp"

namespace capqa {

namespace {

using json = nlohmann::ordered_json;

std::string RewriteKey(std::string_view text) {
  std::string s = ToLower(NormalizeSpaces(text));
  while (!s.empty() && (s.back() == '?' || s.back() == '.' || s.back() == ' ')) {
    s.pop_back();
  }
  return s;
}

std::vector<std::string> LowerWords(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80 || c == '\'' || c == '-') {
      cleaned.push_back(static_cast<char>(std::tolower(u)));
    } else {
      cleaned.push_back(' ');
    }
  }
  std::vector<std::string> out;
  std::istringstream in(cleaned);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool ContainsRun(const std::vector<std::string>& words,
                 const std::vector<std::string>& run) {
  if (run.empty() || run.size() > words.size()) return false;
  return std::search(words.begin(), words.end(), run.begin(), run.end()) != words.end();
}

bool ContainsLemma(const std::vector<std::string>& words, const std::string& lemma) {
  return std::any_of(words.begin(), words.end(),
                     [&](const std::string& w) { return Singularize(w) == lemma; });
}

Error Unavailable(const std::string& what) {
  return Error(ErrorCode::kRewriterUnavailable, what);
}

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

std::string_view RewriteModeName(RewriteMode mode) {
  return mode == RewriteMode::kParaphrase ? "paraphrase" : "backtranslate";
}

RewriteMode ParseRewriteMode(std::string_view name) {
  if (name == "paraphrase") return RewriteMode::kParaphrase;
  if (name == "backtranslate") return RewriteMode::kBacktranslate;
  throw Error(ErrorCode::kMalformedInput, "unknown rewrite mode `" + std::string(name) + "`");
}

void RewriteRequest::Validate() const {
  if (NormalizeSpaces(text).empty()) {
    throw Error(ErrorCode::kMalformedInput, "rewrite request with empty text");
  }
  if (mode == RewriteMode::kBacktranslate) {
    if (!pivot_language || (*pivot_language != "fr" && *pivot_language != "de" &&
                            *pivot_language != "es")) {
      throw Error(ErrorCode::kMalformedInput,
                  "backtranslate needs pivot_language fr, de or es");
    }
  } else if (pivot_language) {
    throw Error(ErrorCode::kMalformedInput, "paraphrase request carries a pivot_language");
  }
}

std::string RequestToJson(const RewriteRequest& r) {
  json j;
  j["request_id"] = r.request_id;
  j["text"] = r.text;
  j["mode"] = RewriteModeName(r.mode);
  if (r.pivot_language) j["pivot_language"] = *r.pivot_language;
  return j.dump();
}

RewriteRequest RequestFromJson(std::string_view line) {
  RewriteRequest r;
  try {
    const json j = json::parse(line);
    r.request_id = j.at("request_id").get<std::string>();
    r.text = j.at("text").get<std::string>();
    r.mode = ParseRewriteMode(j.at("mode").get<std::string>());
    if (j.contains("pivot_language") && !j["pivot_language"].is_null()) {
      r.pivot_language = j["pivot_language"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("bad rewrite request: ") + e.what());
  }
  r.Validate();
  return r;
}

std::string ResponseToJson(const RewriteResponse& r) {
  json j;
  j["request_id"] = r.request_id;
  j["rewrites"] = r.rewrites;
  return j.dump();
}

RewriteResponse ResponseFromJson(std::string_view line) {
  RewriteResponse r;
  try {
    const json j = json::parse(line);
    r.request_id = j.at("request_id").get<std::string>();
    r.rewrites = j.at("rewrites").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("bad rewrite response: ") + e.what());
  }
  return r;
}

std::vector<std::string> BuiltinRewrite(std::string_view question, uint64_t seed,
                                        size_t max_variants) {
  struct Rule {
    std::regex pattern;
    std::vector<std::string> replacements;
  };
  static const std::vector<Rule>* const kRules = [] {
    const auto flags = std::regex::ECMAScript | std::regex::icase;
    return new std::vector<Rule>{
        {std::regex(R"(^How many (.+) are visible\?$)", flags),
         {"How many $1 can be seen?", "How many $1 are we looking at?"}},
        {std::regex(R"(^How many (.+) can be seen\?$)", flags),
         {"How many $1 are visible?", "How many $1 are we looking at?"}},
        {std::regex(R"(^How many (.+) are we looking at\?$)", flags),
         {"How many $1 are visible?", "How many $1 can be seen?"}},
        {std::regex(R"(^(?:Is|Are) there (?!no |not )(.+)\?$)", flags), {"Can you see $1?"}},
        {std::regex(R"(^Can you see (.+)\?$)", flags), {"Is there $1?"}},
        {std::regex(R"(^What is (.+)$)", flags), {"What's $1"}},
        {std::regex(R"(^What's (.+)$)", flags), {"What is $1"}},
    };
  }();
  static const std::vector<std::pair<std::regex, std::string>>* const kContractions = [] {
    const auto flags = std::regex::ECMAScript | std::regex::icase;
    return new std::vector<std::pair<std::regex, std::string>>{
        {std::regex(R"(\bis not\b)", flags), "isn't"},
        {std::regex(R"(\bare not\b)", flags), "aren't"},
        {std::regex(R"(\bdoes not\b)", flags), "doesn't"},
        {std::regex(R"(\bdo not\b)", flags), "don't"},
        {std::regex(R"(\bisn't\b)", flags), "is not"},
        {std::regex(R"(\baren't\b)", flags), "are not"},
        {std::regex(R"(\bdoesn't\b)", flags), "does not"},
        {std::regex(R"(\bdon't\b)", flags), "do not"},
    };
  }();

  const std::string q = NormalizeSpaces(question);
  std::vector<std::string> candidates;
  std::set<std::string> seen = {RewriteKey(q)};
  auto add = [&](std::string text) {
    if (!text.empty()) {
      text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    }
    if (seen.insert(RewriteKey(text)).second) candidates.push_back(std::move(text));
  };
  for (const Rule& rule : *kRules) {
    if (!std::regex_match(q, rule.pattern)) continue;
    for (const std::string& r : rule.replacements) add(std::regex_replace(q, rule.pattern, r));
  }
  for (const auto& [pattern, replacement] : *kContractions) {
    if (std::regex_search(q, pattern)) {
      add(std::regex_replace(q, pattern, replacement,
                             std::regex_constants::format_first_only));
    }
  }
  if (candidates.size() <= max_variants) return candidates;
  SeededRng rng(seed);
  std::vector<size_t> picks = rng.SampleWithoutReplacement(candidates.size(), max_variants);
  std::sort(picks.begin(), picks.end());
  std::vector<std::string> out;
  for (size_t i : picks) out.push_back(candidates[i]);
  return out;
}

std::vector<RewriteResponse> BuiltinRewriter::Rewrite(std::span<const RewriteRequest> batch) {
  std::vector<RewriteResponse> out;
  for (const RewriteRequest& r : batch) {
    StableHasher h;
    h.Add(seed_).Add(std::string_view(r.text)).Add(RewriteModeName(r.mode));
    out.push_back({r.request_id, BuiltinRewrite(r.text, h.Digest(), max_variants_)});
  }
  return out;
}

std::vector<RewriteResponse> SubprocessRewriter::Rewrite(
    std::span<const RewriteRequest> batch) {
  if (batch.empty()) return {};
  IgnoreSigpipe();
  std::string input;
  for (const RewriteRequest& r : batch) input += RequestToJson(r) + "\n";

  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) throw Unavailable("pipe failed");
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw Unavailable("pipe failed");
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
    throw Unavailable("fork failed");
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  int write_fd = to_child[1];
  const int read_fd = from_child[0];
  ::fcntl(write_fd, F_SETFL, ::fcntl(write_fd, F_GETFL) | O_NONBLOCK);

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(static_cast<int64_t>(timeout_seconds_ * 1000));
  size_t written = 0;
  std::string output;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {read_fd, POLLIN, 0};
    if (write_fd >= 0) fds[n++] = {write_fd, POLLOUT, 0};
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                          deadline - std::chrono::steady_clock::now())
                          .count();
    if (left <= 0) {
      timed_out = true;
      break;
    }
    const int ready = ::poll(fds, n, static_cast<int>(left));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) {
      timed_out = true;
      break;
    }
    if (n == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t w = ::write(write_fd, input.data() + written, input.size() - written);
      if (w > 0) written += static_cast<size_t>(w);
      if ((w < 0 && errno != EAGAIN && errno != EINTR) || written == input.size()) {
        ::close(write_fd);
        write_fd = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t r = ::read(read_fd, buf, sizeof(buf));
      if (r > 0) {
        output.append(buf, static_cast<size_t>(r));
      } else if (r == 0 || (errno != EINTR && errno != EAGAIN)) {
        break;
      }
    }
  }
  if (write_fd >= 0) ::close(write_fd);
  ::close(read_fd);
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) {
    throw Unavailable("rewriter `" + command_ + "` timed out");
  }

  std::vector<RewriteResponse> out;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (NormalizeSpaces(line).empty()) continue;
    try {
      out.push_back(ResponseFromJson(line));
    } catch (const Error& e) {
      throw Unavailable("rewriter `" + command_ + "`: " + e.what());
    }
  }
  if (out.empty() && !(WIFEXITED(status) && WEXITSTATUS(status) == 0)) {
    throw Unavailable("rewriter `" + command_ + "` exited with status " +
                      std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));
  }
  return out;
}

std::vector<RewriteResponse> HttpRewriter::Rewrite(std::span<const RewriteRequest> batch) {
  std::vector<std::optional<RewriteResponse>> results(batch.size());
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::string failure;
  const time_t sec = static_cast<time_t>(timeout_seconds_);
  const time_t usec = static_cast<time_t>((timeout_seconds_ - static_cast<double>(sec)) * 1e6);

  auto worker = [&] {
    httplib::Client client(endpoint_);
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= batch.size()) return;
      {
        std::lock_guard lock(mu);
        if (!failure.empty()) return;
      }
      auto res = client.Post("/rewrite", RequestToJson(batch[i]), "application/json");
      std::string error;
      if (!res) {
        error = endpoint_ + ": " + httplib::to_string(res.error());
      } else if (res->status != 200) {
        error = endpoint_ + ": HTTP " + std::to_string(res->status);
      } else {
        try {
          results[i] = ResponseFromJson(res->body);
        } catch (const Error& e) {
          error = endpoint_ + ": " + e.what();
        }
      }
      if (!error.empty()) {
        std::lock_guard lock(mu);
        if (failure.empty()) failure = error;
        return;
      }
    }
  };
  const size_t threads = std::min(in_flight_, batch.size());
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!failure.empty()) throw Unavailable(failure);
  std::vector<RewriteResponse> out;
  for (auto& r : results) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

void AugmentConfig::Validate() const {
  if (modes.empty()) throw Error(ErrorCode::kBadConfig, "no augmentation mode");
  if (!(keep_probability >= 0.0 && keep_probability <= 1.0)) {
    throw Error(ErrorCode::kBadConfig, "keep_probability must lie in [0,1]");
  }
  if (batch_size == 0) throw Error(ErrorCode::kBadConfig, "batch_size must be positive");
  if (!(timeout_seconds > 0.0)) throw Error(ErrorCode::kBadConfig, "timeout must be positive");
  for (RewriteMode m : modes) {
    if (m == RewriteMode::kBacktranslate && pivots.empty()) {
      throw Error(ErrorCode::kBadConfig, "backtranslate needs at least one pivot language");
    }
  }
  for (const auto& p : pivots) {
    if (p != "fr" && p != "de" && p != "es") {
      throw Error(ErrorCode::kBadConfig, "unsupported pivot language `" + p + "`");
    }
  }
}

bool PreservesAnswer(std::string_view original, std::string_view rewrite,
                     std::string_view answer) {
  const std::vector<std::string> answer_words = NormalizeAnswerTokens(answer);
  if (answer_words.empty()) return true;
  const std::vector<std::string> before = LowerWords(original);
  const std::vector<std::string> after = LowerWords(rewrite);
  if (ContainsRun(before, answer_words) != ContainsRun(after, answer_words)) return false;
  const std::string lemma = Singularize(answer_words.back());
  return ContainsLemma(before, lemma) == ContainsLemma(after, lemma);
}

std::vector<QAPair> AugmentBatch(std::span<const QAPair> pairs, Rewriter* rewriter,
                                 const AugmentConfig& cfg, AugmentStats* stats) {
  cfg.Validate();
  AugmentStats local;
  AugmentStats& st = stats ? *stats : local;
  BuiltinRewriter builtin(cfg.seed, cfg.max_variants);
  Rewriter* primary = rewriter ? rewriter : &builtin;

  std::vector<RewriteRequest> requests;
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (RewriteMode mode : cfg.modes) {
      RewriteRequest r;
      r.request_id = std::to_string(i) + ":" + std::string(RewriteModeName(mode));
      r.text = pairs[i].question;
      r.mode = mode;
      if (mode == RewriteMode::kBacktranslate) {
        StableHasher h;
        h.Add(cfg.seed).Add(std::string_view(pairs[i].qa_id)).Add("pivot");
        r.pivot_language = cfg.pivots[h.Digest() % cfg.pivots.size()];
      }
      requests.push_back(std::move(r));
    }
  }
  st.requests += requests.size();

  std::map<std::string, std::vector<std::string>> rewrites;
  for (size_t b = 0; b < requests.size(); b += cfg.batch_size) {
    std::span<const RewriteRequest> batch(requests.data() + b,
                                          std::min(cfg.batch_size, requests.size() - b));
    std::vector<RewriteResponse> responses;
    try {
      responses = primary->Rewrite(batch);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRewriterUnavailable || !cfg.fallback ||
          primary == &builtin) {
        throw;
      }
      responses = builtin.Rewrite(batch);
      ++st.fallback_batches;
    }
    for (RewriteResponse& r : responses) {
      auto& slot = rewrites[r.request_id];
      slot.insert(slot.end(), r.rewrites.begin(), r.rewrites.end());
    }
  }

  std::vector<QAPair> out;
  size_t request_index = 0;
  for (const QAPair& qa : pairs) {
    out.push_back(qa);
    std::set<std::string> seen = {RewriteKey(qa.question)};
    size_t kept_for_pair = 0;
    for (RewriteMode mode : cfg.modes) {
      const RewriteRequest& req = requests[request_index++];
      auto it = rewrites.find(req.request_id);
      if (it == rewrites.end()) continue;
      SeededRng keep(StableHasher()
                         .Add(cfg.seed)
                         .Add(std::string_view(qa.qa_id))
                         .Add(RewriteModeName(mode))
                         .Digest());
      int ordinal = 0;
      for (const std::string& raw : it->second) {
        if (kept_for_pair >= cfg.max_variants) break;
        std::string text = NormalizeSpaces(raw);
        while (!text.empty() && (text.back() == '.' || text.back() == ' ')) text.pop_back();
        if (text.empty()) continue;
        if (text.back() != '?') text.push_back('?');
        if (!seen.insert(RewriteKey(text)).second) continue;
        if (!PreservesAnswer(qa.question, text, qa.answer)) {
          ++st.rejected;
          continue;
        }
        if (cfg.keep_probability < 1.0 && keep.UniformReal() >= cfg.keep_probability) continue;
        QAPair derived = qa;
        derived.question = std::move(text);
        derived.source = mode == RewriteMode::kParaphrase ? Source::kParaphrase
                                                          : Source::kBacktranslate;
        derived.parent_qa_id = qa.qa_id;
        derived.qa_id = HexDigest(StableHasher()
                                      .Add(std::string_view(qa.qa_id))
                                      .Add(RewriteModeName(mode))
                                      .Add(ordinal)
                                      .Digest());
        ++ordinal;
        ++kept_for_pair;
        ++st.accepted;
        out.push_back(std::move(derived));
      }
    }
  }
  return out;
}

}  // namespace capqa
