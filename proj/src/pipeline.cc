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

#include "capqa/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "capqa/answers.h"
#include "capqa/corpus.h"
#include "capqa/embed.h"
#include "capqa/error.h"
#include "capqa/hashing.h"
#include "capqa/patches.h"
#include "capqa/pretrain_data.h"
#include "capqa/qgen_srl.h"
#include "json.hpp"

namespace capqa {

namespace {

using json = nlohmann::ordered_json;

std::string_view NoTransformName(NoTransform t) {
  switch (t) {
    case NoTransform::kSeeded: return "seeded";
    case NoTransform::kNegation: return "negation";
    case NoTransform::kAdversarial: return "adversarial";
  }
  return "seeded";
}

NoTransform ParseNoTransform(const std::string& name) {
  if (name == "seeded") return NoTransform::kSeeded;
  if (name == "negation") return NoTransform::kNegation;
  if (name == "adversarial") return NoTransform::kAdversarial;
  throw Error(ErrorCode::kBadConfig, "gen.no_transform must be seeded, negation or adversarial");
}

std::pair<int64_t, int64_t> ParseDims(const std::string& text) {
  const size_t x = text.find('x');
  try {
    if (x != std::string::npos) {
      size_t used_w = 0;
      size_t used_h = 0;
      const int64_t w = std::stoll(text.substr(0, x), &used_w);
      const int64_t h = std::stoll(text.substr(x + 1), &used_h);
      if (used_w == x && used_h == text.size() - x - 1 && w > 0 && h > 0) return {w, h};
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kBadConfig, "dimensions must look like 640x480, got `" + text + "`");
}

Lexicons LoadLexicons(const PipelineConfig& cfg) {
  if (cfg.lexicons.empty()) return Lexicons::Builtin();
  RequireFile(cfg.lexicons, "lexicons");
  return Lexicons::Load(cfg.lexicons);
}

Corpus LoadCorpus(const PipelineConfig& cfg) {
  if (cfg.captions.empty()) throw Error(ErrorCode::kBadConfig, "no captions path configured");
  RequireFile(cfg.captions, "captions");
  return LoadCoco(cfg.captions);
}

// Writes through a temporary file so a failed run never leaves a partial
// output behind.
class AtomicOutput {
 public:
  explicit AtomicOutput(std::string path) : path_(std::move(path)), tmp_(path_ + ".tmp") {
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw Error(ErrorCode::kIoError, "cannot write " + tmp_);
  }
  ~AtomicOutput() {
    if (!committed_) {
      out_.close();
      std::remove(tmp_.c_str());
    }
  }
  std::ofstream& stream() { return out_; }
  void Commit() {
    out_.flush();
    if (!out_) throw Error(ErrorCode::kIoError, "write failed for " + tmp_);
    out_.close();
    std::error_code ec;
    std::filesystem::rename(tmp_, path_, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot rename " + tmp_ + ": " + ec.message());
    committed_ = true;
  }

 private:
  std::string path_;
  std::string tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// stops the remaining work and is rethrown.
template <typename Fn>
void ParallelFor(size_t n, size_t workers, Fn fn) {
  const size_t threads = std::max<size_t>(1, std::min(workers, n));
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    while (!failed.load()) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::unique_ptr<Rewriter> MakeRewriter(const PipelineConfig& cfg) {
  if (cfg.rewriter.empty()) return nullptr;
  if (cfg.rewriter.rfind("http://", 0) == 0 || cfg.rewriter.rfind("https://", 0) == 0) {
    return std::make_unique<HttpRewriter>(cfg.rewriter, cfg.augment.timeout_seconds);
  }
  return std::make_unique<SubprocessRewriter>(cfg.rewriter, cfg.augment.timeout_seconds);
}

}  // namespace

void RequireFile(const std::string& path, const std::string& what) {
  std::error_code ec;
  if (path.empty() || !std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kIoError, what + " file not found: " + path);
  }
}

void PipelineConfig::Validate() const {
  gen.Validate();
  augment.Validate();
  try {
    ValidateLevels(levels);
  } catch (const Error& e) {
    throw Error(ErrorCode::kBadConfig, std::string("levels: ") + e.what());
  }
  if (workers == 0) throw Error(ErrorCode::kBadConfig, "workers must be at least 1");
  if (!(neg_ratio >= 0.0)) throw Error(ErrorCode::kBadConfig, "neg_ratio must be >= 0");
  if (min_count == 0) throw Error(ErrorCode::kBadConfig, "min_count must be at least 1");
  if (questions_per_image_per_epoch == 0) {
    throw Error(ErrorCode::kBadConfig, "questions_per_image_per_epoch must be at least 1");
  }
  if (default_dims && (default_dims->first <= 0 || default_dims->second <= 0)) {
    throw Error(ErrorCode::kBadConfig, "default_dims must be positive");
  }
  for (const auto& [path, what] : {std::pair{captions, "captions"},
                                   std::pair{vectors, "vectors"},
                                   std::pair{srl_frames, "srl_frames"},
                                   std::pair{lexicons, "lexicons"}}) {
    if (!path.empty()) RequireFile(path, what);
  }
}

void ApplyConfigJson(const std::string& json_text, PipelineConfig* cfg) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kBadConfig, std::string("config is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kBadConfig, "config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") cfg->seed = v.get<uint64_t>();
      else if (key == "captions") cfg->captions = v.get<std::string>();
      else if (key == "vectors") cfg->vectors = v.get<std::string>();
      else if (key == "vectors_limit") cfg->vectors_limit = v.get<size_t>();
      else if (key == "srl_frames") cfg->srl_frames = v.get<std::string>();
      else if (key == "lexicons") cfg->lexicons = v.get<std::string>();
      else if (key == "rewriter") cfg->rewriter = v.get<std::string>();
      else if (key == "templates") cfg->templates = v.get<bool>();
      else if (key == "adversarial") cfg->adversarial = v.get<bool>();
      else if (key == "object_vocab_cap") cfg->object_vocab_cap = v.get<size_t>();
      else if (key == "levels") cfg->levels = v.get<std::vector<int>>();
      else if (key == "default_dims") cfg->default_dims = ParseDims(v.get<std::string>());
      else if (key == "neg_ratio") cfg->neg_ratio = v.get<double>();
      else if (key == "min_count") cfg->min_count = v.get<size_t>();
      else if (key == "questions_per_image_per_epoch") {
        cfg->questions_per_image_per_epoch = v.get<size_t>();
      } else if (key == "workers") cfg->workers = v.get<size_t>();
      else if (key == "gen") {
        GenConfig& g = cfg->gen;
        for (const auto& [gk, gv] : v.items()) {
          if (gk == "yesno_prefixes") g.yesno_prefixes = gv.get<std::vector<std::string>>();
          else if (gk == "number_frames") g.number_frames = gv.get<std::vector<std::string>>();
          else if (gk == "adversarial_threshold") g.adversarial_threshold = gv.get<double>();
          else if (gk == "max_questions_per_caption") g.max_questions_per_caption = gv.get<size_t>();
          else if (gk == "split_threshold") g.split_threshold = gv.get<size_t>();
          else if (gk == "no_transform") g.no_transform = ParseNoTransform(gv.get<std::string>());
          else if (gk == "yesno") g.yesno = gv.get<bool>();
          else if (gk == "object") g.object = gv.get<bool>();
          else if (gk == "number") g.number = gv.get<bool>();
          else if (gk == "color") g.color = gv.get<bool>();
          else if (gk == "location") g.location = gv.get<bool>();
          else if (gk == "adversarial_open") g.adversarial_open = gv.get<bool>();
          else if (gk == "negate_color") g.negate_color = gv.get<bool>();
          else throw Error(ErrorCode::kBadConfig, "unknown config key gen." + gk);
        }
      } else if (key == "augment") {
        AugmentConfig& a = cfg->augment;
        for (const auto& [ak, av] : v.items()) {
          if (ak == "modes") {
            a.modes.clear();
            for (const auto& m : av) a.modes.push_back(ParseRewriteMode(m.get<std::string>()));
          } else if (ak == "pivots") a.pivots = av.get<std::vector<std::string>>();
          else if (ak == "max_variants") a.max_variants = av.get<size_t>();
          else if (ak == "keep_probability") a.keep_probability = av.get<double>();
          else if (ak == "batch_size") a.batch_size = av.get<size_t>();
          else if (ak == "timeout_seconds") a.timeout_seconds = av.get<double>();
          else if (ak == "fallback") a.fallback = av.get<bool>();
          else throw Error(ErrorCode::kBadConfig, "unknown config key augment." + ak);
        }
      } else {
        throw Error(ErrorCode::kBadConfig, "unknown config key " + key);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadConfig, std::string("bad config value: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBadConfig) throw;
    throw Error(ErrorCode::kBadConfig, e.what());
  }
}

PipelineConfig LoadPipelineConfig(const std::string& path) {
  RequireFile(path, "config");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  PipelineConfig cfg;
  ApplyConfigJson(buf.str(), &cfg);
  return cfg;
}

void ApplySeedEnv(PipelineConfig* cfg) {
  const char* env = std::getenv("CAPQA_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || errno == ERANGE || env[0] == '-') {
    throw Error(ErrorCode::kBadConfig, std::string("CAPQA_SEED is not an unsigned integer: ") + env);
  }
  cfg->seed = v;
}

std::string PipelineConfigToJson(const PipelineConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["captions"] = cfg.captions;
  j["vectors"] = cfg.vectors;
  if (cfg.vectors_limit) j["vectors_limit"] = *cfg.vectors_limit;
  j["srl_frames"] = cfg.srl_frames;
  j["lexicons"] = cfg.lexicons;
  j["rewriter"] = cfg.rewriter;
  j["templates"] = cfg.templates;
  j["adversarial"] = cfg.adversarial;
  j["object_vocab_cap"] = cfg.object_vocab_cap;
  json g;
  g["yesno_prefixes"] = cfg.gen.yesno_prefixes;
  g["number_frames"] = cfg.gen.number_frames;
  g["adversarial_threshold"] = cfg.gen.adversarial_threshold;
  g["max_questions_per_caption"] = cfg.gen.max_questions_per_caption;
  g["split_threshold"] = cfg.gen.split_threshold;
  g["no_transform"] = NoTransformName(cfg.gen.no_transform);
  g["yesno"] = cfg.gen.yesno;
  g["object"] = cfg.gen.object;
  g["number"] = cfg.gen.number;
  g["color"] = cfg.gen.color;
  g["location"] = cfg.gen.location;
  g["adversarial_open"] = cfg.gen.adversarial_open;
  g["negate_color"] = cfg.gen.negate_color;
  j["gen"] = std::move(g);
  json a;
  json modes = json::array();
  for (RewriteMode m : cfg.augment.modes) modes.push_back(RewriteModeName(m));
  a["modes"] = std::move(modes);
  a["pivots"] = cfg.augment.pivots;
  a["max_variants"] = cfg.augment.max_variants;
  a["keep_probability"] = cfg.augment.keep_probability;
  a["batch_size"] = cfg.augment.batch_size;
  a["timeout_seconds"] = cfg.augment.timeout_seconds;
  a["fallback"] = cfg.augment.fallback;
  j["augment"] = std::move(a);
  j["levels"] = cfg.levels;
  if (cfg.default_dims) {
    j["default_dims"] = std::to_string(cfg.default_dims->first) + "x" +
                        std::to_string(cfg.default_dims->second);
  }
  j["neg_ratio"] = cfg.neg_ratio;
  j["min_count"] = cfg.min_count;
  j["questions_per_image_per_epoch"] = cfg.questions_per_image_per_epoch;
  j["workers"] = cfg.workers;
  return j.dump(2);
}

std::vector<QAPair> GeneratePairs(const PipelineConfig& cfg, GenerateResult* result) {
  cfg.Validate();
  const Lexicons lex = LoadLexicons(cfg);
  const Corpus corpus = LoadCorpus(cfg);

  std::optional<EmbeddingStore> store;
  std::optional<AdversarialIndex> index;
  if (cfg.templates && cfg.adversarial) {
    if (cfg.vectors.empty()) {
      throw Error(ErrorCode::kBadConfig,
                  "adversarial substitution is enabled but no vectors path is configured");
    }
    RequireFile(cfg.vectors, "vectors");
    store = LoadVectors(cfg.vectors, cfg.vectors_limit);
    index.emplace(&*store, BuildObjectVocab(corpus, lex, cfg.object_vocab_cap),
                  cfg.gen.adversarial_threshold);
  }

  std::map<ImageId, std::vector<const SrlFrame*>> frames_by_image;
  FrameSet frames;
  if (!cfg.srl_frames.empty()) {
    frames = LoadFrames(cfg.srl_frames, corpus);
    for (const SrlFrame& f : frames.frames) frames_by_image[f.image_id].push_back(&f);
  }

  GenConfig gen = cfg.gen;
  gen.seed = cfg.seed;
  const std::span<const CaptionRecord> records = corpus.Iterate();
  std::vector<std::vector<QAPair>> per_image(records.size());
  ParallelFor(records.size(), cfg.workers, [&](size_t i) {
    const CaptionRecord& record = records[i];
    std::vector<QAPair>& out = per_image[i];
    if (cfg.templates) {
      ImageContext ctx;
      ctx.record = &record;
      ctx.object_lemmas = ImageObjectLemmas(record, lex);
      ctx.adversarial = index ? &*index : nullptr;
      out = GenerateTemplates(ctx, lex, gen);
    }
    if (auto it = frames_by_image.find(record.image_id); it != frames_by_image.end()) {
      for (const SrlFrame* f : it->second) {
        for (QAPair& qa : RenderQa(*f, lex)) out.push_back(std::move(qa));
      }
    }
    for (QAPair& qa : out) {
      qa.weights = AnswerWeights(qa.answer, lex);
      const std::string violation = QaInvariantViolation(qa);
      if (!violation.empty()) {
        throw Error(ErrorCode::kMalformedInput,
                    "generated pair for image " + std::to_string(record.image_id) +
                        " breaks an invariant: " + violation);
      }
    }
  });

  std::vector<QAPair> pairs;
  for (auto& v : per_image) {
    for (QAPair& qa : v) pairs.push_back(std::move(qa));
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const QAPair& a, const QAPair& b) {
    if (a.image_id != b.image_id) return a.image_id < b.image_id;
    return a.qa_id < b.qa_id;
  });
  if (result) {
    result->pairs = pairs.size();
    result->srl_frames_dropped = frames.dropped;
    result->vector_dim = store ? store->dim() : 0;
    result->vector_count = store ? store->size() : 0;
    result->report = DatasetReport();
    for (const QAPair& qa : pairs) result->report.Add(qa);
  }
  return pairs;
}

GenerateResult RunGenerate(const PipelineConfig& cfg, const std::string& out_path) {
  GenerateResult result;
  const std::vector<QAPair> pairs = GeneratePairs(cfg, &result);
  AtomicOutput out(out_path);
  out.stream() << QaJsonlString(pairs);
  out.Commit();
  try {
    AtomicOutput manifest(out_path + ".manifest.json");
    json m;
    m["command"] = "generate";
    m["config"] = json::parse(PipelineConfigToJson(cfg));
    m["pairs"] = result.pairs;
    m["srl_frames_dropped"] = result.srl_frames_dropped;
    m["vectors"] = {{"dim", result.vector_dim}, {"words", result.vector_count}};
    manifest.stream() << m.dump(2) << '\n';
    manifest.Commit();
  } catch (...) {
    std::remove(out_path.c_str());
    throw;
  }
  return result;
}

AugmentStats RunAugment(const PipelineConfig& cfg, const std::string& in_path,
                        const std::string& out_path) {
  cfg.Validate();
  RequireFile(in_path, "dataset");
  const std::vector<QAPair> pairs = ReadQaJsonl(in_path);
  if (pairs.empty()) throw Error(ErrorCode::kEmptyStream, in_path + " has no QA pairs");
  std::unique_ptr<Rewriter> rewriter = MakeRewriter(cfg);
  AugmentConfig acfg = cfg.augment;
  acfg.seed = cfg.seed;
  AugmentStats stats;
  const std::vector<QAPair> out_pairs = AugmentBatch(pairs, rewriter.get(), acfg, &stats);
  AtomicOutput out(out_path);
  out.stream() << QaJsonlString(out_pairs);
  out.Commit();
  return stats;
}

size_t RunWeigh(const PipelineConfig& cfg, const std::string& in_path,
                const std::string& out_path) {
  cfg.Validate();
  RequireFile(in_path, "dataset");
  const Lexicons lex = LoadLexicons(cfg);
  std::vector<QAPair> pairs = ReadQaJsonl(in_path);
  for (QAPair& qa : pairs) qa.weights = AnswerWeights(qa.answer, lex);
  AtomicOutput out(out_path);
  out.stream() << QaJsonlString(pairs);
  out.Commit();
  return pairs.size();
}

size_t RunVocab(const PipelineConfig& cfg, const std::string& in_path,
                const std::string& vocab_path, const std::string& targets_path) {
  cfg.Validate();
  RequireFile(in_path, "dataset");
  const Lexicons lex = LoadLexicons(cfg);
  std::vector<QAPair> pairs = ReadQaJsonl(in_path);
  if (pairs.empty()) throw Error(ErrorCode::kEmptyStream, in_path + " has no QA pairs");
  const AnswerVocab vocab = BuildVocab(pairs, cfg.min_count, lex);
  SaveVocab(vocab, vocab_path);
  if (!targets_path.empty()) {
    AtomicOutput out(targets_path);
    for (QAPair& qa : pairs) {
      if (!qa.weights) qa.weights = AnswerWeights(qa.answer, lex);
      SwaTargetVector target;
      try {
        target = SwaTarget(qa, vocab);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kAnswerNotInVocab) continue;
        throw;
      }
      json j;
      j["qa_id"] = qa.qa_id;
      json values = json::array();
      for (const auto& [i, w] : target.values) values.push_back({i, RoundWeight(w)});
      j["targets"] = std::move(values);
      j["dropped"] = target.dropped;
      out.stream() << j.dump() << '\n';
    }
    out.Commit();
  }
  return vocab.size();
}

size_t RunPatches(const PipelineConfig& cfg, const std::string& out_path) {
  cfg.Validate();
  const Corpus corpus = LoadCorpus(cfg);
  std::vector<ImageId> missing;
  for (const CaptionRecord& r : corpus.Iterate()) {
    if (!r.HasDims()) missing.push_back(r.image_id);
  }
  if (!missing.empty() && !cfg.default_dims) {
    std::string ids;
    for (size_t i = 0; i < missing.size() && i < 20; ++i) {
      ids += (i ? ", " : "") + std::to_string(missing[i]);
    }
    if (missing.size() > 20) ids += ", ... (" + std::to_string(missing.size()) + " total)";
    throw Error(ErrorCode::kBadDims, "images without dimensions: " + ids);
  }
  std::vector<PatchSpec> specs;
  for (const CaptionRecord& r : corpus.Iterate()) {
    const int64_t w = r.HasDims() ? *r.width : cfg.default_dims->first;
    const int64_t h = r.HasDims() ? *r.height : cfg.default_dims->second;
    specs.push_back(Pyramid(r.image_id, w, h, cfg.levels));
  }
  const std::string tmp = out_path + ".tmp";
  size_t lines = 0;
  try {
    lines = WriteManifest(specs, tmp);
    std::filesystem::rename(tmp, out_path);
  } catch (...) {
    std::remove(tmp.c_str());
    throw;
  }
  return lines;
}

PretrainCounts RunPretrain(const PipelineConfig& cfg, const std::string& dataset_path,
                           const std::string& out_path) {
  cfg.Validate();
  const Lexicons lex = LoadLexicons(cfg);
  const Corpus corpus = LoadCorpus(cfg);
  const ObjectIndex index = BuildObjectIndex(corpus, lex);
  PretrainCounts counts;
  AtomicOutput out(out_path);
  for (const CaptionRecord& r : corpus.Iterate()) {
    for (size_t c = 0; c < r.captions.size(); ++c) {
      const uint64_t seed = StableHasher()
                                .Add(cfg.seed)
                                .Add(std::string_view("mlm"))
                                .Add(static_cast<int64_t>(r.image_id))
                                .Add(static_cast<int>(c))
                                .Digest();
      out.stream() << PretrainSampleToJson(MlmMask(r.captions[c], seed, r.image_id,
                                                   static_cast<int>(c)))
                   << '\n';
      ++counts.mlm;
    }
    const uint64_t seed = StableHasher()
                              .Add(cfg.seed)
                              .Add(std::string_view("itm"))
                              .Add(static_cast<int64_t>(r.image_id))
                              .Digest();
    ItmResult itm = ItmPairs(r, corpus, index, cfg.neg_ratio, seed);
    counts.itm_shortfall += itm.shortfall;
    for (const PretrainSample& s : itm.samples) {
      out.stream() << PretrainSampleToJson(s) << '\n';
      ++counts.itm;
    }
  }
  if (!dataset_path.empty()) {
    RequireFile(dataset_path, "dataset");
    for (const QAPair& qa : ReadQaJsonl(dataset_path)) {
      const uint64_t seed = StableHasher()
                                .Add(cfg.seed)
                                .Add(std::string_view("mqa"))
                                .Add(std::string_view(qa.qa_id))
                                .Digest();
      out.stream() << PretrainSampleToJson(MqaMask(qa, seed)) << '\n';
      ++counts.mqa;
    }
  }
  out.Commit();
  return counts;
}

std::vector<QAPair> SampleEpoch(const std::vector<QAPair>& pairs, int64_t epoch,
                                const PipelineConfig& cfg) {
  if (cfg.questions_per_image_per_epoch == 0) {
    throw Error(ErrorCode::kBadConfig, "questions_per_image_per_epoch must be at least 1");
  }
  std::map<ImageId, std::vector<size_t>> by_image;
  for (size_t i = 0; i < pairs.size(); ++i) by_image[pairs[i].image_id].push_back(i);
  std::vector<bool> keep(pairs.size(), false);
  for (const auto& [image_id, idx] : by_image) {
    SeededRng rng(StableHasher()
                      .Add(cfg.seed)
                      .Add(static_cast<int64_t>(epoch))
                      .Add(static_cast<int64_t>(image_id))
                      .Digest());
    const size_t k = std::min(cfg.questions_per_image_per_epoch, idx.size());
    for (size_t pick : rng.SampleWithoutReplacement(idx.size(), k)) keep[idx[pick]] = true;
  }
  std::vector<QAPair> out;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (keep[i]) out.push_back(pairs[i]);
  }
  return out;
}

size_t RunSampleEpoch(const PipelineConfig& cfg, const std::string& in_path, int64_t epoch,
                      const std::string& out_path) {
  cfg.Validate();
  RequireFile(in_path, "dataset");
  const std::vector<QAPair> sampled = SampleEpoch(ReadQaJsonl(in_path), epoch, cfg);
  AtomicOutput out(out_path);
  out.stream() << QaJsonlString(sampled);
  out.Commit();
  return sampled.size();
}

DatasetReport RunStats(const PipelineConfig& cfg, const std::string& in_path,
                       const std::string& report_path, const std::string& embeddings_path) {
  cfg.Validate();
  RequireFile(in_path, "dataset");
  const std::vector<QAPair> pairs = ReadQaJsonl(in_path);
  DatasetReport report = Report(pairs);
  if (!report_path.empty()) {
    AtomicOutput out(report_path);
    out.stream() << report.ToJson() << '\n';
    out.Commit();
  }
  if (!embeddings_path.empty()) {
    RequireFile(cfg.vectors, "vectors");
    const EmbeddingStore store = LoadVectors(cfg.vectors, cfg.vectors_limit);
    const std::string tmp = embeddings_path + ".tmp";
    try {
      ExportEmbeddings(pairs, store, tmp);
      std::filesystem::rename(tmp, embeddings_path);
    } catch (...) {
      std::remove(tmp.c_str());
      throw;
    }
  }
  return report;
}

}  // namespace capqa
