// Copyright (c) 2026 SASR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sasr/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "json.hpp"

#include "sasr/attention.h"
#include "sasr/clustering.h"
#include "sasr/rng.h"
#include "sasr/sot.h"

namespace sasr {
namespace {

// Slack allowed between an embedding window and its VAD segment.
constexpr double kWindowCollar = 0.1;

std::string SegmentError(const char* system, const Segment& seg, const std::string& what) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s: segment [%.3f, %.3f): ", system, seg.start,
                seg.end);
  return buf + what;
}

std::vector<Token> TranscribeGuarded(RecognizerPort& port, const Segment& seg,
                                     const AudioRef& audio, const char* system) {
  try {
    return port.Transcribe(seg, audio);
  } catch (const std::exception& e) {
    throw std::runtime_error(SegmentError(system, seg, e.what()));
  }
}

SaAsrOutput SaTranscribeGuarded(RecognizerPort& port, const Segment& seg,
                                const AudioRef& audio, const ProfileSet& profiles,
                                const char* system) {
  try {
    return port.SaTranscribe(seg, audio, profiles);
  } catch (const std::exception& e) {
    throw std::runtime_error(SegmentError(system, seg, e.what()));
  }
}

bool MidpointInside(const Segment& window, const Segment& segment) {
  const double mid = window.midpoint();
  return TimeLe(segment.start, mid) && TimeLt(mid, segment.end);
}

// Majority vote over the labels of the stream's windows whose midpoint
// falls in the segment; ties go to the label seen earliest in the
// segment. labels is indexed as offset + window position. Returns -1
// when the segment holds no window.
int MajorityLabel(const std::vector<std::pair<Segment, Embedding>>& windows,
                  const std::vector<int>& labels, int offset, const Segment& segment) {
  std::unordered_map<int, int> counts;
  std::vector<int> first_seen;
  for (size_t i = 0; i < windows.size(); ++i) {
    if (!MidpointInside(windows[i].first, segment)) continue;
    const int label = labels[offset + i];
    if (counts.emplace(label, 0).second) first_seen.push_back(label);
    ++counts[label];
  }
  if (first_seen.empty()) return -1;
  int best = first_seen.front();
  for (int label : first_seen) {
    if (counts[label] > counts[best]) best = label;
  }
  return best;
}

std::vector<Embedding> StripWindows(const std::vector<std::pair<Segment, Embedding>>& w) {
  std::vector<Embedding> out;
  out.reserve(w.size());
  for (const auto& [seg, emb] : w) out.push_back(emb);
  return out;
}

void ValidateStream(const StreamInputs& s, const char* name) {
  for (const auto& [window, emb] : s.embeddings) {
    bool inside = false;
    for (const Segment& v : s.vad) {
      if (window.start >= v.start - kWindowCollar && window.end <= v.end + kWindowCollar) {
        inside = true;
        break;
      }
    }
    if (!inside) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "pipeline inputs: %s window [%.3f, %.3f) lies outside VAD "
                    "(collar 0.1 s)",
                    name, window.start, window.end);
      throw std::invalid_argument(buf);
    }
  }
}

}  // namespace

void PipelineInputs::Validate() const {
  ValidateStream(mixture, "mixture");
  if (separated) {
    ValidateStream((*separated)[0], "stream 0");
    ValidateStream((*separated)[1], "stream 1");
  }
}

void PipelineConfig::Validate() const {
  segmenter.Validate();
  if (max_speakers < 1) {
    throw std::invalid_argument("pipeline config: max_speakers must be at least 1");
  }
  if (leakage_threshold < 0.0 || leakage_threshold > 2.0) {
    throw std::invalid_argument(
        "pipeline config: leakage_threshold must be a cosine distance in [0, 2]");
  }
  if (num_dummy_profiles < 1) {
    throw std::invalid_argument("pipeline config: num_dummy_profiles must be at least 1");
  }
  if (embedding_dim < 1) {
    throw std::invalid_argument("pipeline config: embedding_dim must be at least 1");
  }
}

PipelineConfig LoadPipelineConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("pipeline config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("pipeline config: " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("pipeline config: top level must be an object");

  PipelineConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "segmenter") {
      for (const auto& [skey, svalue] : value.items()) {
        if (skey == "max_gap") {
          cfg.segmenter.max_gap = svalue.get<double>();
        } else if (skey == "max_duration") {
          cfg.segmenter.max_duration = svalue.get<double>();
        } else {
          throw std::runtime_error("pipeline config: unknown key segmenter." + skey);
        }
      }
    } else if (key == "max_speakers") {
      cfg.max_speakers = value.get<int>();
    } else if (key == "leakage_threshold") {
      cfg.leakage_threshold = value.get<double>();
    } else if (key == "seed") {
      cfg.seed = value.get<uint64_t>();
    } else if (key == "num_dummy_profiles") {
      cfg.num_dummy_profiles = value.get<int>();
    } else if (key == "embedding_dim") {
      cfg.embedding_dim = value.get<int>();
    } else {
      throw std::runtime_error("pipeline config: unknown key " + key);
    }
  }
  cfg.Validate();
  return cfg;
}

std::string PipelineConfigJson(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["segmenter"]["max_gap"] = cfg.segmenter.max_gap;
  j["segmenter"]["max_duration"] = cfg.segmenter.max_duration;
  j["max_speakers"] = cfg.max_speakers;
  j["leakage_threshold"] = cfg.leakage_threshold;
  j["seed"] = cfg.seed;
  j["num_dummy_profiles"] = cfg.num_dummy_profiles;
  j["embedding_dim"] = cfg.embedding_dim;
  return j.dump(2);
}

void AttributedTranscript::Validate() const {
  if (num_speakers < 0) {
    throw std::invalid_argument("transcript: negative num_speakers");
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    const TranscriptEntry& e = entries[i];
    if (e.label < 0 || e.label >= num_speakers) {
      throw std::invalid_argument("transcript: entry " + std::to_string(i) +
                                  ": label " + std::to_string(e.label) +
                                  " outside [0, " + std::to_string(num_speakers) + ")");
    }
    if (!TimeLt(e.segment.start, e.segment.end)) {
      throw std::invalid_argument("transcript: entry " + std::to_string(i) +
                                  ": empty segment");
    }
    if (e.tokens.empty()) {
      throw std::invalid_argument("transcript: entry " + std::to_string(i) +
                                  ": no tokens");
    }
  }
}

M1Result RunM1(const PipelineInputs& inputs, RecognizerPort& asr,
               const PipelineConfig& cfg) {
  inputs.Validate();
  cfg.Validate();
  const StreamInputs& mix = inputs.mixture;
  if (mix.vad.empty() || mix.embeddings.empty()) {
    throw std::invalid_argument("m1: empty VAD input (no windows to diarize)");
  }

  const std::vector<Embedding> vectors = StripWindows(mix.embeddings);
  const ClusterResult cl = Cluster(vectors, {cfg.max_speakers, cfg.seed});

  M1Result res;
  res.transcript.num_speakers = cl.k;
  res.centroids = cl.centroids;
  for (const Segment& seg : MergeAndSplit(mix.vad, cfg.segmenter)) {
    const int label = MajorityLabel(mix.embeddings, cl.labels, 0, seg);
    if (label < 0) continue;  // no window evidence in this segment
    std::vector<Token> tokens = TranscribeGuarded(asr, seg, mix.audio, "m1");
    if (tokens.empty()) continue;
    res.transcript.entries.push_back({label, seg, std::move(tokens)});
  }
  res.transcript.Validate();
  return res;
}

AttributedTranscript RunM2(const PipelineInputs& inputs, RecognizerPort& asr,
                           const std::vector<Embedding>& m1_centroids,
                           const PipelineConfig& cfg) {
  inputs.Validate();
  cfg.Validate();
  if (!inputs.separated) {
    throw std::invalid_argument("m2: separated streams required");
  }
  if (m1_centroids.empty()) {
    throw std::invalid_argument("m2: m1 centroids required for leakage filtering");
  }
  const auto& streams = *inputs.separated;

  std::vector<Embedding> pooled;
  for (const StreamInputs& s : streams) {
    for (const auto& [window, emb] : s.embeddings) pooled.push_back(emb);
  }
  AttributedTranscript out;
  if (pooled.empty()) return out;  // both streams silent

  const ClusterResult cl = Cluster(pooled, {cfg.max_speakers, cfg.seed});
  const std::vector<int> kept =
      LeakageFilter(cl.centroids, m1_centroids, cfg.leakage_threshold);
  std::vector<int> remap(cl.k, -1);
  for (size_t i = 0; i < kept.size(); ++i) remap[kept[i]] = static_cast<int>(i);
  out.num_speakers = static_cast<int>(kept.size());

  int offset = 0;
  for (const StreamInputs& s : streams) {
    if (!s.vad.empty()) {
      for (const Segment& seg : MergeAndSplit(s.vad, cfg.segmenter)) {
        const int label = MajorityLabel(s.embeddings, cl.labels, offset, seg);
        if (label < 0 || remap[label] < 0) continue;  // silent or leaked cluster
        std::vector<Token> tokens = TranscribeGuarded(asr, seg, s.audio, "m2");
        if (tokens.empty()) continue;
        out.entries.push_back({remap[label], seg, std::move(tokens)});
      }
    }
    offset += static_cast<int>(s.embeddings.size());
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const TranscriptEntry& a, const TranscriptEntry& b) {
                     return a.segment.start < b.segment.start;
                   });
  out.Validate();
  return out;
}

AttributedTranscript RunJ1(const PipelineInputs& inputs, RecognizerPort& sa_asr,
                           const ProfileSet& dummy_profiles, const PipelineConfig& cfg) {
  inputs.Validate();
  cfg.Validate();
  dummy_profiles.Validate();
  const StreamInputs& mix = inputs.mixture;
  if (mix.vad.empty()) {
    throw std::invalid_argument("j1: empty VAD input");
  }

  struct Pending {
    Segment segment;
    std::vector<Token> tokens;
  };
  std::vector<Pending> pending;
  std::vector<Embedding> queries;
  for (const Segment& seg : MergeAndSplit(mix.vad, cfg.segmenter)) {
    const SaAsrOutput res = SaTranscribeGuarded(sa_asr, seg, mix.audio,
                                                dummy_profiles, "j1");
    if (res.sequence.tokens.empty()) continue;
    try {
      res.sequence.Validate();
      const std::vector<SotRun> runs = DeserializeSot(res.sequence);
      size_t run_index = 0;
      for (size_t pos = 0; pos < res.sequence.tokens.size(); ++pos) {
        if (res.sequence.tokens[pos].kind == SotToken::Kind::kWord) continue;
        if (pos >= res.queries.size() || !res.queries[pos]) {
          throw std::invalid_argument("missing speaker query at position " +
                                      std::to_string(pos));
        }
        queries.emplace_back(res.queries[pos]->values);
        pending.push_back({seg, runs[run_index].tokens});
        ++run_index;
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(SegmentError("j1", seg, e.what()));
    }
  }
  if (pending.empty()) {
    throw std::runtime_error("j1: port produced no utterances");
  }

  const ClusterResult cl = Cluster(queries, {cfg.max_speakers, cfg.seed});
  AttributedTranscript out;
  out.num_speakers = cl.k;
  for (size_t i = 0; i < pending.size(); ++i) {
    out.entries.push_back(
        {cl.labels[i], pending[i].segment, std::move(pending[i].tokens)});
  }
  out.Validate();
  return out;
}

AttributedTranscript RunJ2(const PipelineInputs& inputs, RecognizerPort& sa_asr,
                           const std::vector<Embedding>& m1_centroids,
                           const PipelineConfig& cfg) {
  inputs.Validate();
  cfg.Validate();
  if (m1_centroids.empty()) {
    throw std::invalid_argument("j2: m1 centroids required as the profile inventory");
  }
  const StreamInputs& mix = inputs.mixture;
  if (mix.vad.empty()) {
    throw std::invalid_argument("j2: empty VAD input");
  }
  ProfileSet profiles;
  profiles.profiles = m1_centroids;
  profiles.Validate();

  AttributedTranscript out;
  out.num_speakers = static_cast<int>(m1_centroids.size());
  for (const Segment& seg : MergeAndSplit(mix.vad, cfg.segmenter)) {
    const SaAsrOutput res = SaTranscribeGuarded(sa_asr, seg, mix.audio, profiles, "j2");
    if (res.sequence.tokens.empty()) continue;
    try {
      res.sequence.Validate();
      const std::vector<SotRun> runs = DeserializeSot(res.sequence);
      const std::vector<std::vector<double>> posteriors =
          UtterancePosteriorsFromSot(res.sequence, res.queries, profiles);
      const std::vector<int> decoded = DedupDecode(posteriors);
      for (size_t r = 0; r < runs.size(); ++r) {
        out.entries.push_back({decoded[r], seg, runs[r].tokens});
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(SegmentError("j2", seg, e.what()));
    }
  }
  out.Validate();
  return out;
}

ProfileSet MakeDummyProfiles(int count, int dim, uint64_t seed) {
  if (count < 1) throw std::invalid_argument("dummy profiles: count must be positive");
  if (dim < 1) throw std::invalid_argument("dummy profiles: dim must be positive");
  ProfileSet out;
  out.profiles.reserve(count);
  Rng rng(MixSeed(seed, 0x64756d6d79ULL));
  for (int i = 0; i < count; ++i) {
    out.profiles.emplace_back(RandomUnitVector(&rng, dim));
  }
  return out;
}

Meeting TranscriptToMeeting(const AttributedTranscript& t, const std::string& meeting_id) {
  t.Validate();
  Meeting m;
  m.id = meeting_id;
  for (const TranscriptEntry& e : t.entries) {
    m.utterances.emplace_back("c" + std::to_string(e.label), e.segment.start,
                              e.segment.end, e.tokens);
  }
  m.num_speakers = m.CountDistinctSpeakers();
  if (!m.utterances.empty()) m.Validate();
  return m;
}

}  // namespace sasr
