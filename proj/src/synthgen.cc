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

#include "sasr/synthgen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "sasr/attention.h"
#include "sasr/pipeline.h"
#include "sasr/rng.h"
#include "sasr/sot.h"

namespace sasr {
namespace {

constexpr int kVocabularySize = 1000;
constexpr int kMaxPoolSize = 8;
constexpr int kMinTokensPerUtterance = 3;
constexpr int kMaxTokensPerUtterance = 8;
constexpr int kRejectionCap = 10000;
constexpr double kMinWindowDuration = 0.2;

// Overlapped layout: durations tight enough that the next start always
// fits after the previous start plus the gap floor, after the utterance
// before that has ended, and before the previous utterance ends (minus
// a margin). That pins concurrency to at most two.
constexpr double kOverlapDurationLo = 1.75;
constexpr double kOverlapDurationHi = 2.0;
constexpr double kOverlapMargin = 0.2;

// Gapped layout: silences strictly wider than the default merge gap, so
// segmentation keeps utterances apart.
constexpr double kGapDurationLo = 1.6;
constexpr double kGapDurationHi = 2.8;
constexpr double kSilenceLo = 1.1;
constexpr double kSilenceHi = 1.6;

constexpr double kMaxInitialStart = 0.5;

// Substream tags for the oracle ports.
constexpr uint64_t kAsrNoiseTag = 1;
constexpr uint64_t kQueryNoiseTag = 2;

Segment SpanOf(const Utterance& u) { return Segment(u.start, u.end); }

// Union of possibly overlapping spans, merged where they touch.
std::vector<Segment> UnionSpans(std::vector<Segment> spans) {
  std::sort(spans.begin(), spans.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
  std::vector<Segment> out;
  for (const Segment& s : spans) {
    if (!out.empty() && TimeLe(s.start, out.back().end)) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

// Earliest-start utterance among `allowed` active at time t, or -1.
int DominantUtterance(const std::vector<Utterance>& utterances,
                      const std::vector<int>& allowed, double t) {
  for (int idx : allowed) {
    const Utterance& u = utterances[idx];
    if (TimeLe(u.start, t) && TimeLt(t, u.end)) return idx;
  }
  return -1;
}

// Sliding windows over speech regions; one noisy centroid embedding per
// window, keyed by the dominant (earliest-started active) speaker at
// the window midpoint.
void AppendWindows(const std::vector<Segment>& vad,
                   const std::vector<Utterance>& utterances,
                   const std::vector<int>& allowed,
                   const std::vector<Embedding>& centroids,
                   const std::unordered_map<std::string, int>& speaker_index,
                   const SynthConfig& cfg, Rng* rng,
                   std::vector<std::pair<Segment, Embedding>>* out) {
  for (const Segment& seg : vad) {
    for (double t = seg.start; TimeLt(t, seg.end); t += cfg.window_period) {
      const Segment w(t, std::min(t + cfg.window_length, seg.end));
      if (TimeLt(w.duration(), kMinWindowDuration)) continue;
      const int idx = DominantUtterance(utterances, allowed, w.midpoint());
      if (idx < 0) {
        throw std::logic_error("synthgen: window midpoint not covered by any utterance");
      }
      const Embedding& c = centroids[speaker_index.at(utterances[idx].speaker)];
      std::vector<double> values = c.values();
      for (double& x : values) x += cfg.embedding_noise * rng->Gaussian();
      out->emplace_back(w, Embedding(std::move(values)));
    }
  }
}

uint64_t SegmentBits(const Segment& s) {
  const auto ms = [](double t) {
    return static_cast<uint64_t>(std::llround(t * 1000.0));
  };
  return MixSeed(ms(s.start), ms(s.end));
}

}  // namespace

void SynthConfig::Validate() const {
  if (num_speakers < 1 || num_speakers > 5) {
    throw std::invalid_argument("synth config: num_speakers must be in [1, 5]");
  }
  if (!(min_start_gap > 0.0)) {
    throw std::invalid_argument("synth config: min_start_gap must be positive");
  }
  if (embedding_noise < 0.0) {
    throw std::invalid_argument("synth config: embedding_noise must be nonnegative");
  }
  if (utterances_per_speaker < 1) {
    throw std::invalid_argument("synth config: utterances_per_speaker must be at least 1");
  }
  if (embedding_dim < 1) {
    throw std::invalid_argument("synth config: embedding_dim must be at least 1");
  }
  if (max_centroid_cosine < -1.0 || max_centroid_cosine > 1.0) {
    throw std::invalid_argument("synth config: max_centroid_cosine must be in [-1, 1]");
  }
  if (!(window_period > 0.0) || !(window_length > 0.0)) {
    throw std::invalid_argument("synth config: window period and length must be positive");
  }
}

void OraclePortConfig::Validate() const {
  const auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!rate_ok(corruption.sub_rate) || !rate_ok(corruption.del_rate) ||
      !rate_ok(corruption.ins_rate) ||
      corruption.sub_rate + corruption.del_rate > 1.0) {
    throw std::invalid_argument("oracle port config: corruption rates must be in [0, 1] "
                                "with sub + del at most 1");
  }
  if (query_noise < 0.0) {
    throw std::invalid_argument("oracle port config: query_noise must be nonnegative");
  }
}

std::string SynthWord(int index) {
  if (index < 0 || index >= kVocabularySize) {
    throw std::invalid_argument("synth word: index out of range");
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "w%03d", index);
  return buf;
}

Segment TokenSpan(const Utterance& u, int token_index) {
  const int n = static_cast<int>(u.tokens.size());
  if (token_index < 0 || token_index >= n) {
    throw std::invalid_argument("token span: token index out of range");
  }
  const double width = (u.end - u.start) / n;
  return Segment(u.start + token_index * width, u.start + (token_index + 1) * width);
}

SynthMeeting Generate(const SynthConfig& cfg) {
  cfg.Validate();
  const int n = cfg.num_speakers;
  Rng rng(cfg.seed);

  // Profile pool: the true centroids first, then distractors, all
  // mutually separated by the cosine cap.
  const int pool = cfg.num_speakers + static_cast<int>(rng.Bounded(
                       static_cast<uint64_t>(kMaxPoolSize - n) + 1));
  std::vector<Embedding> pool_vectors;
  pool_vectors.reserve(pool);
  int attempts = 0;
  while (static_cast<int>(pool_vectors.size()) < pool) {
    if (++attempts > kRejectionCap) {
      throw std::runtime_error(
          "synthgen: centroid sampling failed after 10000 attempts "
          "(cosine cap too tight for this dimension)");
    }
    Embedding candidate(RandomUnitVector(&rng, cfg.embedding_dim));
    bool ok = true;
    for (const Embedding& e : pool_vectors) {
      if (candidate.Dot(e) > cfg.max_centroid_cosine) {
        ok = false;
        break;
      }
    }
    if (ok) pool_vectors.push_back(std::move(candidate));
  }

  // Timeline: speakers take turns; starts strictly increase.
  const bool overlapped = cfg.require_overlap && n >= 2;
  const int total = n * cfg.utterances_per_speaker;
  std::vector<Utterance> utterances;
  utterances.reserve(total);
  for (int t = 0; t < total; ++t) {
    double duration = 0.0;
    double start = 0.0;
    if (overlapped) {
      duration = rng.Uniform(kOverlapDurationLo, kOverlapDurationHi);
      if (t == 0) {
        start = rng.Uniform(0.0, kMaxInitialStart);
      } else {
        const Utterance& prev = utterances[t - 1];
        double lo = prev.start + cfg.min_start_gap;
        if (t >= 2) lo = std::max(lo, utterances[t - 2].end);
        const double hi = prev.end - kOverlapMargin;
        if (!(hi > lo + kTimeEps)) {
          throw std::runtime_error("synthgen: overlapped layout infeasible for config");
        }
        start = rng.Uniform(lo, hi);
      }
    } else {
      if (t == 0) {
        duration = rng.Uniform(kGapDurationLo, kGapDurationHi);
        start = rng.Uniform(0.0, kMaxInitialStart);
      } else {
        const double gap = rng.Uniform(kSilenceLo, kSilenceHi);
        duration = rng.Uniform(kGapDurationLo, kGapDurationHi);
        const Utterance& prev = utterances[t - 1];
        start = std::max(prev.end + gap, prev.start + cfg.min_start_gap);
      }
    }
    const int count = rng.UniformInt(kMinTokensPerUtterance, kMaxTokensPerUtterance);
    std::vector<Token> tokens;
    tokens.reserve(count);
    for (int i = 0; i < count; ++i) {
      tokens.emplace_back(SynthWord(static_cast<int>(rng.Bounded(kVocabularySize))));
    }
    utterances.emplace_back("spk" + std::to_string(t % n), start, start + duration,
                            std::move(tokens));
  }

  SynthMeeting sm;
  sm.config = cfg;
  sm.meeting.id = "synth-" + std::to_string(cfg.seed) + "-n" + std::to_string(n);
  sm.meeting.utterances = std::move(utterances);
  sm.meeting.num_speakers = n;
  sm.meeting.Validate();

  std::unordered_map<std::string, int> speaker_index;
  for (int i = 0; i < n; ++i) speaker_index["spk" + std::to_string(i)] = i;
  sm.centroids.assign(pool_vectors.begin(), pool_vectors.begin() + n);

  std::vector<Segment> spans;
  spans.reserve(total);
  for (const Utterance& u : sm.meeting.utterances) spans.push_back(SpanOf(u));
  sm.vad = UnionSpans(spans);

  std::vector<int> all_indices(total);
  for (int i = 0; i < total; ++i) all_indices[i] = i;
  AppendWindows(sm.vad, sm.meeting.utterances, all_indices, sm.centroids,
                speaker_index, cfg, &rng, &sm.true_embeddings);

  // Oracle separation: greedy two-coloring, stream 0 preferred. With at
  // most two concurrent utterances a conflict on both streams cannot
  // occur.
  for (int t = 0; t < total; ++t) {
    const Segment span = SpanOf(sm.meeting.utterances[t]);
    bool placed = false;
    for (int s = 0; s < 2 && !placed; ++s) {
      StreamTruth& st = sm.separated_truth[s];
      if (st.utterance_indices.empty() ||
          !span.Overlaps(SpanOf(sm.meeting.utterances[st.utterance_indices.back()]))) {
        st.utterance_indices.push_back(t);
        placed = true;
      }
    }
    if (!placed) {
      throw std::logic_error("synthgen: three concurrent utterances in separation");
    }
  }
  for (StreamTruth& st : sm.separated_truth) {
    std::vector<Segment> stream_spans;
    stream_spans.reserve(st.utterance_indices.size());
    for (int idx : st.utterance_indices) {
      stream_spans.push_back(SpanOf(sm.meeting.utterances[idx]));
    }
    st.vad = UnionSpans(std::move(stream_spans));
    AppendWindows(st.vad, sm.meeting.utterances, st.utterance_indices, sm.centroids,
                  speaker_index, cfg, &rng, &st.windows);
  }

  sm.oracle_profiles.profiles = std::move(pool_vectors);
  std::vector<std::string> labels;
  labels.reserve(pool);
  for (int i = 0; i < pool; ++i) {
    labels.push_back(i < n ? "spk" + std::to_string(i)
                           : "dist" + std::to_string(i - n));
  }
  sm.oracle_profiles.labels = std::move(labels);
  sm.oracle_profiles.Validate();
  return sm;
}

OraclePort::OraclePort(SynthMeeting meeting, OraclePortConfig cfg)
    : meeting_(std::move(meeting)), cfg_(cfg) {
  cfg_.Validate();
  all_indices_.resize(meeting_.meeting.utterances.size());
  for (size_t i = 0; i < all_indices_.size(); ++i) all_indices_[i] = static_cast<int>(i);
}

const std::vector<int>& OraclePort::AllowedFor(const AudioRef& audio) const {
  if (audio.uri == kAudioMixture) return all_indices_;
  if (audio.uri == kAudioStream0) return meeting_.separated_truth[0].utterance_indices;
  if (audio.uri == kAudioStream1) return meeting_.separated_truth[1].utterance_indices;
  throw std::runtime_error("oracle port: unknown audio ref '" + audio.uri + "'");
}

std::vector<int> OraclePort::UtterancesIn(const Segment& segment,
                                          const AudioRef& audio) const {
  std::vector<int> out;
  for (int idx : AllowedFor(audio)) {
    const Utterance& u = meeting_.meeting.utterances[idx];
    const double mid = 0.5 * (u.start + u.end);
    if (TimeLe(segment.start, mid) && TimeLt(mid, segment.end)) out.push_back(idx);
  }
  return out;
}

bool OraclePort::TokenOverlapsOther(int utterance_index, int token_index) const {
  const auto& utterances = meeting_.meeting.utterances;
  const Segment span = TokenSpan(utterances[utterance_index], token_index);
  for (size_t j = 0; j < utterances.size(); ++j) {
    if (static_cast<int>(j) == utterance_index) continue;
    if (span.Overlaps(SpanOf(utterances[j]))) return true;
  }
  return false;
}

std::vector<Token> OraclePort::Transcribe(const Segment& segment, const AudioRef& audio) {
  const std::vector<int> indices = UtterancesIn(segment, audio);
  Rng noise(MixSeed(MixSeed(cfg_.seed, kAsrNoiseTag), SegmentBits(segment)));
  const CorruptionParams& c = cfg_.corruption;
  std::vector<Token> out;
  for (int idx : indices) {
    const Utterance& u = meeting_.meeting.utterances[idx];
    for (int ti = 0; ti < static_cast<int>(u.tokens.size()); ++ti) {
      if (cfg_.mask_overlapped && TokenOverlapsOther(idx, ti)) continue;
      const double r = noise.Uniform();
      if (r < c.del_rate) continue;
      if (r < c.del_rate + c.sub_rate) {
        out.emplace_back(SynthWord(static_cast<int>(noise.Bounded(kVocabularySize))));
      } else {
        out.push_back(u.tokens[ti]);
      }
      if (noise.Bernoulli(c.ins_rate)) {
        out.emplace_back(SynthWord(static_cast<int>(noise.Bounded(kVocabularySize))));
      }
    }
  }
  return out;
}

SaAsrOutput OraclePort::SaTranscribe(const Segment& segment, const AudioRef& audio,
                                     const ProfileSet& profiles) {
  profiles.Validate();
  const std::vector<int> indices = UtterancesIn(segment, audio);
  SaAsrOutput out;
  if (indices.empty()) return out;

  std::vector<Utterance> subset;
  subset.reserve(indices.size());
  for (int idx : indices) subset.push_back(meeting_.meeting.utterances[idx]);
  std::unordered_map<std::string, int> speaker_index;
  for (int i = 0; i < meeting_.meeting.num_speakers; ++i) {
    speaker_index["spk" + std::to_string(i)] = i;
  }
  out.sequence = SerializeSot(subset, speaker_index);

  const size_t len = out.sequence.tokens.size();
  out.queries.assign(len, std::nullopt);
  out.betas.assign(len, {});
  Rng noise(MixSeed(MixSeed(cfg_.seed, kQueryNoiseTag), SegmentBits(segment)));
  for (size_t pos = 0; pos < len; ++pos) {
    if (out.sequence.tokens[pos].kind == SotToken::Kind::kWord) continue;
    const Embedding& c = meeting_.centroids[out.sequence.speakers[pos]];
    SpeakerQuery q;
    q.values = c.values();
    for (double& x : q.values) x += cfg_.query_noise * noise.Gaussian();
    q.Validate();
    out.betas[pos] = ProfileAttention(q, profiles).beta;
    out.queries[pos] = std::move(q);
  }
  return out;
}

OraclePortPair MakeOraclePorts(const SynthMeeting& sm, const OraclePortConfig& cfg) {
  OraclePortPair pair;
  pair.asr = std::make_unique<OraclePort>(sm, cfg);
  pair.sa_asr = std::make_unique<OraclePort>(sm, cfg);
  return pair;
}

PipelineInputs ToPipelineInputs(const SynthMeeting& sm) {
  PipelineInputs in;
  in.mixture.vad = sm.vad;
  in.mixture.embeddings = sm.true_embeddings;
  in.mixture.audio.uri = kAudioMixture;
  std::array<StreamInputs, 2> streams;
  for (int s = 0; s < 2; ++s) {
    streams[s].vad = sm.separated_truth[s].vad;
    streams[s].embeddings = sm.separated_truth[s].windows;
    streams[s].audio.uri = s == 0 ? kAudioStream0 : kAudioStream1;
  }
  in.separated = std::move(streams);
  return in;
}

}  // namespace sasr
