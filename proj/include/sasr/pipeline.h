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

#ifndef SASR_PIPELINE_H_
#define SASR_PIPELINE_H_

// The four speaker-attributed ASR systems, orchestrated over injected
// recognizer ports.
//
//   M1: clustering-based diarization on mixture window embeddings,
//       segment-majority labeling, single-talker ASR per segment.
//   M2: M1's recipe over two separated streams with pooled clustering;
//       clusters far from every M1 centroid are treated as separation
//       leakage and dropped with their segments.
//   J1: end-to-end SA-ASR fed dummy profiles; the per-utterance speaker
//       queries are clustered across the meeting.
//   J2: end-to-end SA-ASR fed M1's centroids as the profile inventory;
//       speakers are decoded per segment under the no-consecutive-
//       repeat constraint.
//
// Segments inside a meeting are processed sequentially (clustering
// needs the whole meeting's evidence); callers may run distinct
// meetings in parallel when the port allows it.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sasr/ports.h"
#include "sasr/segmenter.h"
#include "sasr/types.h"

namespace sasr {

// Voice activity, sliding-window speaker embeddings, and the audio
// handle for one input stream.
struct StreamInputs {
  std::vector<Segment> vad;
  std::vector<std::pair<Segment, Embedding>> embeddings;
  AudioRef audio;
};

struct PipelineInputs {
  StreamInputs mixture;
  // Two separated streams, required by M2 only.
  std::optional<std::array<StreamInputs, 2>> separated;

  // Every embedding window must lie within some VAD segment, allowing a
  // 0.1 s collar. Throws std::invalid_argument otherwise.
  void Validate() const;
};

struct PipelineConfig {
  SegmenterConfig segmenter;       // 1.0 s merge gap, 20 s duration cap
  int max_speakers = 8;
  double leakage_threshold = 0.05;
  uint64_t seed = 17;              // clustering and dummy profile seed
  int num_dummy_profiles = 100;
  int embedding_dim = 128;         // dummy profile dimension

  void Validate() const;
};

// Reads a JSON config file; absent keys keep their defaults, unknown
// keys are rejected. PipelineConfigJson renders the full snapshot.
PipelineConfig LoadPipelineConfig(const std::string& path);
std::string PipelineConfigJson(const PipelineConfig& cfg);

struct TranscriptEntry {
  int label = 0;  // cluster or profile index in [0, num_speakers)
  Segment segment;
  std::vector<Token> tokens;
};

struct AttributedTranscript {
  std::vector<TranscriptEntry> entries;
  int num_speakers = 0;

  void Validate() const;
};

struct M1Result {
  AttributedTranscript transcript;
  // Cluster centroids, reused by M2's leakage filter and as J2's
  // profile inventory.
  std::vector<Embedding> centroids;
};

// Port failures propagate as std::runtime_error identifying the
// offending segment. All four systems only emit segments lying within
// the union of their input VAD and are deterministic given cfg.
M1Result RunM1(const PipelineInputs& inputs, RecognizerPort& asr,
               const PipelineConfig& cfg);

// Requires separated streams and M1 centroids; returns an empty
// transcript when both streams carry no speech.
AttributedTranscript RunM2(const PipelineInputs& inputs, RecognizerPort& asr,
                           const std::vector<Embedding>& m1_centroids,
                           const PipelineConfig& cfg);

AttributedTranscript RunJ1(const PipelineInputs& inputs, RecognizerPort& sa_asr,
                           const ProfileSet& dummy_profiles,
                           const PipelineConfig& cfg);

AttributedTranscript RunJ2(const PipelineInputs& inputs, RecognizerPort& sa_asr,
                           const std::vector<Embedding>& m1_centroids,
                           const PipelineConfig& cfg);

// Fixed, speaker-uninformative random unit vectors for J1.
ProfileSet MakeDummyProfiles(int count, int dim, uint64_t seed);

// Meeting view for scoring and serialization: labels become "c<label>"
// speakers; num_speakers counts the labels actually used.
Meeting TranscriptToMeeting(const AttributedTranscript& t,
                            const std::string& meeting_id);

}  // namespace sasr

#endif  // SASR_PIPELINE_H_
