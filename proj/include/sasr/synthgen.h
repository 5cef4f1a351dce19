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

#ifndef SASR_SYNTHGEN_H_
#define SASR_SYNTHGEN_H_

// Deterministic synthetic meetings: token streams, overlap-controlled
// timing, planted speaker embeddings on the unit sphere, a profile pool
// with distractors, an oracle two-stream separation, and mock
// recognizer ports replaying the ground truth with seeded noise.
// Everything is a pure function of the config, so a recorded config
// reproduces a meeting bit for bit.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sasr/ports.h"
#include "sasr/types.h"

namespace sasr {

struct SynthConfig {
  int num_speakers = 2;           // N in [1, 5]
  uint64_t seed = 1;
  double min_start_gap = 0.5;     // consecutive starts differ by at least this
  bool require_overlap = true;    // overlapped layout; needs N >= 2, else ignored
  double embedding_noise = 0.01;  // per-coordinate noise around the centroid
  int utterances_per_speaker = 4;
  int embedding_dim = 128;
  double max_centroid_cosine = 0.25;  // planted speaker separation
  double window_period = 0.75;
  double window_length = 1.5;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

// One side of the oracle two-stream separation.
struct StreamTruth {
  std::vector<int> utterance_indices;  // into SynthMeeting::meeting.utterances
  std::vector<Segment> vad;
  std::vector<std::pair<Segment, Embedding>> windows;
};

struct SynthMeeting {
  Meeting meeting;
  std::vector<Segment> vad;  // union of utterance spans
  std::vector<std::pair<Segment, Embedding>> true_embeddings;
  ProfileSet oracle_profiles;        // true centroids first, then distractors
  std::array<StreamTruth, 2> separated_truth;
  std::vector<Embedding> centroids;  // planted per-speaker centroids, label order
  SynthConfig config;
};

// Pure function of cfg. Speakers take turns in round-robin order; start
// times are drawn so consecutive starts differ by at least min_start_gap
// and, in overlapped layouts, every utterance overlaps a neighbor while
// at most two run concurrently. Throws std::runtime_error when centroid
// rejection sampling fails after 10000 attempts.
SynthMeeting Generate(const SynthConfig& cfg);

// The synthetic vocabulary (1000 words) and the uniform-split token
// timing used by the oracle ports.
std::string SynthWord(int index);
Segment TokenSpan(const Utterance& u, int token_index);

// Audio handles a generated meeting's ports understand.
inline constexpr const char* kAudioMixture = "synth:mixture";
inline constexpr const char* kAudioStream0 = "synth:stream0";
inline constexpr const char* kAudioStream1 = "synth:stream1";

struct CorruptionParams {
  double sub_rate = 0.0;
  double del_rate = 0.0;
  double ins_rate = 0.0;
};

struct OraclePortConfig {
  CorruptionParams corruption;  // applied to Transcribe only
  uint64_t seed = 1;
  // Transcribe drops tokens whose time span intersects another
  // utterance, modeling a single-stream recognizer losing overlapped
  // speech. SaTranscribe is unaffected.
  bool mask_overlapped = false;
  double query_noise = 0.01;  // per-coordinate noise on marker queries

  void Validate() const;
};

// Replays the ground truth of one synthetic meeting. Utterances belong
// to the segment containing their midpoint, so each is reported exactly
// once across a segment cover; a segment holding no utterance midpoint
// yields empty output. Noise draws come from a substream keyed by the
// segment times, independent of call order. The audio handle selects
// the mixture or one separated stream.
class OraclePort : public RecognizerPort {
 public:
  OraclePort(SynthMeeting meeting, OraclePortConfig cfg);

  std::vector<Token> Transcribe(const Segment& segment, const AudioRef& audio) override;
  SaAsrOutput SaTranscribe(const Segment& segment, const AudioRef& audio,
                           const ProfileSet& profiles) override;

 private:
  const std::vector<int>& AllowedFor(const AudioRef& audio) const;
  std::vector<int> UtterancesIn(const Segment& segment, const AudioRef& audio) const;
  bool TokenOverlapsOther(int utterance_index, int token_index) const;

  SynthMeeting meeting_;
  OraclePortConfig cfg_;
  std::vector<int> all_indices_;
};

// The single-talker port and the speaker-attributed port for one
// meeting, sharing one noise configuration.
struct OraclePortPair {
  std::unique_ptr<RecognizerPort> asr;
  std::unique_ptr<RecognizerPort> sa_asr;
};

OraclePortPair MakeOraclePorts(const SynthMeeting& sm, const OraclePortConfig& cfg);

// Pipeline input assembly from a generated meeting (defined with the
// pipeline types).
struct PipelineInputs;
PipelineInputs ToPipelineInputs(const SynthMeeting& sm);

}  // namespace sasr

#endif  // SASR_SYNTHGEN_H_
