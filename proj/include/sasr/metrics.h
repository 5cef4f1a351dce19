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

#ifndef SASR_METRICS_H_
#define SASR_METRICS_H_

// Scoring: word-level edit distance, speaker-attributed cpWER through an
// exact assignment solver, speaker counting error, and a time-
// constrained diagnostic WER.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sasr/transcript_io.h"
#include "sasr/types.h"

namespace sasr {

struct EditCounts {
  long long sub = 0;
  long long del = 0;
  long long ins = 0;

  long long total() const { return sub + del + ins; }
  bool operator==(const EditCounts& other) const {
    return sub == other.sub && del == other.del && ins == other.ins;
  }
};

// Minimal-cost word alignment with unit costs. The backtrace resolves
// cost ties in the fixed order substitution/match, then deletion, then
// insertion, so the split is deterministic.
EditCounts EditDistance(const std::vector<Token>& ref, const std::vector<Token>& hyp);

// All-pairs edit counts between ref and hyp streams; the building block
// of the cpWER cost matrix. The parallel version distributes (ref, hyp)
// pairs across threads; each cell is written once, so it matches the
// serial reference bitwise.
std::vector<std::vector<EditCounts>> PairwiseEditCounts(
    const std::vector<std::vector<Token>>& refs,
    const std::vector<std::vector<Token>>& hyps);
std::vector<std::vector<EditCounts>> PairwiseEditCountsSerial(
    const std::vector<std::vector<Token>>& refs,
    const std::vector<std::vector<Token>>& hyps);

struct ErrorBreakdown {
  long long substitutions = 0;
  long long deletions = 0;
  long long insertions = 0;
  long long ref_words = 0;
  double rate = 0.0;

  long long total() const { return substitutions + deletions + insertions; }
};

// hyp label -> matched ref label, or nullopt for an unmatched hyp
// speaker, in hyp stream order.
struct SpeakerMapping {
  std::vector<std::pair<std::string, std::optional<std::string>>> hyp_to_ref;
};

struct ScoringConfig {
  // Lowercase and strip punctuation characters before scoring; tokens
  // that become empty are dropped.
  bool normalize = true;
};

// One concatenated word stream per speaker, label first.
using SpeakerStreams = std::vector<std::pair<std::string, std::vector<Token>>>;

struct CpwerResult {
  ErrorBreakdown breakdown;
  SpeakerMapping mapping;
};

// Minimum over injective hyp-to-ref stream assignments of the summed
// edit distances; unmatched ref streams count as full deletions and
// unmatched hyp streams as full insertions. Solved exactly on a square
// cost matrix padded with empty streams. The rate divides by the total
// reference word count, which must be positive.
CpwerResult Cpwer(const SpeakerStreams& ref, const SpeakerStreams& hyp,
                  const ScoringConfig& cfg = {});

// Mean absolute difference of per-meeting speaker counts.
double Sce(const std::vector<int>& estimated, const std::vector<int>& actual);

struct TimedTokens {
  Segment segment;
  std::vector<Token> tokens;
};

// Speaker-agnostic WER where each reference utterance may only align
// inside the hypothesis segment with the largest time overlap (segments
// expanded by a 0.5 s collar; ties to the earlier segment). Reference
// utterances overlapping no segment count as deletions. With an empty
// reference the rate is 0 when error-free and infinity otherwise.
ErrorBreakdown TimeConstrainedWer(const std::vector<Utterance>& ref,
                                  const std::vector<TimedTokens>& hyp,
                                  const ScoringConfig& cfg = {});

// Lowercases ASCII letters and removes punctuation characters; tokens
// left empty are dropped.
std::vector<Token> NormalizeTokens(const std::vector<Token>& tokens);

// Per-speaker chronological concatenation, streams ordered by label.
SpeakerStreams StreamsFromUtterances(const std::vector<Utterance>& utterances);

struct MeetingScore {
  std::string id;
  ErrorBreakdown cpwer;
  SpeakerMapping mapping;
  int estimated_speakers = 0;
  int actual_speakers = 0;
};

struct CorpusScore {
  std::vector<MeetingScore> meetings;
  ErrorBreakdown overall;
  double sce = 0.0;
};

// Scores hypothesis transcripts against reference meetings, matched by
// id. A reference meeting with no hypothesis scores as full deletions
// with an estimated count of zero; hypothesis meetings without a
// reference are ignored.
CorpusScore ScoreCorpus(const std::vector<Meeting>& refs,
                        const std::vector<Transcript>& hyps,
                        const ScoringConfig& cfg = {});

}  // namespace sasr

#endif  // SASR_METRICS_H_
