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

#ifndef SASR_SOT_H_
#define SASR_SOT_H_

// Serialized-output codec. A set of utterances becomes one flat token
// stream in first-in-first-out order of start time, with a speaker-change
// marker between consecutive utterances and an end marker after the last:
//
//   w w w <sc> w w <sc> w <eos>
//
// Each position also carries a speaker index: word positions take the
// index of their utterance, a change marker takes the index of the
// utterance it closes, and the end marker takes the final utterance's
// index. Ties on start time order by speaker label. Adjacent runs may
// share a speaker; the marker records an utterance boundary, not
// necessarily a label change.

#include <string>
#include <unordered_map>
#include <vector>

#include "sasr/types.h"

namespace sasr {

// One element of a serialized stream: a word or a marker.
struct SotToken {
  enum class Kind { kWord, kSpeakerChange, kEnd };

  Kind kind = Kind::kWord;
  std::string text;

  static SotToken Word(std::string w) { return {Kind::kWord, std::move(w)}; }
  static SotToken SpeakerChange() { return {Kind::kSpeakerChange, kScMarker}; }
  static SotToken End() { return {Kind::kEnd, kEosMarker}; }

  bool operator==(const SotToken& other) const {
    return kind == other.kind && text == other.text;
  }
};

// A serialized stream with its parallel per-position speaker indices.
struct SotSequence {
  std::vector<SotToken> tokens;
  std::vector<int> speakers;

  // Checks list lengths, marker placement (single final end marker, no
  // adjacent change markers, no change marker before the end marker,
  // no leading marker) and that every maximal run of words carries one
  // speaker index. Throws std::invalid_argument naming the position.
  void Validate() const;
};

// A maximal run of words between markers.
struct SotRun {
  int speaker = 0;
  std::vector<Token> tokens;
};

// Serializes utterances in FIFO order (start time, then speaker label).
// Every utterance must be valid with a mapped speaker label. N
// utterances produce N-1 change markers plus the end marker.
SotSequence SerializeSot(const std::vector<Utterance>& utterances,
                         const std::unordered_map<std::string, int>& speaker_index_of);

// Splits a validated stream back into runs. The inverse of SerializeSot
// up to start times: run order, tokens, and speaker indices round-trip.
std::vector<SotRun> DeserializeSot(const SotSequence& seq);

// The FIFO order used by SerializeSot: indices into `utterances` sorted
// by (start, speaker label), stable on full ties.
std::vector<int> SotOrder(const std::vector<Utterance>& utterances);

// Text rendering for logs: token texts joined by single spaces, markers
// as their literal strings. SotFromString parses words back but carries
// no speaker indices (they are filled with -1).
std::string SotToString(const SotSequence& seq);
SotSequence SotFromString(const std::string& text);

}  // namespace sasr

#endif  // SASR_SOT_H_
