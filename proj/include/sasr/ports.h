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

#ifndef SASR_PORTS_H_
#define SASR_PORTS_H_

// Recognizer ports: the seam where neural models would sit. Pipelines
// call these with a time segment and an opaque audio handle; mock and
// file-backed implementations supply the outputs.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sasr/attention.h"
#include "sasr/sot.h"
#include "sasr/types.h"

namespace sasr {

// Opaque handle to the recording; mock ports ignore it, adapters for
// real models may dereference it.
struct AudioRef {
  std::string uri;
};

// What a speaker-attributed recognizer returns for one segment: the
// serialized stream, a query per position where the model stored one
// (markers at minimum), and the attention weights at those positions.
struct SaAsrOutput {
  SotSequence sequence;
  std::vector<std::optional<SpeakerQuery>> queries;
  std::vector<std::vector<double>> betas;
};

class RecognizerPort {
 public:
  virtual ~RecognizerPort() = default;

  // Single-talker recognition of one segment.
  virtual std::vector<Token> Transcribe(const Segment& segment,
                                        const AudioRef& audio) = 0;

  // Speaker-attributed recognition against a profile inventory.
  virtual SaAsrOutput SaTranscribe(const Segment& segment, const AudioRef& audio,
                                   const ProfileSet& profiles) = 0;

  // Ports that keep mutable state may opt out of concurrent use across
  // meetings.
  virtual bool SafeForConcurrentUse() const { return true; }
};

// Replays recognizer outputs recorded in files, keyed by segment times
// rounded to the millisecond.
//
// <dir>/asr.jsonl lines:   {"start": s, "end": e, "words": "a b c"}
// <dir>/saasr.jsonl lines: {"start": s, "end": e, "sot": "a <sc> b <eos>",
//                           "speakers": [0, 0, 1, 1],
//                           "queries": [{"pos": 1, "vector": [...]}, ...]}
//
// Betas are recomputed from the stored queries against the profile set
// handed in by the pipeline. Missing segments raise std::runtime_error.
class FilePort : public RecognizerPort {
 public:
  explicit FilePort(const std::string& dir);

  std::vector<Token> Transcribe(const Segment& segment, const AudioRef& audio) override;
  SaAsrOutput SaTranscribe(const Segment& segment, const AudioRef& audio,
                           const ProfileSet& profiles) override;

 private:
  struct SaEntry {
    SotSequence sequence;
    std::vector<std::optional<SpeakerQuery>> queries;
  };

  std::map<std::string, std::vector<Token>> asr_;
  std::map<std::string, SaEntry> saasr_;
};

// The millisecond-rounded lookup key used by FilePort.
std::string SegmentKey(const Segment& segment);

}  // namespace sasr

#endif  // SASR_PORTS_H_
