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

#include "sasr/segmenter.h"

#include <stdexcept>
#include <string>

namespace sasr {

void SegmenterConfig::Validate() const {
  if (max_gap <= 0.0) {
    throw std::invalid_argument("segmenter: max_gap must be positive, got " +
                                std::to_string(max_gap));
  }
  if (max_duration <= max_gap) {
    throw std::invalid_argument("segmenter: max_duration (" +
                                std::to_string(max_duration) +
                                ") must exceed max_gap (" + std::to_string(max_gap) +
                                ")");
  }
}

std::vector<Segment> MergeSegments(const std::vector<Segment>& vad,
                                   const SegmenterConfig& cfg) {
  cfg.Validate();
  for (size_t i = 1; i < vad.size(); ++i) {
    if (TimeLt(vad[i].start, vad[i - 1].start)) {
      throw std::invalid_argument("merge: segments unsorted at index " +
                                  std::to_string(i));
    }
    if (TimeLt(vad[i].start, vad[i - 1].end)) {
      throw std::invalid_argument("merge: segments overlap at index " +
                                  std::to_string(i));
    }
  }
  std::vector<Segment> out;
  for (const Segment& seg : vad) {
    if (!out.empty()) {
      const double gap = seg.start - out.back().end;
      const double span = seg.end - out.back().start;
      if (TimeLt(gap, cfg.max_gap) && TimeLt(span, cfg.max_duration)) {
        out.back().end = seg.end;
        continue;
      }
    }
    out.push_back(seg);
  }
  return out;
}

std::vector<Segment> SplitLong(const Segment& seg, const SegmenterConfig& cfg) {
  cfg.Validate();
  if (TimeLe(seg.duration(), cfg.max_duration)) return {seg};
  std::vector<Segment> out;
  double cursor = seg.start;
  while (TimeLt(cursor + cfg.max_duration, seg.end)) {
    out.emplace_back(cursor, cursor + cfg.max_duration);
    cursor += cfg.max_duration;
  }
  out.emplace_back(cursor, seg.end);
  return out;
}

std::vector<Segment> MergeAndSplit(const std::vector<Segment>& vad,
                                   const SegmenterConfig& cfg) {
  std::vector<Segment> out;
  for (const Segment& merged : MergeSegments(vad, cfg)) {
    for (const Segment& piece : SplitLong(merged, cfg)) out.push_back(piece);
  }
  return out;
}

}  // namespace sasr
