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

#ifndef SASR_SEGMENTER_H_
#define SASR_SEGMENTER_H_

// Pre-recognition segment shaping shared by every pipeline: short silence
// gaps are bridged as long as the bridged span stays under a duration
// cap, then anything still over the cap is cut into fixed-size windows.

#include <vector>

#include "sasr/types.h"

namespace sasr {

struct SegmenterConfig {
  double max_gap = 1.0;
  double max_duration = 20.0;

  // Throws std::invalid_argument unless max_gap > 0 and
  // max_duration > max_gap.
  void Validate() const;
};

// Greedy left-to-right merge: a segment joins the current group while
// the silence gap before it is < max_gap and the merged span (end minus
// group start, silences included) stays < max_duration. Both bounds are
// strict. Input must be sorted by start and non-overlapping; throws
// std::invalid_argument otherwise.
std::vector<Segment> MergeSegments(const std::vector<Segment>& vad,
                                   const SegmenterConfig& cfg);

// Splits one segment into consecutive windows of exactly max_duration
// plus a final remainder; segments at or under the cap pass through.
std::vector<Segment> SplitLong(const Segment& seg, const SegmenterConfig& cfg);

// MergeSegments followed by SplitLong on each element.
std::vector<Segment> MergeAndSplit(const std::vector<Segment>& vad,
                                   const SegmenterConfig& cfg);

}  // namespace sasr

#endif  // SASR_SEGMENTER_H_
