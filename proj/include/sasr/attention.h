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

#ifndef SASR_ATTENTION_H_
#define SASR_ATTENTION_H_

// Speaker-side numeric core: cosine-softmax attention of a query over a
// profile inventory, joint token/speaker log-probability scoring, and
// the deduplication-constrained speaker decoding that forbids one
// speaker on consecutive utterances.

#include <optional>
#include <vector>

#include "sasr/sot.h"
#include "sasr/types.h"

namespace sasr {

// A raw (not necessarily unit-norm) speaker query vector.
struct SpeakerQuery {
  std::vector<double> values;

  // Throws std::invalid_argument on non-finite entries or zero norm.
  void Validate() const;
};

struct AttentionWeights {
  // beta[k] = exp(cos(q, d_k)) / sum_j exp(cos(q, d_j)); sums to 1.
  std::vector<double> beta;
  // Convex combination sum_k beta[k] * d_k, kept as a raw vector: a
  // mixture of unit vectors is generally not unit-norm itself.
  std::vector<double> weighted_profile;
};

AttentionWeights ProfileAttention(const SpeakerQuery& q, const ProfileSet& profiles);

struct JointLogProb {
  double value = 0.0;
  // Set when some selected probability is exactly zero (value is then
  // -infinity).
  bool zero_prob = false;
};

// Sum over steps of log token_dists[n][token_ids[n]] plus
// log speaker_betas[n][speaker_ids[n]]. All four lists must share one
// length; distributions must be nonnegative and sum to 1 within 1e-9.
JointLogProb ComputeJointLogProb(const std::vector<std::vector<double>>& token_dists,
                                 const std::vector<int>& token_ids,
                                 const std::vector<std::vector<double>>& speaker_betas,
                                 const std::vector<int>& speaker_ids);

// Maximizes the product of per-utterance posteriors subject to
// consecutive utterances taking distinct speakers. Exact dynamic
// program in the log domain, O(U * K^2); ties resolve to the lowest
// speaker index step by step, which yields the lexicographically
// smallest maximizing sequence. Two or more utterances with K = 1 is
// infeasible and throws std::invalid_argument.
std::vector<int> DedupDecode(const std::vector<std::vector<double>>& posteriors);

// One posterior per maximal run of a serialized sequence, computed by
// ProfileAttention on the query stored at the run's closing marker
// position. queries is parallel to seq.tokens; a missing query at a
// marker position throws std::invalid_argument naming the position.
std::vector<std::vector<double>> UtterancePosteriorsFromSot(
    const SotSequence& seq, const std::vector<std::optional<SpeakerQuery>>& queries,
    const ProfileSet& profiles);

}  // namespace sasr

#endif  // SASR_ATTENTION_H_
