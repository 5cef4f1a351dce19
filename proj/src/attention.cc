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

#include "sasr/attention.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sasr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckDistribution(const std::vector<double>& probs, const char* what, size_t n) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw std::invalid_argument(std::string(what) + " " + std::to_string(n) +
                                  ": negative probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(what) + " " + std::to_string(n) +
                                ": probabilities sum to " + std::to_string(sum));
  }
}

}  // namespace

void SpeakerQuery::Validate() const {
  double norm_sq = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("query: non-finite entry");
    }
    norm_sq += v * v;
  }
  if (norm_sq < 1e-24) throw std::invalid_argument("query: zero norm");
}

AttentionWeights ProfileAttention(const SpeakerQuery& q, const ProfileSet& profiles) {
  q.Validate();
  profiles.Validate();
  const int k = profiles.size();
  const int dim = profiles.dim();
  if (static_cast<int>(q.values.size()) != dim) {
    throw std::invalid_argument("attention: query dimension " +
                                std::to_string(q.values.size()) +
                                " does not match profile dimension " +
                                std::to_string(dim));
  }

  std::vector<double> cosines(k);
  double max_cos = kNegInf;
  for (int i = 0; i < k; ++i) {
    cosines[i] = CosineSimilarity(q.values, profiles.profiles[i].values());
    max_cos = std::max(max_cos, cosines[i]);
  }

  AttentionWeights out;
  out.beta.resize(k);
  double denom = 0.0;
  for (int i = 0; i < k; ++i) {
    out.beta[i] = std::exp(cosines[i] - max_cos);
    denom += out.beta[i];
  }
  for (int i = 0; i < k; ++i) out.beta[i] /= denom;

  out.weighted_profile.assign(dim, 0.0);
  for (int i = 0; i < k; ++i) {
    const auto& d = profiles.profiles[i].values();
    for (int j = 0; j < dim; ++j) out.weighted_profile[j] += out.beta[i] * d[j];
  }
  return out;
}

JointLogProb ComputeJointLogProb(const std::vector<std::vector<double>>& token_dists,
                                 const std::vector<int>& token_ids,
                                 const std::vector<std::vector<double>>& speaker_betas,
                                 const std::vector<int>& speaker_ids) {
  const size_t n = token_dists.size();
  if (token_ids.size() != n || speaker_betas.size() != n || speaker_ids.size() != n) {
    throw std::invalid_argument("joint: list lengths differ");
  }
  JointLogProb out;
  for (size_t i = 0; i < n; ++i) {
    CheckDistribution(token_dists[i], "joint: token distribution", i);
    CheckDistribution(speaker_betas[i], "joint: speaker distribution", i);
    if (token_ids[i] < 0 || token_ids[i] >= static_cast<int>(token_dists[i].size())) {
      throw std::invalid_argument("joint: token id out of range at step " +
                                  std::to_string(i));
    }
    if (speaker_ids[i] < 0 ||
        speaker_ids[i] >= static_cast<int>(speaker_betas[i].size())) {
      throw std::invalid_argument("joint: speaker id out of range at step " +
                                  std::to_string(i));
    }
    const double p_token = token_dists[i][token_ids[i]];
    const double p_speaker = speaker_betas[i][speaker_ids[i]];
    if (p_token == 0.0 || p_speaker == 0.0) {
      out.zero_prob = true;
      out.value = kNegInf;
      continue;
    }
    out.value += std::log(p_token) + std::log(p_speaker);
  }
  return out;
}

std::vector<int> DedupDecode(const std::vector<std::vector<double>>& posteriors) {
  const int u_count = static_cast<int>(posteriors.size());
  if (u_count == 0) throw std::invalid_argument("dedup: no posteriors");
  const int k = static_cast<int>(posteriors.front().size());
  if (k < 1) throw std::invalid_argument("dedup: empty posterior row");
  for (size_t u = 0; u < posteriors.size(); ++u) {
    if (static_cast<int>(posteriors[u].size()) != k) {
      throw std::invalid_argument("dedup: ragged posterior rows");
    }
    CheckDistribution(posteriors[u], "dedup: posterior", u);
  }
  if (u_count >= 2 && k == 1) {
    throw std::invalid_argument(
        "dedup: infeasible (one speaker, consecutive utterances must differ)");
  }

  // dp[u][s]: best achievable log-probability of the suffix starting at
  // utterance u with speaker s.
  std::vector<std::vector<double>> dp(u_count, std::vector<double>(k));
  for (int s = 0; s < k; ++s) dp[u_count - 1][s] = std::log(posteriors[u_count - 1][s]);
  for (int u = u_count - 2; u >= 0; --u) {
    for (int s = 0; s < k; ++s) {
      double best = kNegInf;
      for (int t = 0; t < k; ++t) {
        if (t == s) continue;
        best = std::max(best, dp[u + 1][t]);
      }
      dp[u][s] = std::log(posteriors[u][s]) + best;
    }
  }

  std::vector<int> sequence(u_count);
  int prev = -1;
  for (int u = 0; u < u_count; ++u) {
    int arg = -1;
    double best = kNegInf;
    for (int s = 0; s < k; ++s) {
      if (s == prev) continue;
      if (arg < 0 || dp[u][s] > best) {
        best = dp[u][s];
        arg = s;
      }
    }
    sequence[u] = arg;
    prev = arg;
  }
  return sequence;
}

std::vector<std::vector<double>> UtterancePosteriorsFromSot(
    const SotSequence& seq, const std::vector<std::optional<SpeakerQuery>>& queries,
    const ProfileSet& profiles) {
  seq.Validate();
  if (queries.size() != seq.tokens.size()) {
    throw std::invalid_argument("posteriors: queries length " +
                                std::to_string(queries.size()) +
                                " does not match sequence length " +
                                std::to_string(seq.tokens.size()));
  }
  std::vector<std::vector<double>> out;
  for (size_t pos = 0; pos < seq.tokens.size(); ++pos) {
    if (seq.tokens[pos].kind == SotToken::Kind::kWord) continue;
    if (!queries[pos]) {
      throw std::invalid_argument("posteriors: missing query at position " +
                                  std::to_string(pos));
    }
    out.push_back(ProfileAttention(*queries[pos], profiles).beta);
  }
  return out;
}

}  // namespace sasr
