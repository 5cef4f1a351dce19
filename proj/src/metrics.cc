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

#include "sasr/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "sasr/assignment.h"
#include "sasr/parallel.h"

namespace sasr {

namespace {

EditCounts PaddedCell(const std::vector<std::vector<EditCounts>>& real, int refs,
                      int hyps, const std::vector<long long>& ref_lens,
                      const std::vector<long long>& hyp_lens, int i, int j) {
  if (i < refs && j < hyps) return real[i][j];
  EditCounts c;
  if (i < refs) c.del = ref_lens[i];
  if (j < hyps) c.ins = hyp_lens[j];
  return c;
}

ErrorBreakdown FinishBreakdown(EditCounts counts, long long ref_words) {
  ErrorBreakdown out;
  out.substitutions = counts.sub;
  out.deletions = counts.del;
  out.insertions = counts.ins;
  out.ref_words = ref_words;
  if (ref_words > 0) {
    out.rate = static_cast<double>(out.total()) / static_cast<double>(ref_words);
  } else {
    out.rate = out.total() > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return out;
}

}  // namespace

EditCounts EditDistance(const std::vector<Token>& ref, const std::vector<Token>& hyp) {
  const int m = static_cast<int>(ref.size());
  const int n = static_cast<int>(hyp.size());
  std::vector<std::vector<int>> dist(m + 1, std::vector<int>(n + 1));
  for (int i = 0; i <= m; ++i) dist[i][0] = i;
  for (int j = 0; j <= n; ++j) dist[0][j] = j;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int sub = dist[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const int del = dist[i - 1][j] + 1;
      const int ins = dist[i][j - 1] + 1;
      dist[i][j] = std::min({sub, del, ins});
    }
  }

  EditCounts counts;
  int i = m, j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const int match_cost = ref[i - 1] == hyp[j - 1] ? 0 : 1;
      if (dist[i][j] == dist[i - 1][j - 1] + match_cost) {
        counts.sub += match_cost;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && dist[i][j] == dist[i - 1][j] + 1) {
      ++counts.del;
      --i;
      continue;
    }
    ++counts.ins;
    --j;
  }
  return counts;
}

std::vector<std::vector<EditCounts>> PairwiseEditCountsSerial(
    const std::vector<std::vector<Token>>& refs,
    const std::vector<std::vector<Token>>& hyps) {
  std::vector<std::vector<EditCounts>> out(refs.size(),
                                           std::vector<EditCounts>(hyps.size()));
  for (size_t i = 0; i < refs.size(); ++i) {
    for (size_t j = 0; j < hyps.size(); ++j) out[i][j] = EditDistance(refs[i], hyps[j]);
  }
  return out;
}

std::vector<std::vector<EditCounts>> PairwiseEditCounts(
    const std::vector<std::vector<Token>>& refs,
    const std::vector<std::vector<Token>>& hyps) {
  std::vector<std::vector<EditCounts>> out(refs.size(),
                                           std::vector<EditCounts>(hyps.size()));
  const int cells = static_cast<int>(refs.size() * hyps.size());
  if (cells == 0) return out;
  const int cols = static_cast<int>(hyps.size());
  ParallelFor(cells, [&](int cell) {
    const int i = cell / cols;
    const int j = cell % cols;
    out[i][j] = EditDistance(refs[i], hyps[j]);
  });
  return out;
}

std::vector<Token> NormalizeTokens(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    std::string s;
    s.reserve(t.text.size());
    for (unsigned char c : t.text) {
      if (std::ispunct(c)) continue;
      s.push_back(static_cast<char>(std::tolower(c)));
    }
    if (!s.empty()) out.emplace_back(std::move(s));
  }
  return out;
}

CpwerResult Cpwer(const SpeakerStreams& ref, const SpeakerStreams& hyp,
                  const ScoringConfig& cfg) {
  if (ref.empty()) throw std::invalid_argument("cpwer: empty reference");
  std::vector<std::vector<Token>> ref_tokens(ref.size());
  std::vector<std::vector<Token>> hyp_tokens(hyp.size());
  for (size_t i = 0; i < ref.size(); ++i) {
    ref_tokens[i] = cfg.normalize ? NormalizeTokens(ref[i].second) : ref[i].second;
  }
  for (size_t j = 0; j < hyp.size(); ++j) {
    hyp_tokens[j] = cfg.normalize ? NormalizeTokens(hyp[j].second) : hyp[j].second;
  }

  long long ref_words = 0;
  std::vector<long long> ref_lens(ref.size()), hyp_lens(hyp.size());
  for (size_t i = 0; i < ref.size(); ++i) {
    ref_lens[i] = static_cast<long long>(ref_tokens[i].size());
    ref_words += ref_lens[i];
  }
  for (size_t j = 0; j < hyp.size(); ++j) {
    hyp_lens[j] = static_cast<long long>(hyp_tokens[j].size());
  }
  if (ref_words == 0) throw std::invalid_argument("cpwer: reference has no words");

  const int refs = static_cast<int>(ref.size());
  const int hyps = static_cast<int>(hyp.size());
  const int side = std::max(refs, hyps);
  const auto pairwise = PairwiseEditCounts(ref_tokens, hyp_tokens);

  Matrix cost(side, side);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      cost(i, j) = static_cast<double>(
          PaddedCell(pairwise, refs, hyps, ref_lens, hyp_lens, i, j).total());
    }
  }
  const AssignmentResult assignment = SolveAssignment(cost);

  EditCounts counts;
  std::vector<int> hyp_to_ref_row(side, -1);
  for (int i = 0; i < side; ++i) {
    const int j = assignment.row_to_col[i];
    const EditCounts cell = PaddedCell(pairwise, refs, hyps, ref_lens, hyp_lens, i, j);
    counts.sub += cell.sub;
    counts.del += cell.del;
    counts.ins += cell.ins;
    if (j < hyps) hyp_to_ref_row[j] = i;
  }

  CpwerResult result;
  result.breakdown = FinishBreakdown(counts, ref_words);
  for (int j = 0; j < hyps; ++j) {
    const int i = hyp_to_ref_row[j];
    if (i >= 0 && i < refs) {
      result.mapping.hyp_to_ref.emplace_back(hyp[j].first, ref[i].first);
    } else {
      result.mapping.hyp_to_ref.emplace_back(hyp[j].first, std::nullopt);
    }
  }
  return result;
}

double Sce(const std::vector<int>& estimated, const std::vector<int>& actual) {
  if (estimated.empty() || actual.empty()) {
    throw std::invalid_argument("sce: empty input");
  }
  if (estimated.size() != actual.size()) {
    throw std::invalid_argument("sce: list lengths differ (" +
                                std::to_string(estimated.size()) + " vs " +
                                std::to_string(actual.size()) + ")");
  }
  double sum = 0.0;
  for (size_t i = 0; i < estimated.size(); ++i) {
    sum += std::abs(estimated[i] - actual[i]);
  }
  return sum / static_cast<double>(estimated.size());
}

SpeakerStreams StreamsFromUtterances(const std::vector<Utterance>& utterances) {
  std::vector<int> order(utterances.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return TimeLt(utterances[a].start, utterances[b].start);
  });
  std::map<std::string, std::vector<Token>> streams;
  for (int idx : order) {
    auto& stream = streams[utterances[idx].speaker];
    stream.insert(stream.end(), utterances[idx].tokens.begin(),
                  utterances[idx].tokens.end());
  }
  SpeakerStreams out;
  out.reserve(streams.size());
  for (auto& [label, tokens] : streams) out.emplace_back(label, std::move(tokens));
  return out;
}

ErrorBreakdown TimeConstrainedWer(const std::vector<Utterance>& ref,
                                  const std::vector<TimedTokens>& hyp,
                                  const ScoringConfig& cfg) {
  constexpr double kCollar = 0.5;
  std::vector<int> hyp_order(hyp.size());
  for (size_t i = 0; i < hyp.size(); ++i) hyp_order[i] = static_cast<int>(i);
  std::stable_sort(hyp_order.begin(), hyp_order.end(), [&](int a, int b) {
    return TimeLt(hyp[a].segment.start, hyp[b].segment.start);
  });

  // Reference utterances in chronological order, each routed to the
  // hypothesis segment with the largest collar-expanded time overlap.
  std::vector<int> ref_order(ref.size());
  for (size_t i = 0; i < ref.size(); ++i) ref_order[i] = static_cast<int>(i);
  std::stable_sort(ref_order.begin(), ref_order.end(), [&](int a, int b) {
    if (TimeLt(ref[a].start, ref[b].start)) return true;
    if (TimeLt(ref[b].start, ref[a].start)) return false;
    return ref[a].speaker < ref[b].speaker;
  });

  std::vector<std::vector<int>> assigned(hyp.size());
  EditCounts counts;
  long long ref_words = 0;
  for (int r : ref_order) {
    const auto tokens = cfg.normalize ? NormalizeTokens(ref[r].tokens) : ref[r].tokens;
    ref_words += static_cast<long long>(tokens.size());
    int best = -1;
    double best_overlap = 0.0;
    for (size_t rank = 0; rank < hyp_order.size(); ++rank) {
      const Segment& s = hyp[hyp_order[rank]].segment;
      const double lo = std::max(ref[r].start, s.start - kCollar);
      const double hi = std::min(ref[r].end, s.end + kCollar);
      const double overlap = hi - lo;
      if (overlap > best_overlap + kTimeEps) {
        best_overlap = overlap;
        best = hyp_order[rank];
      }
    }
    if (best < 0) {
      counts.del += static_cast<long long>(tokens.size());
    } else {
      assigned[best].push_back(r);
    }
  }

  for (size_t h = 0; h < hyp.size(); ++h) {
    std::vector<Token> ref_concat;
    for (int r : assigned[h]) {
      const auto tokens = cfg.normalize ? NormalizeTokens(ref[r].tokens) : ref[r].tokens;
      ref_concat.insert(ref_concat.end(), tokens.begin(), tokens.end());
    }
    const auto hyp_tokens =
        cfg.normalize ? NormalizeTokens(hyp[h].tokens) : hyp[h].tokens;
    const EditCounts cell = EditDistance(ref_concat, hyp_tokens);
    counts.sub += cell.sub;
    counts.del += cell.del;
    counts.ins += cell.ins;
  }
  return FinishBreakdown(counts, ref_words);
}

CorpusScore ScoreCorpus(const std::vector<Meeting>& refs,
                        const std::vector<Transcript>& hyps,
                        const ScoringConfig& cfg) {
  std::map<std::string, const Transcript*> hyp_by_id;
  for (const Transcript& t : hyps) hyp_by_id[t.id] = &t;

  CorpusScore score;
  EditCounts sum;
  long long ref_words = 0;
  std::vector<int> estimated, actual;
  for (const Meeting& ref : refs) {
    MeetingScore row;
    row.id = ref.id;
    row.actual_speakers = ref.num_speakers;
    const auto ref_streams = StreamsFromUtterances(ref.utterances);
    const auto it = hyp_by_id.find(ref.id);
    SpeakerStreams hyp_streams;
    if (it != hyp_by_id.end()) {
      hyp_streams = StreamsFromUtterances(it->second->utterances);
      row.estimated_speakers = it->second->num_speakers;
    }
    const CpwerResult result = Cpwer(ref_streams, hyp_streams, cfg);
    row.cpwer = result.breakdown;
    row.mapping = result.mapping;
    sum.sub += row.cpwer.substitutions;
    sum.del += row.cpwer.deletions;
    sum.ins += row.cpwer.insertions;
    ref_words += row.cpwer.ref_words;
    estimated.push_back(row.estimated_speakers);
    actual.push_back(row.actual_speakers);
    score.meetings.push_back(std::move(row));
  }
  if (score.meetings.empty()) {
    throw std::invalid_argument("score: no reference meetings");
  }
  score.overall = FinishBreakdown(sum, ref_words);
  score.sce = Sce(estimated, actual);
  return score;
}

}  // namespace sasr
