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

#include "sasr/sot.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sasr {

namespace {

std::invalid_argument PositionError(size_t pos, const std::string& what) {
  return std::invalid_argument("sot: position " + std::to_string(pos) + ": " + what);
}

}  // namespace

void SotSequence::Validate() const {
  if (tokens.size() != speakers.size()) {
    throw std::invalid_argument("sot: tokens and speakers differ in length (" +
                                std::to_string(tokens.size()) + " vs " +
                                std::to_string(speakers.size()) + ")");
  }
  if (tokens.empty()) throw std::invalid_argument("sot: empty sequence");
  bool in_run = false;
  int run_speaker = -1;
  for (size_t pos = 0; pos < tokens.size(); ++pos) {
    const SotToken& tok = tokens[pos];
    const bool last = pos + 1 == tokens.size();
    switch (tok.kind) {
      case SotToken::Kind::kWord:
        if (last) throw PositionError(pos, "missing end marker");
        if (!in_run) {
          in_run = true;
          run_speaker = speakers[pos];
        } else if (speakers[pos] != run_speaker) {
          throw PositionError(pos, "speaker index changes inside a run (" +
                                       std::to_string(run_speaker) + " then " +
                                       std::to_string(speakers[pos]) + ")");
        }
        break;
      case SotToken::Kind::kSpeakerChange:
        if (!in_run) {
          throw PositionError(pos, pos == 0 ? "sequence starts with a change marker"
                                            : "adjacent change markers");
        }
        if (last) throw PositionError(pos, "change marker at the final position");
        if (tokens[pos + 1].kind == SotToken::Kind::kEnd) {
          throw PositionError(pos, "change marker directly before the end marker");
        }
        in_run = false;
        break;
      case SotToken::Kind::kEnd:
        if (pos == 0) throw PositionError(pos, "sequence starts with the end marker");
        if (!last) throw PositionError(pos, "end marker before the final position");
        break;
    }
  }
}

std::vector<int> SotOrder(const std::vector<Utterance>& utterances) {
  std::vector<int> order(utterances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (TimeLt(utterances[a].start, utterances[b].start)) return true;
    if (TimeLt(utterances[b].start, utterances[a].start)) return false;
    return utterances[a].speaker < utterances[b].speaker;
  });
  return order;
}

SotSequence SerializeSot(
    const std::vector<Utterance>& utterances,
    const std::unordered_map<std::string, int>& speaker_index_of) {
  if (utterances.empty()) throw std::invalid_argument("serialize: no utterances");
  for (const auto& u : utterances) {
    u.Validate();
    if (!speaker_index_of.count(u.speaker)) {
      throw std::invalid_argument("serialize: unmapped speaker label " + u.speaker);
    }
  }
  const auto order = SotOrder(utterances);
  SotSequence seq;
  for (size_t i = 0; i < order.size(); ++i) {
    const Utterance& u = utterances[order[i]];
    const int idx = speaker_index_of.at(u.speaker);
    if (i > 0) {
      // The change marker closes the previous utterance.
      seq.tokens.push_back(SotToken::SpeakerChange());
      seq.speakers.push_back(seq.speakers.back());
    }
    for (const auto& t : u.tokens) {
      seq.tokens.push_back(SotToken::Word(t.text));
      seq.speakers.push_back(idx);
    }
  }
  seq.tokens.push_back(SotToken::End());
  seq.speakers.push_back(seq.speakers.back());
  return seq;
}

std::vector<SotRun> DeserializeSot(const SotSequence& seq) {
  seq.Validate();
  std::vector<SotRun> runs;
  bool in_run = false;
  for (size_t pos = 0; pos < seq.tokens.size(); ++pos) {
    const SotToken& tok = seq.tokens[pos];
    if (tok.kind != SotToken::Kind::kWord) {
      in_run = false;
      continue;
    }
    if (!in_run) {
      runs.push_back({seq.speakers[pos], {}});
      in_run = true;
    }
    runs.back().tokens.emplace_back(tok.text);
  }
  return runs;
}

std::string SotToString(const SotSequence& seq) {
  std::ostringstream out;
  for (size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i > 0) out << ' ';
    out << seq.tokens[i].text;
  }
  return out.str();
}

SotSequence SotFromString(const std::string& text) {
  std::istringstream in(text);
  SotSequence seq;
  std::string word;
  while (in >> word) {
    if (word == kScMarker) {
      seq.tokens.push_back(SotToken::SpeakerChange());
    } else if (word == kEosMarker) {
      seq.tokens.push_back(SotToken::End());
    } else {
      seq.tokens.push_back(SotToken::Word(word));
    }
    seq.speakers.push_back(-1);
  }
  return seq;
}

}  // namespace sasr
