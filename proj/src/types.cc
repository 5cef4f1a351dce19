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

#include "sasr/types.h"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sasr {

Token::Token(std::string t) : text(std::move(t)) {
  if (text.empty()) {
    throw std::invalid_argument("token: empty text");
  }
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("token: internal whitespace in \"" + text + "\"");
    }
  }
  if (text == kScMarker || text == kEosMarker) {
    throw std::invalid_argument("token: reserved marker string \"" + text + "\"");
  }
}

std::vector<Token> TokensFromWords(const std::string& space_separated) {
  std::vector<Token> tokens;
  std::istringstream in(space_separated);
  std::string word;
  while (in >> word) tokens.emplace_back(word);
  return tokens;
}

std::string WordsFromTokens(const std::vector<Token>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].text;
  }
  return out;
}

Utterance::Utterance(std::string spk, double s, double e, std::vector<Token> toks)
    : speaker(std::move(spk)), start(s), end(e), tokens(std::move(toks)) {
  Validate();
}

void Utterance::Validate() const {
  if (speaker.empty()) {
    throw std::invalid_argument("utterance: empty speaker label");
  }
  if (!(start >= 0.0)) {
    throw std::invalid_argument("utterance: field start must be >= 0 (speaker " +
                                speaker + ")");
  }
  if (!TimeLt(start, end)) {
    throw std::invalid_argument("utterance: field end must exceed start (speaker " +
                                speaker + ", start " + std::to_string(start) + ")");
  }
  if (tokens.empty()) {
    throw std::invalid_argument("utterance: field tokens must be non-empty (speaker " +
                                speaker + ")");
  }
}

int Meeting::CountDistinctSpeakers() const {
  std::set<std::string> labels;
  for (const auto& u : utterances) labels.insert(u.speaker);
  return static_cast<int>(labels.size());
}

void Meeting::Validate() const {
  if (utterances.empty()) {
    throw std::invalid_argument("meeting " + id + ": no utterances");
  }
  for (const auto& u : utterances) u.Validate();
  const int distinct = CountDistinctSpeakers();
  if (num_speakers != distinct) {
    throw std::invalid_argument(
        "meeting " + id + ": field num_speakers is " + std::to_string(num_speakers) +
        " but utterances carry " + std::to_string(distinct) + " distinct labels");
  }
}

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("embedding: empty vector");
  }
  double sq = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("embedding: non-finite entry");
    sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm < 1e-12) {
    throw std::invalid_argument("embedding: zero vector (cannot normalize)");
  }
  for (double& v : values_) v /= norm;
}

double Embedding::Dot(const Embedding& other) const {
  if (dim() != other.dim()) {
    throw std::invalid_argument("embedding: dimension mismatch (" +
                                std::to_string(dim()) + " vs " +
                                std::to_string(other.dim()) + ")");
  }
  double dot = 0.0;
  for (int i = 0; i < dim(); ++i) dot += values_[i] * other.values_[i];
  return dot;
}

double CosineSimilarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine: dimension mismatch");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na < 1e-24 || nb < 1e-24) {
    throw std::invalid_argument("cosine: zero-norm operand");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

void ProfileSet::Validate() const {
  if (profiles.empty()) {
    throw std::invalid_argument("profile set: K must be >= 1");
  }
  const int d = profiles.front().dim();
  for (const auto& p : profiles) {
    if (p.dim() != d) {
      throw std::invalid_argument("profile set: mixed embedding dimensions");
    }
  }
  if (labels && static_cast<int>(labels->size()) != size()) {
    throw std::invalid_argument("profile set: labels length differs from K");
  }
}

Segment::Segment(double s, double e) : start(s), end(e) {
  if (!(start >= 0.0)) {
    throw std::invalid_argument("segment: start must be >= 0");
  }
  if (!TimeLt(start, end)) {
    throw std::invalid_argument("segment: end must exceed start (start " +
                                std::to_string(start) + ", end " +
                                std::to_string(end) + ")");
  }
}

}  // namespace sasr
