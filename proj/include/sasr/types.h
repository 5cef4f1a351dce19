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

#ifndef SASR_TYPES_H_
#define SASR_TYPES_H_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace sasr {

// Reserved marker strings; a Token may never equal either of them.
inline constexpr const char* kScMarker = "<sc>";
inline constexpr const char* kEosMarker = "<eos>";

// All time comparisons in this toolkit share one tolerance. Annotations
// are centisecond-scale, so 1e-9 s is safely below anything meaningful.
inline constexpr double kTimeEps = 1e-9;

inline bool TimeLt(double a, double b) { return a < b - kTimeEps; }
inline bool TimeLe(double a, double b) { return a <= b + kTimeEps; }
inline bool TimeEq(double a, double b) { return std::abs(a - b) <= kTimeEps; }

// One word. Non-empty, no internal whitespace, never a marker string.
struct Token {
  std::string text;

  Token() = default;
  explicit Token(std::string t);

  bool operator==(const Token& other) const { return text == other.text; }
  bool operator!=(const Token& other) const { return text != other.text; }
};

std::vector<Token> TokensFromWords(const std::string& space_separated);
std::string WordsFromTokens(const std::vector<Token>& tokens);

// A speaker-labeled, time-stamped token sequence.
struct Utterance {
  std::string speaker;
  double start = 0.0;
  double end = 0.0;
  std::vector<Token> tokens;

  Utterance() = default;
  Utterance(std::string spk, double s, double e, std::vector<Token> toks);

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

struct Meeting {
  std::string id;
  std::vector<Utterance> utterances;
  int num_speakers = 0;

  // Checks utterance validity and that num_speakers matches the number
  // of distinct speaker labels.
  void Validate() const;

  int CountDistinctSpeakers() const;
};

// Unit-norm speaker vector. Construction normalizes and rejects zero
// input; every embedding in the toolkit has Euclidean norm 1 within 1e-6.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int dim() const { return static_cast<int>(values_.size()); }

  double Dot(const Embedding& other) const;

 private:
  std::vector<double> values_;
};

double CosineSimilarity(const std::vector<double>& a,
                        const std::vector<double>& b);

// Ordered speaker profile inventory D. K >= 1, one shared dimension.
struct ProfileSet {
  std::vector<Embedding> profiles;
  std::optional<std::vector<std::string>> labels;

  int size() const { return static_cast<int>(profiles.size()); }
  int dim() const { return profiles.empty() ? 0 : profiles.front().dim(); }

  void Validate() const;
};

// Time span carrier for VAD output and derived segments.
struct Segment {
  double start = 0.0;
  double end = 0.0;

  Segment() = default;
  Segment(double s, double e);

  double duration() const { return end - start; }
  double midpoint() const { return 0.5 * (start + end); }

  bool Contains(double t) const { return t >= start - kTimeEps && t < end + kTimeEps; }
  bool Overlaps(const Segment& other) const {
    return TimeLt(start, other.end) && TimeLt(other.start, end);
  }
};

}  // namespace sasr

#endif  // SASR_TYPES_H_
