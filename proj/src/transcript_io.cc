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

#include "sasr/transcript_io.h"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sasr {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::runtime_error LineError(const std::string& path, int line, const std::string& what) {
  return std::runtime_error(path + ": line " + std::to_string(line) + ": " + what);
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  return in;
}

std::ofstream OpenForWrite(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  return out;
}

bool IsBlank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

// Shared line-level parse. Returns transcripts in file order with
// utterances stably sorted by start time.
std::vector<Transcript> ParseTranscriptLines(const std::string& path) {
  auto in = OpenForRead(path);
  std::vector<Transcript> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw LineError(path, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (obj.contains("meeting_id")) {
      Transcript t;
      try {
        t.id = obj.at("meeting_id").get<std::string>();
        t.num_speakers = obj.value("num_speakers", -1);
      } catch (const json::exception& e) {
        throw LineError(path, line_no, std::string("bad header: ") + e.what());
      }
      out.push_back(std::move(t));
      continue;
    }
    if (out.empty()) {
      throw LineError(path, line_no, "utterance before any meeting header");
    }
    Utterance u;
    try {
      u.speaker = obj.at("speaker").get<std::string>();
      u.start = obj.at("start").get<double>();
      u.end = obj.at("end").get<double>();
      u.tokens = TokensFromWords(obj.at("words").get<std::string>());
    } catch (const json::exception& e) {
      throw LineError(path, line_no, std::string("bad utterance: ") + e.what());
    }
    try {
      u.Validate();
    } catch (const std::invalid_argument& e) {
      throw LineError(path, line_no, e.what());
    }
    out.back().utterances.push_back(std::move(u));
  }
  for (auto& t : out) {
    std::stable_sort(t.utterances.begin(), t.utterances.end(),
                     [](const Utterance& a, const Utterance& b) {
                       return TimeLt(a.start, b.start);
                     });
  }
  return out;
}

Meeting ToMeeting(const std::string& path, Transcript&& t) {
  Meeting m;
  m.id = std::move(t.id);
  m.utterances = std::move(t.utterances);
  if (m.utterances.empty()) {
    throw std::runtime_error(path + ": meeting " + m.id + ": no utterances");
  }
  // A header without num_speakers takes the distinct-label count.
  m.num_speakers = t.num_speakers >= 0 ? t.num_speakers : m.CountDistinctSpeakers();
  m.Validate();
  return m;
}

void WriteUtteranceLine(std::ofstream& out, const Utterance& u) {
  ordered_json obj;
  obj["speaker"] = u.speaker;
  obj["start"] = u.start;
  obj["end"] = u.end;
  obj["words"] = WordsFromTokens(u.tokens);
  out << obj.dump() << "\n";
}

void WriteHeaderLine(std::ofstream& out, const std::string& id, int num_speakers) {
  ordered_json header;
  header["meeting_id"] = id;
  header["num_speakers"] = num_speakers;
  out << header.dump() << "\n";
}

uint32_t ReadU32Le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("truncated binary record");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void WriteU32Le(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<char*>(b), 4);
}

float ReadF32Le(std::istream& in) {
  const uint32_t bits = ReadU32Le(in);
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

void WriteF32Le(std::ostream& out, float f) {
  uint32_t bits;
  std::memcpy(&bits, &f, 4);
  WriteU32Le(out, bits);
}

bool HasBinExtension(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
}

EmbeddingFile ReadEmbeddingsJsonl(const std::string& path) {
  auto in = OpenForRead(path);
  EmbeddingFile out;
  std::string line;
  int line_no = 0;
  int dim = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw LineError(path, line_no, std::string("malformed JSON: ") + e.what());
    }
    std::vector<double> vec;
    std::string key;
    try {
      key = obj.at("key").get<std::string>();
      vec = obj.at("vector").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw LineError(path, line_no, std::string("bad record: ") + e.what());
    }
    if (dim < 0) {
      dim = static_cast<int>(vec.size());
    } else if (static_cast<int>(vec.size()) != dim) {
      throw LineError(path, line_no,
                      "dimension mismatch: expected " + std::to_string(dim) +
                          ", got " + std::to_string(vec.size()));
    }
    try {
      out.embeddings.emplace_back(std::move(vec));
    } catch (const std::invalid_argument& e) {
      throw LineError(path, line_no, e.what());
    }
    out.keys.push_back(std::move(key));
  }
  return out;
}

EmbeddingFile ReadEmbeddingsBin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  EmbeddingFile out;
  int dim = -1;
  int record = 0;
  while (in.peek() != EOF) {
    ++record;
    try {
      const uint32_t key_len = ReadU32Le(in);
      std::string key(key_len, '\0');
      in.read(key.data(), key_len);
      if (!in) throw std::runtime_error("truncated key");
      const uint32_t d = ReadU32Le(in);
      std::vector<double> vec(d);
      for (uint32_t i = 0; i < d; ++i) vec[i] = static_cast<double>(ReadF32Le(in));
      if (dim < 0) {
        dim = static_cast<int>(d);
      } else if (static_cast<int>(d) != dim) {
        throw std::runtime_error("dimension mismatch: expected " + std::to_string(dim) +
                                 ", got " + std::to_string(d));
      }
      out.embeddings.emplace_back(std::move(vec));
      out.keys.push_back(std::move(key));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ": record " + std::to_string(record) + ": " +
                               e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<Meeting> ReadMeetings(const std::string& path) {
  auto transcripts = ParseTranscriptLines(path);
  if (transcripts.empty()) {
    throw std::runtime_error(path + ": no utterances");
  }
  std::vector<Meeting> out;
  out.reserve(transcripts.size());
  for (auto& t : transcripts) out.push_back(ToMeeting(path, std::move(t)));
  return out;
}

Meeting ReadMeeting(const std::string& path) {
  auto meetings = ReadMeetings(path);
  if (meetings.size() != 1) {
    throw std::runtime_error(path + ": expected one meeting, found " +
                             std::to_string(meetings.size()));
  }
  return std::move(meetings.front());
}

std::vector<Transcript> ReadTranscripts(const std::string& path) {
  auto transcripts = ParseTranscriptLines(path);
  for (auto& t : transcripts) {
    if (t.num_speakers < 0) t.num_speakers = 0;
  }
  return transcripts;
}

void WriteMeeting(const std::string& path, const Meeting& meeting) {
  meeting.Validate();
  auto out = OpenForWrite(path);
  WriteHeaderLine(out, meeting.id, meeting.num_speakers);
  for (const auto& u : meeting.utterances) WriteUtteranceLine(out, u);
}

void WriteTranscripts(const std::string& path, const std::vector<Transcript>& transcripts) {
  auto out = OpenForWrite(path);
  for (const auto& t : transcripts) {
    WriteHeaderLine(out, t.id, t.num_speakers);
    for (const auto& u : t.utterances) WriteUtteranceLine(out, u);
  }
}

EmbeddingFile ReadEmbeddings(const std::string& path) {
  return HasBinExtension(path) ? ReadEmbeddingsBin(path) : ReadEmbeddingsJsonl(path);
}

void WriteEmbeddings(const std::string& path, const std::vector<std::string>& keys,
                     const std::vector<Embedding>& embeddings) {
  if (keys.size() != embeddings.size()) {
    throw std::invalid_argument("write embeddings: keys and vectors differ in length");
  }
  if (HasBinExtension(path)) {
    auto out = OpenForWrite(path, /*binary=*/true);
    for (size_t i = 0; i < keys.size(); ++i) {
      WriteU32Le(out, static_cast<uint32_t>(keys[i].size()));
      out.write(keys[i].data(), static_cast<std::streamsize>(keys[i].size()));
      WriteU32Le(out, static_cast<uint32_t>(embeddings[i].dim()));
      for (double v : embeddings[i].values()) WriteF32Le(out, static_cast<float>(v));
    }
    return;
  }
  auto out = OpenForWrite(path);
  for (size_t i = 0; i < keys.size(); ++i) {
    ordered_json obj;
    obj["key"] = keys[i];
    obj["vector"] = embeddings[i].values();
    out << obj.dump() << "\n";
  }
}

std::vector<Segment> ReadSegments(const std::string& path) {
  auto in = OpenForRead(path);
  std::vector<Segment> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    try {
      json obj = json::parse(line);
      out.emplace_back(obj.at("start").get<double>(), obj.at("end").get<double>());
    } catch (const std::exception& e) {
      throw LineError(path, line_no, e.what());
    }
  }
  return out;
}

void WriteSegments(const std::string& path, const std::vector<Segment>& segments) {
  auto out = OpenForWrite(path);
  for (const auto& s : segments) {
    ordered_json obj;
    obj["start"] = s.start;
    obj["end"] = s.end;
    out << obj.dump() << "\n";
  }
}

}  // namespace sasr
