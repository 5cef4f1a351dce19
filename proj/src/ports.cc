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

#include "sasr/ports.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace sasr {

namespace {

using nlohmann::json;

std::runtime_error LineError(const std::string& path, int line, const std::string& what) {
  return std::runtime_error(path + ": line " + std::to_string(line) + ": " + what);
}

void ForEachJsonLine(const std::string& path, bool required,
                     const std::function<void(int, const json&)>& fn) {
  std::ifstream in(path);
  if (!in) {
    if (required) throw std::runtime_error(path + ": cannot open for reading");
    return;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw LineError(path, line_no, std::string("malformed JSON: ") + e.what());
    }
    fn(line_no, obj);
  }
}

}  // namespace

std::string SegmentKey(const Segment& segment) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f:%.3f", segment.start, segment.end);
  return buf;
}

FilePort::FilePort(const std::string& dir) {
  const std::string asr_path = dir + "/asr.jsonl";
  const std::string saasr_path = dir + "/saasr.jsonl";

  ForEachJsonLine(asr_path, /*required=*/false, [&](int line_no, const json& obj) {
    try {
      const Segment seg(obj.at("start").get<double>(), obj.at("end").get<double>());
      asr_[SegmentKey(seg)] = TokensFromWords(obj.at("words").get<std::string>());
    } catch (const std::exception& e) {
      throw LineError(asr_path, line_no, e.what());
    }
  });

  ForEachJsonLine(saasr_path, /*required=*/false, [&](int line_no, const json& obj) {
    try {
      const Segment seg(obj.at("start").get<double>(), obj.at("end").get<double>());
      SaEntry entry;
      entry.sequence = SotFromString(obj.at("sot").get<std::string>());
      entry.sequence.speakers = obj.at("speakers").get<std::vector<int>>();
      entry.sequence.Validate();
      entry.queries.assign(entry.sequence.tokens.size(), std::nullopt);
      for (const json& q : obj.value("queries", json::array())) {
        const int pos = q.at("pos").get<int>();
        if (pos < 0 || pos >= static_cast<int>(entry.queries.size())) {
          throw std::runtime_error("query position " + std::to_string(pos) +
                                   " out of range");
        }
        entry.queries[pos] = SpeakerQuery{q.at("vector").get<std::vector<double>>()};
        entry.queries[pos]->Validate();
      }
      saasr_[SegmentKey(seg)] = std::move(entry);
    } catch (const std::exception& e) {
      throw LineError(saasr_path, line_no, e.what());
    }
  });

  if (asr_.empty() && saasr_.empty()) {
    throw std::runtime_error(dir + ": no asr.jsonl or saasr.jsonl entries found");
  }
}

std::vector<Token> FilePort::Transcribe(const Segment& segment, const AudioRef&) {
  const auto it = asr_.find(SegmentKey(segment));
  if (it == asr_.end()) {
    throw std::runtime_error("file port: no asr entry for segment " +
                             SegmentKey(segment));
  }
  return it->second;
}

SaAsrOutput FilePort::SaTranscribe(const Segment& segment, const AudioRef&,
                                   const ProfileSet& profiles) {
  const auto it = saasr_.find(SegmentKey(segment));
  if (it == saasr_.end()) {
    throw std::runtime_error("file port: no saasr entry for segment " +
                             SegmentKey(segment));
  }
  SaAsrOutput out;
  out.sequence = it->second.sequence;
  out.queries = it->second.queries;
  out.betas.resize(out.queries.size());
  for (size_t pos = 0; pos < out.queries.size(); ++pos) {
    if (out.queries[pos]) {
      out.betas[pos] = ProfileAttention(*out.queries[pos], profiles).beta;
    }
  }
  return out;
}

}  // namespace sasr
