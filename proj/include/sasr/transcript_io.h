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

#ifndef SASR_TRANSCRIPT_IO_H_
#define SASR_TRANSCRIPT_IO_H_

// Transcript and embedding file formats.
//
// Transcript: JSON lines. A meeting starts with a header object
//   {"meeting_id": "...", "num_speakers": N}
// followed by one object per utterance:
//   {"speaker": "...", "start": 1.25, "end": 3.5, "words": "a b c"}
// A file may hold several meetings back to back. Blank lines are ignored.
//
// Embeddings: JSON lines {"key": "...", "vector": [ ... ]}. When a file
// ends in .bin the binary variant is used instead: for each record a
// little-endian uint32 key length, the key bytes, a little-endian uint32
// dimension, then that many little-endian 32-bit floats.

#include <string>
#include <vector>

#include "sasr/types.h"

namespace sasr {

// A raw transcript record: like a Meeting but num_speakers carries
// whatever the header declared (a system's speaker-count estimate), with
// no requirement that it match the distinct labels. Hypothesis files are
// read this way; reference files go through ReadMeetings.
struct Transcript {
  std::string id;
  int num_speakers = 0;
  std::vector<Utterance> utterances;
};

// Single-meeting readers. Throw std::runtime_error with the line number
// for malformed lines and std::invalid_argument for invariant breaches.
Meeting ReadMeeting(const std::string& path);
std::vector<Meeting> ReadMeetings(const std::string& path);

// Lenient reader for hypothesis files (no speaker-count invariant,
// utterance invariants still enforced).
std::vector<Transcript> ReadTranscripts(const std::string& path);

void WriteMeeting(const std::string& path, const Meeting& meeting);
void WriteTranscripts(const std::string& path, const std::vector<Transcript>& transcripts);

struct EmbeddingFile {
  std::vector<std::string> keys;
  std::vector<Embedding> embeddings;
};

// Embeddings are unit-normalized on load. Dimension mismatch across
// records and zero vectors are errors.
EmbeddingFile ReadEmbeddings(const std::string& path);
void WriteEmbeddings(const std::string& path, const std::vector<std::string>& keys,
                     const std::vector<Embedding>& embeddings);

// Segment lists, one {"start": s, "end": e} object per line.
std::vector<Segment> ReadSegments(const std::string& path);
void WriteSegments(const std::string& path, const std::vector<Segment>& segments);

}  // namespace sasr

#endif  // SASR_TRANSCRIPT_IO_H_
