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

// Command-line front end: fixture generation, clustering, pipeline
// runs over pluggable recognizer ports, scoring, and report rendering.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sasr/clustering.h"
#include "sasr/metrics.h"
#include "sasr/parallel.h"
#include "sasr/pipeline.h"
#include "sasr/ports.h"
#include "sasr/synthgen.h"
#include "sasr/transcript_io.h"
#include "sasr/types.h"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kToolkitVersion = "0.1.0";

// --- small helpers ---------------------------------------------------

uint64_t Fnv1a64File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open for digest");
  uint64_t h = 1469598103934665603ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string DigestString(const std::string& path) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(Fnv1a64File(path)));
  return buf;
}

json ParseJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << doc.dump(2) << "\n";
}

ordered_json SynthConfigToJson(const sasr::SynthConfig& cfg) {
  ordered_json j;
  j["num_speakers"] = cfg.num_speakers;
  j["seed"] = cfg.seed;
  j["min_start_gap"] = cfg.min_start_gap;
  j["require_overlap"] = cfg.require_overlap;
  j["embedding_noise"] = cfg.embedding_noise;
  j["utterances_per_speaker"] = cfg.utterances_per_speaker;
  j["embedding_dim"] = cfg.embedding_dim;
  j["max_centroid_cosine"] = cfg.max_centroid_cosine;
  j["window_period"] = cfg.window_period;
  j["window_length"] = cfg.window_length;
  return j;
}

sasr::SynthConfig SynthConfigFromJson(const json& j) {
  static const std::vector<std::string> kKeys = {
      "num_speakers",   "seed",          "min_start_gap",
      "require_overlap", "embedding_noise", "utterances_per_speaker",
      "embedding_dim",  "max_centroid_cosine", "window_period",
      "window_length"};
  for (const auto& item : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
      throw std::runtime_error("meeting config: unknown key " + item.key());
    }
  }
  sasr::SynthConfig cfg;
  cfg.num_speakers = j.value("num_speakers", cfg.num_speakers);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.min_start_gap = j.value("min_start_gap", cfg.min_start_gap);
  cfg.require_overlap = j.value("require_overlap", cfg.require_overlap);
  cfg.embedding_noise = j.value("embedding_noise", cfg.embedding_noise);
  cfg.utterances_per_speaker =
      j.value("utterances_per_speaker", cfg.utterances_per_speaker);
  cfg.embedding_dim = j.value("embedding_dim", cfg.embedding_dim);
  cfg.max_centroid_cosine = j.value("max_centroid_cosine", cfg.max_centroid_cosine);
  cfg.window_period = j.value("window_period", cfg.window_period);
  cfg.window_length = j.value("window_length", cfg.window_length);
  return cfg;
}

// Windowed embeddings are stored as a segment file plus an embedding
// file with index keys, zipped back together by line order.
void WriteWindowed(const fs::path& dir, const std::string& prefix,
                   const std::vector<std::pair<sasr::Segment, sasr::Embedding>>& windows) {
  std::vector<sasr::Segment> segs;
  std::vector<std::string> keys;
  std::vector<sasr::Embedding> embs;
  segs.reserve(windows.size());
  for (size_t i = 0; i < windows.size(); ++i) {
    segs.push_back(windows[i].first);
    keys.push_back("w" + std::to_string(i));
    embs.push_back(windows[i].second);
  }
  sasr::WriteSegments((dir / (prefix + "windows.jsonl")).string(), segs);
  sasr::WriteEmbeddings((dir / (prefix + "embeddings.jsonl")).string(), keys, embs);
}

std::vector<std::pair<sasr::Segment, sasr::Embedding>> ReadWindowed(
    const fs::path& dir, const std::string& prefix) {
  const auto segs = sasr::ReadSegments((dir / (prefix + "windows.jsonl")).string());
  const auto ef = sasr::ReadEmbeddings((dir / (prefix + "embeddings.jsonl")).string());
  if (segs.size() != ef.embeddings.size()) {
    throw std::runtime_error(dir.string() + ": " + prefix +
                             "windows and embeddings differ in length");
  }
  std::vector<std::pair<sasr::Segment, sasr::Embedding>> out;
  out.reserve(segs.size());
  for (size_t i = 0; i < segs.size(); ++i) out.emplace_back(segs[i], ef.embeddings[i]);
  return out;
}

// --- gen --------------------------------------------------------------

struct GenArgs {
  int speakers = 2;
  uint64_t seed = 1;
  int count = 1;
  std::string out;
  bool no_overlap = false;
  double embedding_noise = 0.01;
  int utterances_per_speaker = 4;
  int embedding_dim = 128;
  double max_centroid_cosine = 0.25;
  double min_start_gap = 0.5;
};

int RunGen(const GenArgs& a) {
  fs::create_directories(a.out);
  std::vector<sasr::Transcript> refs;
  ordered_json meetings = ordered_json::array();
  for (int i = 0; i < a.count; ++i) {
    sasr::SynthConfig cfg;
    cfg.num_speakers = a.speakers;
    cfg.seed = a.seed + static_cast<uint64_t>(i);
    cfg.require_overlap = !a.no_overlap;
    cfg.embedding_noise = a.embedding_noise;
    cfg.utterances_per_speaker = a.utterances_per_speaker;
    cfg.embedding_dim = a.embedding_dim;
    cfg.max_centroid_cosine = a.max_centroid_cosine;
    cfg.min_start_gap = a.min_start_gap;
    const sasr::SynthMeeting sm = sasr::Generate(cfg);

    const fs::path dir = fs::path(a.out) / sm.meeting.id;
    fs::create_directories(dir);
    sasr::WriteSegments((dir / "vad.jsonl").string(), sm.vad);
    WriteWindowed(dir, "", sm.true_embeddings);
    for (int s = 0; s < 2; ++s) {
      const std::string prefix = "stream" + std::to_string(s) + ".";
      sasr::WriteSegments((dir / (prefix + "vad.jsonl")).string(),
                          sm.separated_truth[static_cast<size_t>(s)].vad);
      WriteWindowed(dir, prefix, sm.separated_truth[static_cast<size_t>(s)].windows);
    }

    refs.push_back({sm.meeting.id, sm.meeting.num_speakers, sm.meeting.utterances});
    ordered_json entry;
    entry["id"] = sm.meeting.id;
    entry["config"] = SynthConfigToJson(cfg);
    meetings.push_back(std::move(entry));
  }
  sasr::WriteTranscripts((fs::path(a.out) / "ref.jsonl").string(), refs);

  ordered_json meta;
  meta["version"] = kToolkitVersion;
  meta["base_seed"] = a.seed;
  meta["count"] = a.count;
  meta["meetings"] = std::move(meetings);
  WriteJsonFile((fs::path(a.out) / "meta.json").string(), meta);

  std::cout << "wrote " << a.count << " meeting(s) to " << a.out << "\n";
  for (const auto& t : refs) std::cout << "  " << t.id << "\n";
  return 0;
}

// --- cluster ----------------------------------------------------------

struct ClusterArgs {
  std::string embeddings;
  int max_speakers = 8;
  uint64_t seed = 17;
  bool explain = false;
  std::string out;
};

int RunClusterCmd(const ClusterArgs& a) {
  const sasr::EmbeddingFile ef = sasr::ReadEmbeddings(a.embeddings);
  const sasr::AffinityMatrix aff = sasr::CosineAffinity(ef.embeddings);
  const sasr::NmeResult nme = sasr::NmeCount(aff, a.max_speakers);
  const std::vector<int> labels = sasr::SpectralCluster(aff, nme.k, a.seed);

  std::cout << "n " << ef.embeddings.size() << "  k " << nme.k << "\n";
  if (a.explain) {
    std::cout << "p " << nme.p << "  criterion " << nme.criterion << "\n";
    std::cout << "eigengaps";
    for (double g : nme.eigengaps) std::cout << " " << g;
    std::cout << "\n";
  }
  if (a.out.empty()) {
    std::cout << "labels";
    for (int l : labels) std::cout << " " << l;
    std::cout << "\n";
  } else {
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error(a.out + ": cannot open for writing");
    for (size_t i = 0; i < labels.size(); ++i) {
      ordered_json line;
      line["key"] = ef.keys[i];
      line["label"] = labels[i];
      out << line.dump() << "\n";
    }
    std::cout << "wrote " << labels.size() << " labels to " << a.out << "\n";
  }
  return 0;
}

// --- pipeline ---------------------------------------------------------

struct PipelineArgs {
  std::string system;
  std::string in;
  std::string out;
  std::string manifest;
  std::string port = "oracle";
  std::string config;
  int jobs = 0;
  double sub_rate = 0.05;
  double del_rate = 0.02;
  double ins_rate = 0.02;
  double query_noise = 0.01;
  bool mask_overlapped = false;
};

struct MeetingJob {
  std::string id;
  sasr::SynthConfig cfg;
  fs::path dir;
};

sasr::PipelineInputs LoadInputs(const fs::path& dir) {
  sasr::PipelineInputs inputs;
  inputs.mixture.vad = sasr::ReadSegments((dir / "vad.jsonl").string());
  inputs.mixture.embeddings = ReadWindowed(dir, "");
  inputs.mixture.audio.uri = sasr::kAudioMixture;
  if (fs::exists(dir / "stream0.vad.jsonl") && fs::exists(dir / "stream1.vad.jsonl")) {
    std::array<sasr::StreamInputs, 2> streams;
    for (int s = 0; s < 2; ++s) {
      const std::string prefix = "stream" + std::to_string(s) + ".";
      auto& st = streams[static_cast<size_t>(s)];
      st.vad = sasr::ReadSegments((dir / (prefix + "vad.jsonl")).string());
      st.embeddings = ReadWindowed(dir, prefix);
      st.audio.uri = s == 0 ? sasr::kAudioStream0 : sasr::kAudioStream1;
    }
    inputs.separated = std::move(streams);
  }
  return inputs;
}

// Builds the port pair for one meeting. Oracle and noisy ports replay
// the generator's ground truth for the recorded config; external ports
// read recognizer outputs dropped next to the inputs.
struct MeetingPorts {
  std::unique_ptr<sasr::RecognizerPort> asr;
  std::unique_ptr<sasr::RecognizerPort> sa_asr;
  sasr::RecognizerPort* asr_port = nullptr;
  sasr::RecognizerPort* sa_port = nullptr;
};

MeetingPorts MakePorts(const PipelineArgs& a, const MeetingJob& job) {
  MeetingPorts p;
  if (a.port == "external") {
    p.asr = std::make_unique<sasr::FilePort>(job.dir.string());
    p.asr_port = p.asr.get();
    p.sa_port = p.asr.get();
    return p;
  }
  sasr::OraclePortConfig ocfg;
  ocfg.seed = job.cfg.seed;
  ocfg.query_noise = a.query_noise;
  ocfg.mask_overlapped = a.mask_overlapped;
  if (a.port == "noisy") {
    ocfg.corruption = {a.sub_rate, a.del_rate, a.ins_rate};
  }
  auto pair = sasr::MakeOraclePorts(sasr::Generate(job.cfg), ocfg);
  p.asr = std::move(pair.asr);
  p.sa_asr = std::move(pair.sa_asr);
  p.asr_port = p.asr.get();
  p.sa_port = p.sa_asr.get();
  return p;
}

sasr::AttributedTranscript RunSystem(const PipelineArgs& a, const MeetingJob& job,
                                     const sasr::PipelineConfig& cfg) {
  const sasr::PipelineInputs inputs = LoadInputs(job.dir);
  MeetingPorts ports = MakePorts(a, job);
  if (a.system == "m1") {
    return sasr::RunM1(inputs, *ports.asr_port, cfg).transcript;
  }
  if (a.system == "m2") {
    const auto m1 = sasr::RunM1(inputs, *ports.asr_port, cfg);
    return sasr::RunM2(inputs, *ports.asr_port, m1.centroids, cfg);
  }
  if (a.system == "j1") {
    const sasr::ProfileSet dummies = sasr::MakeDummyProfiles(
        cfg.num_dummy_profiles, cfg.embedding_dim, cfg.seed);
    return sasr::RunJ1(inputs, *ports.sa_port, dummies, cfg);
  }
  const auto m1 = sasr::RunM1(inputs, *ports.asr_port, cfg);
  return sasr::RunJ2(inputs, *ports.sa_port, m1.centroids, cfg);
}

int RunPipelineCmd(PipelineArgs a) {
  const fs::path in(a.in);
  if (a.out.empty()) a.out = (in / ("hyp." + a.system + ".jsonl")).string();
  if (a.manifest.empty()) a.manifest = a.out + ".manifest.json";
  if (a.jobs <= 0) a.jobs = sasr::HardwareThreads();

  const sasr::PipelineConfig cfg =
      a.config.empty() ? sasr::PipelineConfig{} : sasr::LoadPipelineConfig(a.config);
  cfg.Validate();

  const json meta = ParseJsonFile((in / "meta.json").string());
  std::vector<MeetingJob> jobs;
  for (const auto& m : meta.at("meetings")) {
    MeetingJob job;
    job.id = m.at("id").get<std::string>();
    job.cfg = SynthConfigFromJson(m.at("config"));
    job.dir = in / job.id;
    jobs.push_back(std::move(job));
  }

  // Input digests, recorded before the run.
  std::map<std::string, std::string> digests;
  digests["meta.json"] = DigestString((in / "meta.json").string());
  for (const auto& job : jobs) {
    static const char* kNames[] = {"vad.jsonl",         "windows.jsonl",
                                   "embeddings.jsonl",  "stream0.vad.jsonl",
                                   "stream0.windows.jsonl", "stream0.embeddings.jsonl",
                                   "stream1.vad.jsonl", "stream1.windows.jsonl",
                                   "stream1.embeddings.jsonl", "asr.jsonl",
                                   "saasr.jsonl"};
    for (const char* name : kNames) {
      const fs::path p = job.dir / name;
      if (fs::exists(p)) digests[job.id + "/" + name] = DigestString(p.string());
    }
  }

  std::vector<sasr::Transcript> results(jobs.size());
  std::vector<std::pair<int, size_t>> stats(jobs.size());
  const auto process = [&](size_t idx) {
    const sasr::AttributedTranscript t = RunSystem(a, jobs[idx], cfg);
    const sasr::Meeting view = sasr::TranscriptToMeeting(t, jobs[idx].id);
    results[idx] = {jobs[idx].id, t.num_speakers, view.utterances};
    stats[idx] = {t.num_speakers, t.entries.size()};
  };

  const int workers = std::min<int>(a.jobs, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) process(i);
  } else {
    std::atomic<size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
          try {
            process(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  sasr::WriteTranscripts(a.out, results);

  ordered_json manifest;
  manifest["version"] = kToolkitVersion;
  manifest["command"] = "pipeline";
  manifest["system"] = a.system;
  manifest["port"] = a.port;
  manifest["seed"] = cfg.seed;
  manifest["jobs"] = a.jobs;
  if (a.port == "noisy") {
    ordered_json noise;
    noise["sub_rate"] = a.sub_rate;
    noise["del_rate"] = a.del_rate;
    noise["ins_rate"] = a.ins_rate;
    manifest["noise"] = noise;
  }
  manifest["query_noise"] = a.query_noise;
  manifest["mask_overlapped"] = a.mask_overlapped;
  manifest["config"] = json::parse(sasr::PipelineConfigJson(cfg));
  ordered_json inputs_json;
  for (const auto& [path, digest] : digests) inputs_json[path] = digest;
  manifest["inputs"] = inputs_json;
  ordered_json rows = ordered_json::array();
  for (size_t i = 0; i < jobs.size(); ++i) {
    ordered_json row;
    row["id"] = jobs[i].id;
    row["num_speakers"] = stats[i].first;
    row["entries"] = stats[i].second;
    rows.push_back(std::move(row));
  }
  manifest["meetings"] = std::move(rows);
  WriteJsonFile(a.manifest, manifest);

  std::cout << "wrote " << results.size() << " transcript(s) to " << a.out << "\n";
  std::cout << "manifest " << a.manifest << "\n";
  return 0;
}

// --- eval -------------------------------------------------------------

struct EvalArgs {
  std::string ref;
  std::string hyp;
  std::string out;
  bool tcwer = false;
};

ordered_json BreakdownJson(const sasr::ErrorBreakdown& b) {
  ordered_json j;
  j["sub"] = b.substitutions;
  j["del"] = b.deletions;
  j["ins"] = b.insertions;
  j["total"] = b.total();
  j["ref_words"] = b.ref_words;
  j["rate"] = b.rate;
  return j;
}

int RunEvalCmd(const EvalArgs& a) {
  const std::vector<sasr::Meeting> refs = sasr::ReadMeetings(a.ref);
  const std::vector<sasr::Transcript> hyps = sasr::ReadTranscripts(a.hyp);
  const sasr::CorpusScore score = sasr::ScoreCorpus(refs, hyps);

  std::map<std::string, const sasr::Transcript*> hyp_by_id;
  for (const auto& h : hyps) hyp_by_id[h.id] = &h;
  std::map<std::string, const sasr::Meeting*> ref_by_id;
  for (const auto& r : refs) ref_by_id[r.id] = &r;

  ordered_json rep;
  rep["version"] = kToolkitVersion;
  rep["overall"] = BreakdownJson(score.overall);
  rep["sce"] = score.sce;
  ordered_json rows = ordered_json::array();
  for (const auto& m : score.meetings) {
    ordered_json row;
    row["id"] = m.id;
    row["sub"] = m.cpwer.substitutions;
    row["del"] = m.cpwer.deletions;
    row["ins"] = m.cpwer.insertions;
    row["total"] = m.cpwer.total();
    row["ref_words"] = m.cpwer.ref_words;
    row["cpwer"] = m.cpwer.rate;
    row["estimated_speakers"] = m.estimated_speakers;
    row["actual_speakers"] = m.actual_speakers;
    ordered_json mapping;
    for (const auto& [hyp_label, ref_label] : m.mapping.hyp_to_ref) {
      if (ref_label) {
        mapping[hyp_label] = *ref_label;
      } else {
        mapping[hyp_label] = nullptr;
      }
    }
    row["mapping"] = mapping;
    if (a.tcwer) {
      std::vector<sasr::TimedTokens> hyp_tokens;
      const auto it = hyp_by_id.find(m.id);
      if (it != hyp_by_id.end()) {
        for (const auto& u : it->second->utterances) {
          hyp_tokens.push_back({sasr::Segment(u.start, u.end), u.tokens});
        }
      }
      row["tcwer"] =
          BreakdownJson(sasr::TimeConstrainedWer(ref_by_id.at(m.id)->utterances, hyp_tokens));
    }
    rows.push_back(std::move(row));
  }
  rep["meetings"] = std::move(rows);

  if (a.out.empty()) {
    std::cout << rep.dump(2) << "\n";
  } else {
    WriteJsonFile(a.out, rep);
    std::cout << "wrote report to " << a.out << "\n";
  }
  return 0;
}

// --- report -----------------------------------------------------------

int RunReportCmd(const std::string& in_path) {
  const json rep = ParseJsonFile(in_path);
  const auto& meetings = rep.at("meetings");
  const bool has_tcwer = !meetings.empty() && meetings.front().contains("tcwer");

  size_t id_width = 8;
  for (const auto& m : meetings) {
    id_width = std::max(id_width, m.at("id").get<std::string>().size());
  }
  const int idw = static_cast<int>(id_width);

  std::printf("%-*s %6s %6s %6s %6s %8s %8s %9s", idw, "meeting", "sub", "del",
              "ins", "total", "ref", "cpWER", "spk(e/a)");
  if (has_tcwer) std::printf(" %8s", "tcWER");
  std::printf("\n");
  const int line_width = idw + 57 + (has_tcwer ? 9 : 0);
  for (int i = 0; i < line_width; ++i) std::printf("-");
  std::printf("\n");

  for (const auto& m : meetings) {
    std::printf("%-*s %6lld %6lld %6lld %6lld %8lld %8.4f %5d/%-3d", idw,
                m.at("id").get<std::string>().c_str(), m.at("sub").get<long long>(),
                m.at("del").get<long long>(), m.at("ins").get<long long>(),
                m.at("total").get<long long>(), m.at("ref_words").get<long long>(),
                m.at("cpwer").get<double>(), m.at("estimated_speakers").get<int>(),
                m.at("actual_speakers").get<int>());
    if (has_tcwer) std::printf(" %8.4f", m.at("tcwer").at("rate").get<double>());
    std::printf("\n");
  }

  const auto& o = rep.at("overall");
  for (int i = 0; i < line_width; ++i) std::printf("-");
  std::printf("\n");
  std::printf("%-*s %6lld %6lld %6lld %6lld %8lld %8.4f  SCE %.4f\n", idw, "overall",
              o.at("sub").get<long long>(), o.at("del").get<long long>(),
              o.at("ins").get<long long>(), o.at("total").get<long long>(),
              o.at("ref_words").get<long long>(), o.at("rate").get<double>(),
              rep.at("sce").get<double>());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speaker-attributed ASR scaffolding toolkit"};
  app.set_version_flag("--version", kToolkitVersion);
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic fixture set");
  gen->add_option("--speakers", gen_args.speakers, "speakers per meeting")
      ->check(CLI::Range(1, 5));
  gen->add_option("--seed", gen_args.seed, "base seed; meeting i uses seed + i");
  gen->add_option("--count", gen_args.count, "number of meetings")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_args.out, "output directory")->required();
  gen->add_flag("--no-overlap", gen_args.no_overlap, "gapped layout without overlap");
  gen->add_option("--noise", gen_args.embedding_noise, "embedding noise");
  gen->add_option("--utterances-per-speaker", gen_args.utterances_per_speaker, "")
      ->check(CLI::PositiveNumber);
  gen->add_option("--dim", gen_args.embedding_dim, "embedding dimension");
  gen->add_option("--max-centroid-cosine", gen_args.max_centroid_cosine,
                  "planted centroid separation");
  gen->add_option("--min-start-gap", gen_args.min_start_gap, "");

  ClusterArgs cluster_args;
  CLI::App* cluster = app.add_subcommand("cluster", "cluster an embedding file");
  cluster->add_option("--embeddings", cluster_args.embeddings, "embedding file")
      ->required();
  cluster->add_option("--max-speakers", cluster_args.max_speakers, "")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--seed", cluster_args.seed, "");
  cluster->add_flag("--explain", cluster_args.explain, "print speaker-count diagnostics");
  cluster->add_option("--out", cluster_args.out, "write labels as JSONL");

  PipelineArgs pipe_args;
  CLI::App* pipe = app.add_subcommand("pipeline", "run one system over a fixture set");
  pipe->add_option("system", pipe_args.system, "m1 | m2 | j1 | j2")
      ->required()
      ->check(CLI::IsMember({"m1", "m2", "j1", "j2"}));
  pipe->add_option("--in", pipe_args.in, "fixture directory")->required();
  pipe->add_option("--out", pipe_args.out, "hypothesis JSONL path");
  pipe->add_option("--manifest", pipe_args.manifest, "run manifest path");
  pipe->add_option("--port", pipe_args.port, "recognizer port")
      ->check(CLI::IsMember({"oracle", "noisy", "external"}));
  pipe->add_option("--config", pipe_args.config, "pipeline config JSON");
  pipe->add_option("--jobs", pipe_args.jobs, "meeting-level parallelism");
  pipe->add_option("--sub-rate", pipe_args.sub_rate, "noisy port substitution rate");
  pipe->add_option("--del-rate", pipe_args.del_rate, "noisy port deletion rate");
  pipe->add_option("--ins-rate", pipe_args.ins_rate, "noisy port insertion rate");
  pipe->add_option("--query-noise", pipe_args.query_noise, "oracle query noise");
  pipe->add_flag("--mask-overlapped", pipe_args.mask_overlapped,
                 "single-stream ASR drops overlapped tokens");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score hypotheses against references");
  eval->add_option("--ref", eval_args.ref, "reference JSONL")->required();
  eval->add_option("--hyp", eval_args.hyp, "hypothesis JSONL")->required();
  eval->add_option("--out", eval_args.out, "report path (stdout if absent)");
  eval->add_flag("--tcwer", eval_args.tcwer, "add time-constrained WER per meeting");

  std::string report_in;
  CLI::App* report = app.add_subcommand("report", "render a report as a text table");
  report->add_option("--in", report_in, "report JSON from eval")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return RunGen(gen_args);
    if (cluster->parsed()) return RunClusterCmd(cluster_args);
    if (pipe->parsed()) return RunPipelineCmd(pipe_args);
    if (eval->parsed()) return RunEvalCmd(eval_args);
    if (report->parsed()) return RunReportCmd(report_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
