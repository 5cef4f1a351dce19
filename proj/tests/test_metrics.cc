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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sasr/metrics.h"
#include "sasr/rng.h"
#include "sasr/types.h"

using namespace sasr;

namespace {

// Cost-only Levenshtein recurrence, written independently of the
// library's alignment backtrace.
int OracleEditCost(const std::vector<Token>& ref, const std::vector<Token>& hyp) {
  std::vector<int> prev(hyp.size() + 1), cur(hyp.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (size_t i = 1; i <= ref.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= hyp.size(); ++j) {
      const int subst = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cur[j] = std::min({subst, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[hyp.size()];
}

std::vector<Token> RandomTokens(Rng* rng, int max_len) {
  const int len = static_cast<int>(rng->Bounded(max_len + 1));
  std::vector<Token> out;
  for (int i = 0; i < len; ++i) {
    out.emplace_back(std::string(1, static_cast<char>('a' + rng->Bounded(3))));
  }
  return out;
}

// Minimum summed edit cost over injective hyp-to-ref assignments,
// enumerated directly over permutations of the padded index set.
long long BruteForceCpwerCost(const SpeakerStreams& ref, const SpeakerStreams& hyp) {
  const int side = static_cast<int>(std::max(ref.size(), hyp.size()));
  const std::vector<Token> empty;
  std::vector<int> perm(side);
  std::iota(perm.begin(), perm.end(), 0);
  long long best = -1;
  do {
    long long total = 0;
    for (int i = 0; i < side; ++i) {
      const auto& r = i < static_cast<int>(ref.size()) ? ref[i].second : empty;
      const auto& h =
          perm[i] < static_cast<int>(hyp.size()) ? hyp[perm[i]].second : empty;
      total += EditDistance(r, h).total();
    }
    if (best < 0 || total < best) best = total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

SpeakerStreams Streams(std::vector<std::pair<std::string, std::string>> rows) {
  SpeakerStreams out;
  for (auto& [label, words] : rows) out.emplace_back(label, TokensFromWords(words));
  return out;
}

}  // namespace

TEST_CASE("edit distance composition is forced by the length difference") {
  // Distance 2 with one fewer hyp word: sub + del + ins = 2 and
  // del - ins = 1 admit exactly one split.
  const EditCounts shrink =
      EditDistance(TokensFromWords("a b c d"), TokensFromWords("a x c"));
  CHECK(shrink.sub == 1);
  CHECK(shrink.del == 1);
  CHECK(shrink.ins == 0);
  // Distance 2 with one extra hyp word forces the mirror split.
  const EditCounts grow = EditDistance(TokensFromWords("a b"), TokensFromWords("a x y"));
  CHECK(grow.sub == 1);
  CHECK(grow.del == 0);
  CHECK(grow.ins == 1);
}

TEST_CASE("edit distance handles identity and empty sides") {
  CHECK(EditDistance(TokensFromWords("a b c"), TokensFromWords("a b c")) ==
        EditCounts{});
  const EditCounts all_del = EditDistance(TokensFromWords("a b c"), {});
  CHECK(all_del.del == 3);
  CHECK(all_del.total() == 3);
  const EditCounts all_ins = EditDistance({}, TokensFromWords("x y"));
  CHECK(all_ins.ins == 2);
  CHECK(all_ins.total() == 2);
  CHECK(EditDistance({}, {}).total() == 0);
}

TEST_CASE("edit distance total matches an independent recurrence") {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto ref = RandomTokens(&rng, 12);
    const auto hyp = RandomTokens(&rng, 12);
    const EditCounts c = EditDistance(ref, hyp);
    CHECK(c.total() == OracleEditCost(ref, hyp));
    // Any alignment satisfies del - ins = |ref| - |hyp|.
    CHECK(c.del - c.ins ==
          static_cast<long long>(ref.size()) - static_cast<long long>(hyp.size()));
  }
}

TEST_CASE("cpwer scores the two-speaker worked example") {
  const auto ref = Streams({{"A", "a b c"}, {"B", "d e"}});
  const auto hyp = Streams({{"1", "a b x"}, {"2", "d"}});
  const CpwerResult r = Cpwer(ref, hyp);
  CHECK(r.breakdown.substitutions == 1);
  CHECK(r.breakdown.deletions == 1);
  CHECK(r.breakdown.insertions == 0);
  CHECK(r.breakdown.ref_words == 5);
  CHECK(r.breakdown.rate == doctest::Approx(0.40));
  REQUIRE(r.mapping.hyp_to_ref.size() == 2);
  CHECK(r.mapping.hyp_to_ref[0].second == "A");
  CHECK(r.mapping.hyp_to_ref[1].second == "B");
}

TEST_CASE("cpwer finds the exact permutation") {
  const auto ref = Streams({{"A", "a b c"}, {"B", "d e"}});
  const auto hyp = Streams({{"1", "d e"}, {"2", "a b c"}});
  const CpwerResult r = Cpwer(ref, hyp);
  CHECK(r.breakdown.total() == 0);
  CHECK(r.breakdown.rate == 0.0);
  CHECK(r.mapping.hyp_to_ref[0].second == "B");
  CHECK(r.mapping.hyp_to_ref[1].second == "A");
}

TEST_CASE("cpwer charges unmatched hypothesis streams as insertions") {
  const auto ref = Streams({{"A", "a b"}});
  const auto hyp = Streams({{"1", "a b"}, {"2", "z"}});
  const CpwerResult r = Cpwer(ref, hyp);
  CHECK(r.breakdown.substitutions == 0);
  CHECK(r.breakdown.deletions == 0);
  CHECK(r.breakdown.insertions == 1);
  CHECK(r.breakdown.rate == doctest::Approx(0.5));
  CHECK(r.mapping.hyp_to_ref[0].second == "A");
  CHECK_FALSE(r.mapping.hyp_to_ref[1].second.has_value());
}

TEST_CASE("cpwer charges unmatched reference streams as deletions") {
  const auto ref = Streams({{"A", "a b"}, {"B", "c d e"}});
  const auto hyp = Streams({{"1", "a b"}});
  const CpwerResult r = Cpwer(ref, hyp);
  CHECK(r.breakdown.deletions == 3);
  CHECK(r.breakdown.total() == 3);
  CHECK(r.breakdown.rate == doctest::Approx(0.6));
}

TEST_CASE("cpwer with no hypothesis streams deletes everything") {
  const auto ref = Streams({{"A", "a b c"}});
  const CpwerResult r = Cpwer(ref, {});
  CHECK(r.breakdown.deletions == 3);
  CHECK(r.breakdown.rate == doctest::Approx(1.0));
  CHECK(r.mapping.hyp_to_ref.empty());
}

TEST_CASE("cpwer on a single stream pair equals plain edit counts") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ref_tokens = RandomTokens(&rng, 10);
    if (ref_tokens.empty()) continue;
    const auto hyp_tokens = RandomTokens(&rng, 10);
    const EditCounts direct = EditDistance(ref_tokens, hyp_tokens);
    const CpwerResult r =
        Cpwer({{"A", ref_tokens}}, {{"h", hyp_tokens}}, ScoringConfig{false});
    CHECK(r.breakdown.substitutions == direct.sub);
    CHECK(r.breakdown.deletions == direct.del);
    CHECK(r.breakdown.insertions == direct.ins);
  }
}

TEST_CASE("cpwer equals brute-force assignment enumeration") {
  Rng rng(14);
  ScoringConfig raw;
  raw.normalize = false;
  for (int trial = 0; trial < 120; ++trial) {
    SpeakerStreams ref, hyp;
    const int refs = 1 + static_cast<int>(rng.Bounded(3));
    const int hyps = static_cast<int>(rng.Bounded(4));
    bool have_words = false;
    for (int i = 0; i < refs; ++i) {
      auto tokens = RandomTokens(&rng, 6);
      have_words = have_words || !tokens.empty();
      ref.emplace_back("r" + std::to_string(i), std::move(tokens));
    }
    if (!have_words) continue;
    for (int j = 0; j < hyps; ++j) {
      hyp.emplace_back("h" + std::to_string(j), RandomTokens(&rng, 6));
    }
    const CpwerResult r = Cpwer(ref, hyp, raw);
    CHECK(r.breakdown.total() == BruteForceCpwerCost(ref, hyp));
  }
}

TEST_CASE("cpwer rate is invariant under stream relabeling and order") {
  const auto ref = Streams({{"A", "a b c"}, {"B", "d e"}});
  const auto hyp = Streams({{"1", "a b x"}, {"2", "d"}});
  const auto hyp_swapped = Streams({{"z", "d"}, {"y", "a b x"}});
  const auto ref_swapped = Streams({{"Q", "d e"}, {"P", "a b c"}});
  const double base = Cpwer(ref, hyp).breakdown.rate;
  CHECK(Cpwer(ref, hyp_swapped).breakdown.rate == doctest::Approx(base));
  CHECK(Cpwer(ref_swapped, hyp).breakdown.rate == doctest::Approx(base));
}

TEST_CASE("cpwer normalization folds case and strips punctuation") {
  const auto ref = Streams({{"A", "Hello, world!"}});
  const auto hyp = Streams({{"1", "hello world"}});
  CHECK(Cpwer(ref, hyp).breakdown.total() == 0);
  ScoringConfig raw;
  raw.normalize = false;
  CHECK(Cpwer(ref, hyp, raw).breakdown.total() == 2);
}

TEST_CASE("cpwer rejects unusable references") {
  CHECK_THROWS_WITH_AS(Cpwer({}, {}), doctest::Contains("empty reference"),
                       std::invalid_argument);
  const SpeakerStreams no_words = {{"A", {}}};
  CHECK_THROWS_WITH_AS(Cpwer(no_words, {}), doctest::Contains("no words"),
                       std::invalid_argument);
}

TEST_CASE("token normalization lowercases and drops punctuation-only tokens") {
  const auto out = NormalizeTokens(TokensFromWords("Hello, WORLD ... mid-word"));
  REQUIRE(out.size() == 3);
  CHECK(out[0].text == "hello");
  CHECK(out[1].text == "world");
  CHECK(out[2].text == "midword");
}

TEST_CASE("speaker count error is the mean absolute difference") {
  CHECK(Sce({4, 4, 3}, {4, 5, 4}) == doctest::Approx(2.0 / 3.0));
  CHECK(Sce({2, 3}, {2, 3}) == 0.0);
  CHECK(Sce({0}, {4}) == doctest::Approx(4.0));
}

TEST_CASE("speaker count error is invariant under joint permutation") {
  const std::vector<int> est = {1, 5, 2, 7};
  const std::vector<int> act = {2, 4, 2, 9};
  CHECK(Sce({7, 1, 2, 5}, {9, 2, 2, 4}) == doctest::Approx(Sce(est, act)));
}

TEST_CASE("speaker count error validates its inputs") {
  CHECK_THROWS_WITH_AS(Sce({}, {}), doctest::Contains("empty"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(Sce({1, 2}, {1}), doctest::Contains("lengths differ"),
                       std::invalid_argument);
}

TEST_CASE("streams concatenate utterances chronologically per speaker") {
  const std::vector<Utterance> utts = {
      Utterance("B", 3.0, 4.0, TokensFromWords("late")),
      Utterance("A", 0.0, 1.0, TokensFromWords("first words")),
      Utterance("A", 1.5, 2.0, TokensFromWords("then more")),
  };
  const auto streams = StreamsFromUtterances(utts);
  REQUIRE(streams.size() == 2);
  CHECK(streams[0].first == "A");
  CHECK(WordsFromTokens(streams[0].second) == "first words then more");
  CHECK(streams[1].first == "B");
  CHECK(WordsFromTokens(streams[1].second) == "late");
}

TEST_CASE("time-constrained scoring accepts an exactly covering segment") {
  const std::vector<Utterance> ref = {
      Utterance("A", 0.0, 2.0, TokensFromWords("a b c"))};
  const std::vector<TimedTokens> hyp = {{Segment(0.0, 2.0), TokensFromWords("a b c")}};
  const ErrorBreakdown b = TimeConstrainedWer(ref, hyp);
  CHECK(b.total() == 0);
  CHECK(b.ref_words == 3);
  CHECK(b.rate == 0.0);
}

TEST_CASE("time-constrained scoring deletes everything without segments") {
  const std::vector<Utterance> ref = {
      Utterance("A", 0.0, 2.0, TokensFromWords("a b c")),
      Utterance("B", 2.0, 3.0, TokensFromWords("d e"))};
  const ErrorBreakdown b = TimeConstrainedWer(ref, {});
  CHECK(b.deletions == 5);
  CHECK(b.rate == doctest::Approx(1.0));
}

TEST_CASE("segments covering disjoint halves score like the concatenation") {
  const std::vector<Utterance> ref = {
      Utterance("A", 0.0, 2.0, TokensFromWords("a b")),
      Utterance("B", 2.0, 4.0, TokensFromWords("c d"))};
  const std::vector<TimedTokens> hyp = {{Segment(0.0, 2.0), TokensFromWords("a b")},
                                        {Segment(2.0, 4.0), TokensFromWords("c d")}};
  const ErrorBreakdown constrained = TimeConstrainedWer(ref, hyp);
  CHECK(constrained.total() == 0);
  // Unconstrained oracle on the plain concatenation agrees.
  CHECK(EditDistance(TokensFromWords("a b c d"), TokensFromWords("a b c d"))
            .total() == 0);
}

TEST_CASE("the collar admits slightly shifted segments") {
  const std::vector<Utterance> ref = {
      Utterance("A", 0.0, 1.0, TokensFromWords("a b"))};
  // Segment starts 0.3 s late; the 0.5 s collar still reaches the
  // utterance, so the words align.
  const std::vector<TimedTokens> near = {{Segment(1.3, 2.0), TokensFromWords("a b")}};
  CHECK(TimeConstrainedWer(ref, near).total() == 0);
  // Far beyond the collar no segment qualifies: deletions plus the
  // segment's own insertions.
  const std::vector<TimedTokens> far = {{Segment(5.0, 6.0), TokensFromWords("a b")}};
  const ErrorBreakdown b = TimeConstrainedWer(ref, far);
  CHECK(b.deletions == 2);
  CHECK(b.insertions == 2);
}

TEST_CASE("each reference utterance routes to one segment only") {
  // One long utterance split across two perfect hypothesis segments:
  // routing is per utterance, so the second segment scores as pure
  // insertions. This pins the documented diagnostic behavior.
  const std::vector<Utterance> ref = {
      Utterance("A", 0.0, 4.0, TokensFromWords("a b c d"))};
  const std::vector<TimedTokens> hyp = {{Segment(0.0, 2.0), TokensFromWords("a b")},
                                        {Segment(2.0, 4.0), TokensFromWords("c d")}};
  const ErrorBreakdown b = TimeConstrainedWer(ref, hyp);
  CHECK(b.deletions == 2);
  CHECK(b.insertions == 2);
  CHECK(b.substitutions == 0);
}

TEST_CASE("corpus scoring pools meetings and tracks speaker counts") {
  Meeting m1;
  m1.id = "m1";
  m1.num_speakers = 2;
  m1.utterances = {Utterance("A", 0.0, 1.0, TokensFromWords("a b c")),
                   Utterance("B", 1.0, 2.0, TokensFromWords("d e"))};
  Meeting m2;
  m2.id = "m2";
  m2.num_speakers = 2;
  m2.utterances = {Utterance("A", 0.0, 1.0, TokensFromWords("x y")),
                   Utterance("B", 1.0, 2.0, TokensFromWords("z"))};

  Transcript h1;
  h1.id = "m1";
  h1.num_speakers = 2;
  h1.utterances = m1.utterances;

  const CorpusScore score = ScoreCorpus({m1, m2}, {h1});
  REQUIRE(score.meetings.size() == 2);
  CHECK(score.meetings[0].cpwer.total() == 0);
  CHECK(score.meetings[0].estimated_speakers == 2);
  // Meeting m2 has no hypothesis: every word deletes, estimate 0.
  CHECK(score.meetings[1].cpwer.deletions == 3);
  CHECK(score.meetings[1].estimated_speakers == 0);
  CHECK(score.overall.deletions == 3);
  CHECK(score.overall.ref_words == 8);
  CHECK(score.overall.rate == doctest::Approx(3.0 / 8.0));
  CHECK(score.sce == doctest::Approx(1.0));
}

TEST_CASE("corpus scoring requires at least one reference meeting") {
  CHECK_THROWS_WITH_AS(ScoreCorpus({}, {}), doctest::Contains("no reference"),
                       std::invalid_argument);
}
