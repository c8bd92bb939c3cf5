//
// Copyright 2026 The DialectEval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cmath>
#include <sstream>

#include "dialeval/metrics.hpp"
#include "dialeval/rng.hpp"
#include "doctest.h"

namespace dialeval {
namespace {

TEST_CASE("bleu identity is exactly one") {
  const char* s = "the quick brown fox jumps over";
  CHECK(BleuSentence(s, s).score == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bleu repeated-token oracle") {
  // candidate "the the the the" vs reference "the cat sat down":
  //   p1 = 1/4 (clipped), p2 = (0+1)/(3+1), p3 = (0+1)/(2+1),
  //   p4 = (0+1)/(1+1), BP = 1 -> (1/96)^(1/4).
  const auto r = BleuSentence("the the the the", "the cat sat down");
  CHECK(r.score == doctest::Approx(std::pow(1.0 / 96.0, 0.25)).epsilon(1e-12));
  CHECK_FALSE(r.empty_input);
}

TEST_CASE("bleu brevity penalty") {
  // Candidate is a strict prefix: precisions are all 1 after smoothing
  // cancellation? No -- matches are perfect, so score = BP * smoothed mean.
  const auto full = BleuSentence("a b c d e f", "a b c d e f").score;
  const auto shorter = BleuSentence("a b c d e", "a b c d e f").score;
  CHECK(shorter < full);
  // BP factor for c=5, r=6 is exp(-1/5).
  const auto unpenalized = BleuSentence("a b c d e", "a b c d e").score;
  CHECK(shorter == doctest::Approx(unpenalized * std::exp(1.0 - 6.0 / 5.0))
                       .epsilon(1e-12));
}

TEST_CASE("bleu zero unigram overlap is zero") {
  CHECK(BleuSentence("x y z w", "a b c d").score == 0.0);
}

TEST_CASE("bleu empty input is flagged") {
  const auto r = BleuSentence("", "a b");
  CHECK(r.empty_input);
  CHECK(r.score == 0.0);
  CHECK(BleuSentence("a b", "  ").empty_input);
}

TEST_CASE("bleu character tokenization for zh") {
  BleuOptions opts;
  opts.char_tokenize = true;
  const std::string zh = "\xE4\xBD\xA0\xE5\xA5\xBD\xE5\x90\x97\xE5\x91\xA2";
  CHECK(BleuSentence(zh, zh, opts).score == doctest::Approx(1.0));
  // Swap the last two characters: the word tokenizer sees two entirely
  // different tokens and scores zero; per-codepoint tokens still overlap.
  const std::string zh_swapped =
      "\xE4\xBD\xA0\xE5\xA5\xBD\xE5\x91\xA2\xE5\x90\x97";
  CHECK(BleuSentence(zh_swapped, zh).score == 0.0);
  CHECK(BleuSentence(zh_swapped, zh, opts).score > 0.0);

  // The batch scorer switches automatically on the zh language tag.
  auto scorer = MakeBleuScorer();
  MetricRequest req{"r1", zh, zh, std::nullopt, DialectTag::Parse("zh-CN")};
  const auto scores = scorer(std::span<const MetricRequest>(&req, 1));
  CHECK(scores.at(0) == doctest::Approx(1.0));
}

TEST_CASE("chrf identity and order-2 oracle") {
  CHECK(ChrfSentence("abcdef", "abcdef") == doctest::Approx(1.0));
  // "ab" vs "ba": unigrams both match (P1=R1=1), the single bigram does
  // not (P2=R2=0); arithmetic means P=R=1/2, F-beta = 1/2.
  CHECK(ChrfSentence("ab", "ba") == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("chrf strips whitespace before n-grams") {
  CHECK(ChrfSentence("a b", "ab") == doctest::Approx(1.0));
  CHECK(ChrfSentence("ab\tcd", " abcd ") == doctest::Approx(1.0));
}

TEST_CASE("chrf disjoint and empty cases") {
  CHECK(ChrfSentence("xyz", "abc") == 0.0);
  CHECK(ChrfSentence("", "abc") == 0.0);
  CHECK(ChrfSentence("abc", "") == 0.0);
  CHECK_THROWS_AS(ChrfSentence("", "  "), ConfigError);
}

TEST_CASE("metric scores stay in range on random inputs") {
  Rng rng(2024);
  const char* vocab[] = {"a", "b", "cat", "dog", "run", "the", "xyz"};
  for (int trial = 0; trial < 300; ++trial) {
    auto sample = [&] {
      std::string s;
      const int len = 1 + static_cast<int>(rng.NextBelow(8));
      for (int i = 0; i < len; ++i) {
        if (i) s += ' ';
        s += vocab[rng.NextBelow(7)];
      }
      return s;
    };
    const auto cand = sample();
    const auto ref = sample();
    const auto bleu = BleuSentence(cand, ref).score;
    const auto chrf = ChrfSentence(cand, ref);
    CHECK(bleu >= 0.0);
    CHECK(bleu <= 1.0);
    CHECK(chrf >= 0.0);
    CHECK(chrf <= 1.0);
    CHECK(BleuSentence(cand, cand).score == doctest::Approx(1.0));
    CHECK(ChrfSentence(ref, ref) == doctest::Approx(1.0));
  }
}

TEST_CASE("score file loader accepts well-formed rows") {
  std::istringstream in(
      "chrf\te1\tdialect\t0.5\n"
      "chrf\te1\tperturb:replace\t0.25\n");
  const auto records = LoadScoreFile(in, "chrf");
  REQUIRE(records.size() == 2);
  CHECK(records[1].condition.Render() == "perturb:replace");
  CHECK(records[1].score == 0.25);
}

TEST_CASE("score file loader rejects malformed rows with line numbers") {
  auto expect_line = [](const char* text, std::size_t line) {
    std::istringstream in(text);
    try {
      LoadScoreFile(in, "chrf");
      FAIL_CHECK("expected DataError for: " << text);
    } catch (const DataError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("chrf\te1\tdialect\t0.5\nbleu\te2\tdialect\t0.5\n", 2);
  expect_line("chrf\te1\tdialect\tnan\n", 1);
  expect_line("chrf\te1\tdialect\t0.5x\n", 1);
  expect_line("chrf\te1\tdialect\n", 1);
  expect_line("chrf\te1\tsideways\t0.5\n", 1);
}

TEST_CASE("subprocess scorer round-trips ids") {
  SubprocessScorer scorer(
      std::string("python3 ") + DIALEVAL_TEST_DATA_DIR + "/echo_scorer.py");
  std::vector<MetricRequest> requests = {
      {"a", "abc", std::string("abc"), std::nullopt, std::nullopt},
      {"b", "abcdef", std::string("abc"), std::nullopt, std::nullopt},
      {"c", "a", std::nullopt, std::nullopt, std::nullopt},
  };
  const auto scores = scorer.Score(requests);
  REQUIRE(scores.size() == 3);
  // The fixture scores len(candidate) / 10.
  CHECK(scores[0] == doctest::Approx(0.3));
  CHECK(scores[1] == doctest::Approx(0.6));
  CHECK(scores[2] == doctest::Approx(0.1));
  // A second batch reuses the same child.
  const auto again = scorer.Score(requests);
  CHECK(again == scores);
}

TEST_CASE("subprocess scorer rejects missing and unknown ids") {
  std::vector<MetricRequest> requests = {
      {"a", "abc", std::nullopt, std::nullopt, std::nullopt},
      {"b", "de", std::nullopt, std::nullopt, std::nullopt},
  };
  {
    SubprocessScorer dropper(std::string("python3 ") + DIALEVAL_TEST_DATA_DIR +
                                 "/echo_scorer.py --drop b",
                             std::chrono::milliseconds(3000));
    CHECK_THROWS(dropper.Score(requests));
  }
  {
    SubprocessScorer renamer(std::string("python3 ") + DIALEVAL_TEST_DATA_DIR +
                             "/echo_scorer.py --rename-to zz");
    CHECK_THROWS(renamer.Score(requests));
  }
}

}  // namespace
}  // namespace dialeval
