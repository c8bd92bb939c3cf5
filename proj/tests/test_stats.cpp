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
#include <string>
#include <vector>

#include "dialeval/rng.hpp"
#include "dialeval/stats.hpp"
#include "doctest.h"

namespace dialeval {
namespace {

ScoreRecord Rec(const std::string& id, const Condition& c, double score) {
  return {"m", id, c, score};
}

const Condition kDialect = Condition::Dialect();
const Condition kPerturb = Condition::Perturb();
const Condition kMt = Condition::Mt();

TEST_CASE("regression on constant data is exactly zero everywhere") {
  std::vector<ScoreRecord> records;
  for (int i = 0; i < 4; ++i) {
    const auto id = "e" + std::to_string(i);
    records.push_back(Rec(id, kDialect, 0.7));
    records.push_back(Rec(id, kPerturb, 0.7));
  }
  const auto fit = FitMixedEffects(records, kPerturb);
  CHECK(fit.contrasts.at(kDialect).estimate ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.contrasts.at(kDialect).standard_error ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.sigma2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.tau2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.grand_mean == doctest::Approx(0.7));
}

TEST_CASE("regression recovers a pure column shift") {
  // y_ij = theta_i + phi_j with no noise: contrast exact, sigma2 = 0.
  std::vector<ScoreRecord> records;
  const double theta[] = {0.1, 0.4, 0.2, 0.9, 0.5};
  for (int i = 0; i < 5; ++i) {
    const auto id = "e" + std::to_string(i);
    records.push_back(Rec(id, kDialect, theta[i] + 0.25));
    records.push_back(Rec(id, kPerturb, theta[i]));
    records.push_back(Rec(id, kMt, theta[i] - 0.1));
  }
  const auto fit = FitMixedEffects(records, kPerturb);
  CHECK(fit.contrasts.at(kDialect).estimate == doctest::Approx(0.25));
  CHECK(fit.contrasts.at(kMt).estimate == doctest::Approx(-0.1));
  CHECK(fit.sigma2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.tau2 > 0.0);
  CHECK(fit.n_examples == 5);
  CHECK(fit.n_conditions == 3);
}

TEST_CASE("regression estimates are scale and shift equivariant") {
  Rng rng(31);
  std::vector<ScoreRecord> base;
  for (int i = 0; i < 12; ++i) {
    const auto id = "e" + std::to_string(i);
    base.push_back(Rec(id, kDialect, rng.NextDouble()));
    base.push_back(Rec(id, kPerturb, rng.NextDouble()));
    base.push_back(Rec(id, kMt, rng.NextDouble()));
  }
  auto scaled = base;
  for (auto& r : scaled) r.score = 3.0 * r.score + 10.0;
  const auto f0 = FitMixedEffects(base, kPerturb);
  const auto f1 = FitMixedEffects(scaled, kPerturb);
  CHECK(f1.contrasts.at(kDialect).estimate ==
        doctest::Approx(3.0 * f0.contrasts.at(kDialect).estimate));
  CHECK(f1.contrasts.at(kDialect).standard_error ==
        doctest::Approx(3.0 * f0.contrasts.at(kDialect).standard_error));
  CHECK(f1.sigma2 == doctest::Approx(9.0 * f0.sigma2));
  CHECK(f1.grand_mean == doctest::Approx(3.0 * f0.grand_mean + 10.0));
}

TEST_CASE("regression rejects unbalanced designs naming the offender") {
  std::vector<ScoreRecord> records = {
      Rec("a", kDialect, 0.5), Rec("a", kPerturb, 0.4),
      Rec("b", kDialect, 0.6)};
  try {
    FitMixedEffects(records, kPerturb);
    FAIL("expected error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
}

TEST_CASE("regression rejects degenerate designs") {
  // One condition only.
  CHECK_THROWS(FitMixedEffects(
      std::vector<ScoreRecord>{Rec("a", kDialect, 0.5),
                               Rec("b", kDialect, 0.4)},
      kDialect));
  // One example only.
  CHECK_THROWS(FitMixedEffects(
      std::vector<ScoreRecord>{Rec("a", kDialect, 0.5),
                               Rec("a", kPerturb, 0.4)},
      kPerturb));
  // Duplicate cell.
  CHECK_THROWS(FitMixedEffects(
      std::vector<ScoreRecord>{Rec("a", kDialect, 0.5),
                               Rec("a", kDialect, 0.6),
                               Rec("a", kPerturb, 0.4),
                               Rec("b", kDialect, 0.5),
                               Rec("b", kPerturb, 0.4)},
      kPerturb));
  // Missing reference condition.
  CHECK_THROWS(FitMixedEffects(
      std::vector<ScoreRecord>{Rec("a", kDialect, 0.5),
                               Rec("a", kPerturb, 0.4),
                               Rec("b", kDialect, 0.5),
                               Rec("b", kPerturb, 0.4)},
      kMt));
}

TEST_CASE("contrast interval is centered and degenerate when noiseless") {
  std::vector<ScoreRecord> records;
  for (int i = 0; i < 6; ++i) {
    const auto id = "e" + std::to_string(i);
    records.push_back(Rec(id, kDialect, 0.1 * i + 0.3));
    records.push_back(Rec(id, kPerturb, 0.1 * i));
  }
  const auto fit = FitMixedEffects(records, kPerturb);
  const auto ci = ContrastWithCi(fit, kDialect, kPerturb, 0.95);
  CHECK(ci.estimate == doctest::Approx(0.3));
  // Additive structure means zero residual variance: zero-width interval.
  CHECK(ci.lower == doctest::Approx(0.3));
  CHECK(ci.upper == doctest::Approx(0.3));
  // Same-condition contrast is identically zero.
  const auto self_ci = ContrastWithCi(fit, kDialect, kDialect, 0.95);
  CHECK(self_ci.estimate == 0.0);
}

TEST_CASE("confidence interval width grows with confidence") {
  Rng rng(8);
  std::vector<ScoreRecord> records;
  for (int i = 0; i < 20; ++i) {
    const auto id = "e" + std::to_string(i);
    records.push_back(Rec(id, kDialect, 0.5 + 0.1 * rng.NextGaussian()));
    records.push_back(Rec(id, kPerturb, 0.3 + 0.1 * rng.NextGaussian()));
  }
  const auto fit = FitMixedEffects(records, kPerturb);
  const auto ci90 = ContrastWithCi(fit, kDialect, kPerturb, 0.90);
  const auto ci99 = ContrastWithCi(fit, kDialect, kPerturb, 0.99);
  CHECK(ci90.lower < ci90.estimate);
  CHECK(ci90.estimate < ci90.upper);
  CHECK(ci99.upper - ci99.lower > ci90.upper - ci90.lower);
}

TEST_CASE("win loss counting uses strict comparison") {
  const std::vector<ScoreRecord> records = {
      Rec("a", kDialect, 0.9), Rec("a", kPerturb, 0.4),
      Rec("b", kDialect, 0.2), Rec("b", kPerturb, 0.8),
      Rec("c", kDialect, 0.5), Rec("c", kPerturb, 0.5),
      Rec("d", kDialect, 0.7), Rec("d", kPerturb, 0.1)};
  const auto counts = CountWinLoss(records, kDialect, kPerturb);
  CHECK(counts.wins == 2);
  CHECK(counts.losses == 1);
  CHECK(counts.ties == 1);
  // The reverse comparison swaps wins and losses.
  const auto rev = CountWinLoss(records, kPerturb, kDialect);
  CHECK(rev.wins == counts.losses);
  CHECK(rev.losses == counts.wins);
  CHECK(rev.ties == counts.ties);
}

TEST_CASE("win loss counting rejects a missing pair") {
  const std::vector<ScoreRecord> records = {Rec("a", kDialect, 0.9)};
  CHECK_THROWS(CountWinLoss(records, kDialect, kPerturb));
}

TEST_CASE("binomial tail hand values") {
  CHECK(BinomialOneTailed(0, 17) == 1.0);  // P(X >= 0) is certain
  CHECK(BinomialOneTailed(10, 10) == doctest::Approx(std::pow(0.5, 10)));
  // P(X >= 8 | n=10): (45 + 10 + 1) / 1024.
  CHECK(BinomialOneTailed(8, 10) == doctest::Approx(56.0 / 1024.0));
  CHECK(BinomialOneTailed(5, 9) == doctest::Approx(0.5));  // symmetry point
}

TEST_CASE("binomial tail is monotone in wins") {
  double prev = 2.0;
  for (long w = 0; w <= 30; ++w) {
    const double p = BinomialOneTailed(w, 30);
    CHECK(p <= prev);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    prev = p;
  }
}

TEST_CASE("binomial tail survives large trial counts") {
  const double p = BinomialOneTailed(5400, 10000);
  CHECK(p > 0.0);
  CHECK(p < 1e-14);  // deep in the tail, but not flushed to zero
  CHECK(BinomialOneTailed(5000, 10000) > 0.4);
}

TEST_CASE("win loss result excludes ties from trials") {
  const auto r = MakeWinLossResult({18, 2, 5}, 0.05, 5);
  CHECK(r.trials == 20);
  CHECK(r.ties == 5);
  CHECK(r.success_rate == doctest::Approx(0.9));
  CHECK(r.success_rate_defined);
  CHECK(r.p_value == doctest::Approx(BinomialOneTailed(18, 20)));
  CHECK(r.significant_after_bonferroni == (r.p_value < 0.05 / 5));

  const auto all_ties = MakeWinLossResult({0, 0, 7}, 0.05, 1);
  CHECK_FALSE(all_ties.success_rate_defined);
  CHECK(all_ties.p_value == 1.0);
  CHECK_FALSE(all_ties.significant_after_bonferroni);
}

TEST_CASE("bonferroni boundary is exclusive") {
  const auto entries = Bonferroni(
      {{"t1", 0.009}, {"t2", 0.010}, {"t3", 0.2}, {"t4", 0.0099}, {"t5", 1.0}},
      0.05);
  REQUIRE(entries.size() == 5);
  CHECK(entries[0].significant);         // 0.009 < 0.01
  CHECK_FALSE(entries[1].significant);   // 0.010 is not < 0.01
  CHECK_FALSE(entries[2].significant);
  CHECK(entries[3].significant);
  CHECK_FALSE(entries[4].significant);
  // A single test keeps the raw threshold.
  CHECK(Bonferroni({{"only", 0.04}}, 0.05)[0].significant);
  // Family size can exceed the listed tests.
  CHECK_FALSE(Bonferroni({{"only", 0.04}}, 0.05, 10)[0].significant);
}

AwarenessObservation Obs(const char* cand, const char* input, double score) {
  return {*DialectTag::Parse(cand), *DialectTag::Parse(input), score};
}

TEST_CASE("awareness requires strict dominance of the matched tag") {
  const std::vector<AwarenessObservation> obs = {
      Obs("pt-BR", "pt-BR", 0.71), Obs("pt-BR", "pt-PT", 0.68),
      Obs("pt-PT", "pt-PT", 0.75), Obs("pt-PT", "pt-BR", 0.78)};
  const auto rows = AwarenessEval(obs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].candidate_dialect.Render() == "pt-BR");
  CHECK(rows[0].aware);         // 0.71 > 0.68
  CHECK_FALSE(rows[1].aware);   // 0.75 < 0.78
}

TEST_CASE("awareness ties are not aware and means aggregate observations") {
  const std::vector<AwarenessObservation> tie = {
      Obs("zh-CN", "zh-CN", 0.6), Obs("zh-CN", "zh-TW", 0.6)};
  CHECK_FALSE(AwarenessEval(tie)[0].aware);
  // Two observations per cell average before comparison.
  const std::vector<AwarenessObservation> avg = {
      Obs("zh-CN", "zh-CN", 0.9), Obs("zh-CN", "zh-CN", 0.1),
      Obs("zh-CN", "zh-TW", 0.4)};
  const auto rows = AwarenessEval(avg);
  CHECK(rows[0].scores_by_input_tag.at(*DialectTag::Parse("zh-CN")) ==
        doctest::Approx(0.5));
  CHECK(rows[0].aware);
}

TEST_CASE("awareness is invariant to observation order") {
  std::vector<AwarenessObservation> obs = {
      Obs("pt-BR", "pt-PT", 0.68), Obs("pt-PT", "pt-BR", 0.78),
      Obs("pt-BR", "pt-BR", 0.71), Obs("pt-PT", "pt-PT", 0.75)};
  const auto rows = AwarenessEval(obs);
  CHECK(rows[0].aware);
  CHECK_FALSE(rows[1].aware);
}

TEST_CASE("awareness rejects degenerate inputs") {
  // No mismatched tag to compare against.
  CHECK_THROWS(AwarenessEval(
      std::vector<AwarenessObservation>{Obs("pt-BR", "pt-BR", 0.7)}));
  // Matched tag never observed.
  CHECK_THROWS(AwarenessEval(
      std::vector<AwarenessObservation>{Obs("pt-BR", "pt-PT", 0.7)}));
}

TEST_CASE("darr hand values and tie handling") {
  const std::map<std::string, double> scores = {
      {"a", 0.9}, {"b", 0.5}, {"c", 0.5}, {"d", 0.1}};
  using Pair = std::pair<std::string, std::string>;
  // Human prefers the first element of each pair.
  const std::vector<Pair> all_concordant = {{"a", "b"}, {"b", "d"}};
  CHECK(Darr(scores, all_concordant) == doctest::Approx(1.0));
  const std::vector<Pair> all_discordant = {{"b", "a"}, {"d", "b"}};
  CHECK(Darr(scores, all_discordant) == doctest::Approx(-1.0));
  // A tie counts as discordant: (1 - 1) / 2 = 0.
  const std::vector<Pair> with_tie = {{"a", "d"}, {"b", "c"}};
  CHECK(Darr(scores, with_tie) == doctest::Approx(0.0));
  const std::vector<Pair> quarter = {{"a", "b"}, {"a", "d"}, {"b", "d"},
                                     {"d", "a"}};
  CHECK(Darr(scores, quarter) == doctest::Approx(0.5));
  CHECK_THROWS(Darr(scores, std::vector<Pair>{}));
  CHECK_THROWS(Darr(scores, std::vector<Pair>{{"a", "missing"}}));
}

TEST_CASE("darr is antisymmetric under preference reversal") {
  Rng rng(17);
  std::map<std::string, double> scores;
  for (int i = 0; i < 10; ++i) {
    scores["s" + std::to_string(i)] = rng.NextDouble();
  }
  using Pair = std::pair<std::string, std::string>;
  std::vector<Pair> pairs, reversed;
  for (int t = 0; t < 40; ++t) {
    const auto a = "s" + std::to_string(rng.NextBelow(10));
    const auto b = "s" + std::to_string(rng.NextBelow(10));
    if (a == b) continue;
    pairs.push_back({a, b});
    reversed.push_back({b, a});
  }
  // With no ties among distinct random scores: reversing flips the sign.
  CHECK(Darr(scores, pairs) == doctest::Approx(-Darr(scores, reversed)));
}

}  // namespace
}  // namespace dialeval
