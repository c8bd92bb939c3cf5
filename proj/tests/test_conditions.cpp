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

#include <algorithm>

#include "dialeval/conditions.hpp"
#include "dialeval/fixtures.hpp"
#include "dialeval/metrics.hpp"
#include "doctest.h"

namespace dialeval {
namespace {

TEST_CASE("perturbation preference order") {
  std::map<std::string, std::string> all = {
      {"replace", "r"}, {"insert", "i"}, {"delete", "d"}};
  CHECK(SelectPerturbation("e", all)->chosen_type == "replace");
  all.erase("replace");
  CHECK(SelectPerturbation("e", all)->chosen_type == "insert");
  all.erase("insert");
  CHECK(SelectPerturbation("e", all)->chosen_type == "delete");
  all.erase("delete");
  CHECK_FALSE(SelectPerturbation("e", all).has_value());
  // An empty string counts as a failed perturbation.
  CHECK(SelectPerturbation("e", {{"replace", ""}, {"delete", "d"}})
            ->chosen_type == "delete");
}

TEST_CASE("builtin replace flips an antonym or number") {
  const auto lex = PerturbLexicon::Builtin();
  const auto out = PerturbBuiltin("we have two tailors", "replace", lex, 7);
  REQUIRE(out);
  CHECK(*out == "we have three tailors");
  // No replaceable token -> inapplicable.
  CHECK_FALSE(PerturbBuiltin("hello world", "replace", lex, 7));
}

TEST_CASE("builtin insert places a modifier before the first content word") {
  PerturbLexicon lex = PerturbLexicon::Builtin();
  lex.insert_modifiers = {"not"};  // pin the choice
  const auto out = PerturbBuiltin("it is simple", "insert", lex, 7);
  REQUIRE(out);
  CHECK(*out == "it is not simple");
}

TEST_CASE("builtin delete keeps short sentences intact") {
  const auto lex = PerturbLexicon::Builtin();
  CHECK_FALSE(PerturbBuiltin("hi", "delete", lex, 7));
  CHECK_FALSE(PerturbBuiltin("hi there", "delete", lex, 7));
  const auto out = PerturbBuiltin("the tall tailor waved", "delete", lex, 7);
  REQUIRE(out);
  CHECK(*out != "the tall tailor waved");
}

TEST_CASE("builtin perturbations are deterministic and change the text") {
  const auto lex = PerturbLexicon::Builtin();
  const auto data = MakeAdversarialMicroDataset(40, 5);
  for (const auto& ex : data) {
    for (const char* type : {"replace", "insert", "delete"}) {
      const auto a = PerturbBuiltin(ex.base, type, lex, 11);
      const auto b = PerturbBuiltin(ex.base, type, lex, 11);
      CHECK(a == b);
      if (a) CHECK(*a != ex.base);
    }
  }
}

TEST_CASE("unknown perturbation type is a config error") {
  CHECK_THROWS_AS(
      PerturbBuiltin("a b c", "typo", PerturbLexicon::Builtin(), 1),
      ConfigError);
}

TEST_CASE("micro condition scores pair dialect and perturb per point") {
  const auto data = MakeAdversarialMicroDataset(5, 3);
  const auto points = ExpandRewrites(data);
  std::vector<DroppedExample> dropped;
  const auto records =
      MicroConditionScores(points, "chrf", MakeChrfScorer(), &dropped);
  CHECK(dropped.empty());
  REQUIRE(records.size() == 2 * points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& d = records[2 * i];
    const auto& p = records[2 * i + 1];
    CHECK(d.example_id == p.example_id);
    CHECK(d.condition == Condition::Dialect());
    CHECK(p.condition == Condition::Perturb());
    // Scores agree with direct metric calls against the base sentence.
    const auto it = std::find_if(points.begin(), points.end(),
                                 [&](const MicroDataPoint& pt) {
                                   return pt.id == d.example_id;
                                 });
    REQUIRE(it != points.end());
    CHECK(d.score == doctest::Approx(ChrfSentence(it->rewrite, it->base)));
  }
}

TEST_CASE("micro points with no surviving perturbation are dropped") {
  std::vector<MicroDataPoint> points = {
      {"ok", "one cat sat", "feature", "one feline sat",
       {{"replace", "two cat sat"}}},
      {"bad", "one cat sat", "feature", "one feline sat", {}},
  };
  std::vector<DroppedExample> dropped;
  const auto records =
      MicroConditionScores(points, "chrf", MakeChrfScorer(), &dropped);
  CHECK(records.size() == 2);
  REQUIRE(dropped.size() == 1);
  CHECK(dropped[0].id == "bad");
  CHECK(dropped[0].reason == "all_perturbations_failed");
}

SentenceExample MakeSentence(const std::string& id, bool with_mt = true,
                             bool with_perturbed = true) {
  SentenceExample ex;
  ex.id = id;
  ex.english = "the tailor waved";
  ex.translations[*DialectTag::Parse("pt-BR")] = "o alfaiate acenou";
  ex.translations[*DialectTag::Parse("pt-PT")] = "o alfaiate fez sinal";
  if (with_mt) ex.mt = MtOutput{*DialectTag::Parse("pt-BR"), "o alfaiate aceno"};
  if (with_perturbed) ex.perturbed_mt = "o padeiro acenou";
  return ex;
}

ConditionPlan SentencePlan() {
  ConditionPlan plan;
  plan.mode = PlanMode::kSentence;
  plan.metric = {"chrf", true, false, false, {{0.0, 1.0}}};
  plan.reference_dialect = DialectTag::Parse("pt-PT");
  return plan;
}

TEST_CASE("sentence condition scores produce three records per example") {
  const std::vector<SentenceExample> examples = {MakeSentence("s1"),
                                                 MakeSentence("s2")};
  std::vector<DroppedExample> dropped;
  const auto records = SentenceConditionScores(examples, SentencePlan(),
                                               MakeChrfScorer(), &dropped);
  CHECK(dropped.empty());
  REQUIRE(records.size() == 6);
  // The candidate is the non-reference dialect (pt-BR), scored against the
  // reference translation, the MT output, and the perturbed MT output.
  CHECK(records[0].condition == Condition::Dialect());
  CHECK(records[0].score ==
        doctest::Approx(ChrfSentence("o alfaiate acenou",
                                     "o alfaiate fez sinal")));
  CHECK(records[1].condition == Condition::Perturb());
  CHECK(records[1].score ==
        doctest::Approx(ChrfSentence("o alfaiate acenou", "o padeiro acenou")));
  CHECK(records[2].condition == Condition::Mt());
  CHECK(records[2].score ==
        doctest::Approx(ChrfSentence("o alfaiate acenou", "o alfaiate aceno")));
}

TEST_CASE("sentence mode drops examples missing sides") {
  const std::vector<SentenceExample> examples = {
      MakeSentence("s1"), MakeSentence("s2", /*with_mt=*/false),
      MakeSentence("s3", true, /*with_perturbed=*/false)};
  std::vector<DroppedExample> dropped;
  const auto records = SentenceConditionScores(examples, SentencePlan(),
                                               MakeChrfScorer(), &dropped);
  CHECK(records.size() == 3);
  REQUIRE(dropped.size() == 2);
  CHECK(dropped[0].id == "s2");
  CHECK(dropped[0].reason == "missing_mt");
  CHECK(dropped[1].id == "s3");
  CHECK(dropped[1].reason == "missing_perturbed_mt");
}

TEST_CASE("sentence mode requires a reference-based metric") {
  auto plan = SentencePlan();
  plan.metric.needs_reference = false;
  CHECK_THROWS_AS(
      SentenceConditionScores({MakeSentence("s1")}, plan, MakeChrfScorer()),
      ConfigError);
}

TEST_CASE("qe-with-reference mode emits dialect, mt and perturb rows") {
  auto plan = SentencePlan();
  plan.mode = PlanMode::kQeWithRef;
  const std::vector<SentenceExample> examples = {MakeSentence("q1")};
  const auto records = QeConditionScores(examples, plan, MakeChrfScorer());
  REQUIRE(records.size() == 3);
  CHECK(records[0].condition == Condition::Dialect("pt-BR"));
  CHECK(records[1].condition == Condition::Perturb());
  CHECK(records[2].condition == Condition::Mt());
}

TEST_CASE("qe mode requires a source-based metric") {
  ConditionPlan plan;
  plan.mode = PlanMode::kQe;
  plan.metric = {"chrf", true, false, false, {}};
  CHECK_THROWS_AS(QeConditionScores({MakeSentence("q1")}, plan,
                                    MakeChrfScorer()),
                  ConfigError);
}

TEST_CASE("calibration: identical sides score one across conditions") {
  SentenceExample ex;
  ex.id = "cal";
  ex.english = "same";
  ex.translations[*DialectTag::Parse("pt-BR")] = "igual aqui";
  ex.translations[*DialectTag::Parse("pt-PT")] = "igual aqui";
  ex.mt = MtOutput{*DialectTag::Parse("pt-BR"), "igual aqui"};
  ex.perturbed_mt = "igual aqui";
  const auto records =
      SentenceConditionScores({ex}, SentencePlan(), MakeChrfScorer());
  REQUIRE(records.size() == 3);
  for (const auto& r : records) CHECK(r.score == doctest::Approx(1.0));
}

}  // namespace
}  // namespace dialeval
