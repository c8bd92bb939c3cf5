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

#ifndef DIALEVAL_CONDITIONS_H_
#define DIALEVAL_CONDITIONS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialeval/dataset.hpp"
#include "dialeval/metrics.hpp"
#include "dialeval/tag.hpp"

namespace dialeval {

enum class PlanMode { kMicro, kSentence, kQe, kQeWithRef };

struct ConditionPlan {
  PlanMode mode = PlanMode::kMicro;
  MetricDescriptor metric;
  // Dialect used as reference in sentence mode and QE-with-reference mode.
  std::optional<DialectTag> reference_dialect;
  std::optional<DialectTag> mt_locale;
};

struct PerturbationChoice {
  std::string example_id;
  std::string chosen_type;  // "replace", "insert", or "delete"
  std::string text;
};

// Preference order: replace, then insert, then delete. nullopt signals
// that the example is excluded from analysis.
std::optional<PerturbationChoice> SelectPerturbation(
    const std::string& example_id,
    const std::map<std::string, std::string>& perturbations);

struct PerturbLexicon {
  std::map<std::string, std::string> replace;   // token -> substitute
  std::vector<std::string> insert_modifiers;    // e.g. "not"
  std::map<std::string, std::vector<std::string>> stopwords;  // by language

  static PerturbLexicon Builtin();
  static PerturbLexicon LoadFile(const std::string& path);
};

// Rule-based perturbation provider for desk-scale fixtures. Returns
// nullopt when the perturbation is inapplicable; otherwise the output
// differs from the input. Deterministic given seed.
std::optional<std::string> PerturbBuiltin(const std::string& sentence,
                                          const std::string& type,
                                          const PerturbLexicon& lexicon,
                                          std::uint64_t seed,
                                          const std::string& language = "en");

struct DroppedExample {
  std::string id;
  std::string reason;
};

// Micro protocol: per data point, condition=dialect m(rewrite, base) and
// condition=perturb m(chosen perturbation, base). Points whose
// perturbations all failed land in `dropped`.
std::vector<ScoreRecord> MicroConditionScores(
    const std::vector<MicroDataPoint>& points, const std::string& metric_name,
    const BatchScorer& scorer, std::vector<DroppedExample>* dropped = nullptr,
    const std::optional<DialectTag>& language_tag = std::nullopt);

// Sentence protocol: dialect m(y_j, y_k), mt m(y_j, mt), perturb
// m(y_j, perturbed_mt), where k is the plan's reference dialect and j the
// other one. Examples missing mt or perturbed_mt are dropped with reason.
std::vector<ScoreRecord> SentenceConditionScores(
    const std::vector<SentenceExample>& examples, const ConditionPlan& plan,
    const BatchScorer& scorer, std::vector<DroppedExample>* dropped = nullptr);

// QE protocols. Without reference: per dialect j m(en, y_j) plus mt and
// perturb sides. With reference: candidates {other dialect, mt, perturb}
// scored against the reference dialect with the English source attached.
std::vector<ScoreRecord> QeConditionScores(
    const std::vector<SentenceExample>& examples, const ConditionPlan& plan,
    const BatchScorer& scorer, std::vector<DroppedExample>* dropped = nullptr);

void WriteDroppedSidecar(std::ostream& out,
                         const std::vector<DroppedExample>& dropped);

}  // namespace dialeval

#endif  // DIALEVAL_CONDITIONS_H_
