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

#ifndef DIALEVAL_METRICS_H_
#define DIALEVAL_METRICS_H_

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dialeval/dataset.hpp"
#include "dialeval/tag.hpp"

namespace dialeval {

struct MetricRequest {
  std::string id;
  std::string candidate;
  std::optional<std::string> reference;
  std::optional<std::string> source;
  std::optional<DialectTag> language_tag;
};

struct MetricDescriptor {
  std::string name;
  bool needs_reference = false;
  bool needs_source = false;
  bool accepts_tag = false;
  std::optional<std::pair<double, double>> range_hint;
};

struct BleuOptions {
  // Per-codepoint tokens for text without whitespace word boundaries.
  bool char_tokenize = false;
};

struct BleuResult {
  double score = 0.0;
  // Set when candidate or reference tokenized to nothing; score is 0.
  bool empty_input = false;
};

// Sentence BLEU: geometric mean of modified n-gram precisions n=1..4,
// add-one smoothing on numerator and denominator for n >= 2, brevity
// penalty min(1, exp(1 - r/c)).
BleuResult BleuSentence(std::string_view candidate, std::string_view reference,
                        const BleuOptions& options = {});

// Sentence chrF: character n-grams 1..6 over whitespace-stripped text,
// arithmetic mean of per-order P and R across orders present in the
// reference, combined as F-beta with beta=2. Throws ConfigError("empty
// pair") when both sides are empty.
double ChrfSentence(std::string_view candidate, std::string_view reference);

// Parses the 4-column tab-separated score file (metric, example_id,
// condition, score). Rows naming a different metric than `registry_name`
// or carrying non-finite scores are hard errors with line numbers.
std::vector<ScoreRecord> LoadScoreFile(std::istream& in,
                                       std::string_view registry_name);
std::vector<ScoreRecord> LoadScoreFileAt(const std::string& path,
                                         std::string_view registry_name);

// Metric name carried by the file's first row; used when the caller has
// no registry name of its own.
std::string PeekScoreFileMetric(const std::string& path);

// Batch scorer contract used by the condition builders: one score per
// request, in request order.
using BatchScorer =
    std::function<std::vector<double>(std::span<const MetricRequest>)>;

// Native scorers wrapped as BatchScorer.
BatchScorer MakeBleuScorer(bool char_tokenize = false);
BatchScorer MakeChrfScorer();

// Runs an external scorer over the line protocol: the child prints
// {"ready": true}, then one {"id", "score"} object per request line.
// Responses are matched by id; missing or unknown ids are hard errors.
class SubprocessScorer {
 public:
  explicit SubprocessScorer(std::string command,
                            std::chrono::milliseconds timeout =
                                std::chrono::milliseconds(60000));
  ~SubprocessScorer();

  SubprocessScorer(const SubprocessScorer&) = delete;
  SubprocessScorer& operator=(const SubprocessScorer&) = delete;

  std::vector<double> Score(std::span<const MetricRequest> requests);

  BatchScorer AsBatchScorer();

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace dialeval

#endif  // DIALEVAL_METRICS_H_
