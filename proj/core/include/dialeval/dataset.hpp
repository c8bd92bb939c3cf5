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

#ifndef DIALEVAL_DATASET_H_
#define DIALEVAL_DATASET_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dialeval/tag.hpp"

namespace dialeval {

// Hard error for unparseable input; carries the 1-based line number.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DialectRewrite {
  std::string feature;
  std::string text;
};

// One base sentence with its dialect rewrites and semantic perturbations.
struct MicroExample {
  std::string id;
  std::string base;
  std::vector<DialectRewrite> dialect_rewrites;
  // keys: "replace", "insert", "delete"; absent key = perturbation failed
  std::map<std::string, std::string> perturbations;
};

struct MtOutput {
  DialectTag locale;  // the locale the MT system most strongly targets
  std::string text;
};

// English source with parallel dialect translations plus optional MT and
// perturbed-MT sides.
struct SentenceExample {
  std::string id;
  std::string english;
  std::map<DialectTag, std::string> translations;
  std::optional<MtOutput> mt;
  std::optional<std::string> perturbed_mt;
  std::optional<std::string> perturbed_english;
};

// The atom of all statistics: one scalar score in one condition.
struct ScoreRecord {
  std::string metric;
  std::string example_id;
  Condition condition;
  double score = 0.0;
};

struct Violation {
  std::string id;       // offending example id, may be empty
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport ValidateMicro(const std::vector<MicroExample>& dataset);
ValidationReport ValidateSentence(const std::vector<SentenceExample>& dataset);

// JSONL loaders. All text fields are canonically composed on ingestion.
std::vector<MicroExample> LoadMicroDataset(std::istream& in);
std::vector<SentenceExample> LoadSentenceDataset(std::istream& in);
std::vector<MicroExample> LoadMicroDatasetFile(const std::string& path);
std::vector<SentenceExample> LoadSentenceDatasetFile(const std::string& path);

// Keeps only example ids carrying a score for every required condition.
// Output order is deterministic: ascending (example id, condition).
struct FilterResult {
  std::vector<ScoreRecord> kept;
  std::vector<std::string> dropped_example_ids;  // ascending
};
FilterResult CompleteCaseFilter(const std::vector<ScoreRecord>& records,
                                const std::set<Condition>& required);

// Expands multiple dialect rewrites into independent data points with ids
// "<base_id>#<k>"; single-rewrite examples keep their id.
struct MicroDataPoint {
  std::string id;
  std::string base;
  std::string feature;
  std::string rewrite;
  std::map<std::string, std::string> perturbations;
};
std::vector<MicroDataPoint> ExpandRewrites(const std::vector<MicroExample>& dataset);

}  // namespace dialeval

#endif  // DIALEVAL_DATASET_H_
