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

#include "dialeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "dialeval/text.hpp"

namespace dialeval {

namespace {

constexpr int kBleuMaxOrder = 4;
constexpr int kChrfMaxOrder = 6;
constexpr double kChrfBeta = 2.0;

// Multiset of n-grams keyed by joined token text.
std::map<std::string, int> CountNgrams(const std::vector<std::string>& tokens,
                                       int order) {
  std::map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < order; ++k) {
      if (k) key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

int ClippedMatches(const std::map<std::string, int>& cand,
                   const std::map<std::string, int>& ref) {
  int matches = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) matches += std::min(count, it->second);
  }
  return matches;
}

}  // namespace

BleuResult BleuSentence(std::string_view candidate, std::string_view reference,
                        const BleuOptions& options) {
  const auto tokenize = [&](std::string_view text) {
    return options.char_tokenize ? SplitCodepoints(text) : SplitWhitespace(text);
  };
  const auto cand = tokenize(candidate);
  const auto ref = tokenize(reference);
  if (cand.empty() || ref.empty()) return {0.0, true};

  double log_precision_sum = 0.0;
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    const auto cand_counts = CountNgrams(cand, n);
    const auto ref_counts = CountNgrams(ref, n);
    double matches = ClippedMatches(cand_counts, ref_counts);
    double total = 0;
    for (const auto& [gram, count] : cand_counts) total += count;
    if (n >= 2) {
      matches += 1.0;
      total += 1.0;
    }
    if (total == 0.0 || matches == 0.0) return {0.0, false};
    log_precision_sum += std::log(matches / total);
  }

  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double brevity = std::min(1.0, std::exp(1.0 - r / c));
  return {brevity * std::exp(log_precision_sum / kBleuMaxOrder), false};
}

double ChrfSentence(std::string_view candidate, std::string_view reference) {
  const auto cand = SplitCodepoints(candidate);
  const auto ref = SplitCodepoints(reference);
  if (cand.empty() && ref.empty()) throw ConfigError("empty pair");
  if (cand.empty() || ref.empty()) return 0.0;

  double precision_sum = 0.0, recall_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= kChrfMaxOrder; ++n) {
    const auto ref_counts = CountNgrams(ref, n);
    if (ref_counts.empty()) break;  // reference too short for this order
    const auto cand_counts = CountNgrams(cand, n);
    double cand_total = 0, ref_total = 0;
    for (const auto& [g, c] : cand_counts) cand_total += c;
    for (const auto& [g, c] : ref_counts) ref_total += c;
    const double matches = ClippedMatches(cand_counts, ref_counts);
    precision_sum += cand_total > 0 ? matches / cand_total : 0.0;
    recall_sum += matches / ref_total;
    ++orders;
  }
  if (orders == 0) return 0.0;
  const double p = precision_sum / orders;
  const double r = recall_sum / orders;
  if (p == 0.0 && r == 0.0) return 0.0;
  const double b2 = kChrfBeta * kChrfBeta;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

std::vector<ScoreRecord> LoadScoreFile(std::istream& in,
                                       std::string_view registry_name) {
  std::vector<ScoreRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4) {
      throw DataError(line_no, "expected 4 tab-separated columns, got " +
                                   std::to_string(fields.size()));
    }
    if (fields[0] != registry_name) {
      throw DataError(line_no, "unexpected metric name: " + fields[0]);
    }
    const auto condition = Condition::Parse(fields[2]);
    if (!condition) throw DataError(line_no, "bad condition: " + fields[2]);
    double score;
    try {
      std::size_t pos = 0;
      score = std::stod(fields[3], &pos);
      if (pos != fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError(line_no, "non-numeric score: " + fields[3]);
    }
    if (!std::isfinite(score)) {
      throw DataError(line_no, "non-finite score: " + fields[3]);
    }
    out.push_back({fields[0], fields[1], *condition, score});
  }
  return out;
}

std::vector<ScoreRecord> LoadScoreFileAt(const std::string& path,
                                         std::string_view registry_name) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open score file: " + path);
  return LoadScoreFile(in, registry_name);
}

std::string PeekScoreFileMetric(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open score file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError(1, "expected tab-separated columns");
    return line.substr(0, tab);
  }
  throw ConfigError("empty score file: " + path);
}

BatchScorer MakeBleuScorer(bool char_tokenize) {
  return [char_tokenize](std::span<const MetricRequest> requests) {
    std::vector<double> scores;
    scores.reserve(requests.size());
    for (const auto& req : requests) {
      if (!req.reference) throw ConfigError("bleu requires a reference: " + req.id);
      BleuOptions opts;
      opts.char_tokenize =
          char_tokenize || (req.language_tag && req.language_tag->language == "zh");
      scores.push_back(BleuSentence(req.candidate, *req.reference, opts).score);
    }
    return scores;
  };
}

BatchScorer MakeChrfScorer() {
  return [](std::span<const MetricRequest> requests) {
    std::vector<double> scores;
    scores.reserve(requests.size());
    for (const auto& req : requests) {
      if (!req.reference) throw ConfigError("chrf requires a reference: " + req.id);
      scores.push_back(ChrfSentence(req.candidate, *req.reference));
    }
    return scores;
  };
}

}  // namespace dialeval
