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

#include "dialeval/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "dialeval/text.hpp"
#include "json.hpp"

namespace dialeval {

namespace {

using nlohmann::json;

json ParseLine(const std::string& line, std::size_t line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw DataError(line_no, "unparseable record");
  }
  return j;
}

std::string GetString(const json& j, const char* key, std::size_t line_no) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw DataError(line_no, std::string("missing or non-string field: ") + key);
  }
  return ComposeCanonical(it->get<std::string>());
}

}  // namespace

std::vector<MicroExample> LoadMicroDataset(std::istream& in) {
  std::vector<MicroExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = ParseLine(line, line_no);
    MicroExample ex;
    ex.id = GetString(j, "id", line_no);
    ex.base = GetString(j, "base", line_no);
    const auto rewrites = j.find("dialect_rewrites");
    if (rewrites == j.end() || !rewrites->is_array()) {
      throw DataError(line_no, "missing or non-array field: dialect_rewrites");
    }
    for (const auto& r : *rewrites) {
      if (!r.is_object()) throw DataError(line_no, "bad dialect_rewrites entry");
      ex.dialect_rewrites.push_back(
          {GetString(r, "feature", line_no), GetString(r, "text", line_no)});
    }
    if (const auto perts = j.find("perturbations"); perts != j.end()) {
      if (!perts->is_object()) throw DataError(line_no, "bad perturbations");
      for (const auto& [key, value] : perts->items()) {
        if (key != "replace" && key != "insert" && key != "delete") {
          throw DataError(line_no, "unknown perturbation type: " + key);
        }
        if (!value.is_string()) throw DataError(line_no, "bad perturbation text");
        ex.perturbations[key] = ComposeCanonical(value.get<std::string>());
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<SentenceExample> LoadSentenceDataset(std::istream& in) {
  std::vector<SentenceExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = ParseLine(line, line_no);
    SentenceExample ex;
    ex.id = GetString(j, "id", line_no);
    ex.english = GetString(j, "english", line_no);
    const auto trans = j.find("translations");
    if (trans == j.end() || !trans->is_object()) {
      throw DataError(line_no, "missing or non-object field: translations");
    }
    for (const auto& [key, value] : trans->items()) {
      const auto tag = DialectTag::Parse(key);
      if (!tag) throw DataError(line_no, "bad dialect tag: " + key);
      if (!value.is_string()) throw DataError(line_no, "bad translation text");
      ex.translations[*tag] = ComposeCanonical(value.get<std::string>());
    }
    if (const auto mt = j.find("mt"); mt != j.end()) {
      if (!mt->is_object()) throw DataError(line_no, "bad mt field");
      const auto locale = DialectTag::Parse(GetString(*mt, "locale", line_no));
      if (!locale) throw DataError(line_no, "bad mt locale");
      ex.mt = MtOutput{*locale, GetString(*mt, "text", line_no)};
    }
    if (j.contains("perturbed_english")) {
      ex.perturbed_english = GetString(j, "perturbed_english", line_no);
    }
    if (j.contains("perturbed_mt")) {
      ex.perturbed_mt = GetString(j, "perturbed_mt", line_no);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<MicroExample> LoadMicroDatasetFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset: " + path);
  return LoadMicroDataset(in);
}

std::vector<SentenceExample> LoadSentenceDatasetFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset: " + path);
  return LoadSentenceDataset(in);
}

ValidationReport ValidateMicro(const std::vector<MicroExample>& dataset) {
  ValidationReport report;
  std::unordered_set<std::string> seen;
  for (const auto& ex : dataset) {
    if (!seen.insert(ex.id).second) {
      report.violations.push_back({ex.id, "duplicate id"});
    }
    if (ex.id.empty()) report.violations.push_back({ex.id, "empty id"});
    if (ex.base.empty()) report.violations.push_back({ex.id, "empty base sentence"});
    if (ex.dialect_rewrites.empty()) {
      report.violations.push_back({ex.id, "no dialect rewrites"});
    }
    for (const auto& r : ex.dialect_rewrites) {
      if (r.text.empty()) {
        report.violations.push_back({ex.id, "empty rewrite text"});
      }
    }
    for (const auto& [type, text] : ex.perturbations) {
      if (text.empty()) {
        report.violations.push_back({ex.id, "empty perturbation: " + type});
      } else if (text == ex.base) {
        report.violations.push_back(
            {ex.id, "perturbation identical to base: " + type});
      }
    }
  }
  return report;
}

ValidationReport ValidateSentence(const std::vector<SentenceExample>& dataset) {
  ValidationReport report;
  std::unordered_set<std::string> seen;
  for (const auto& ex : dataset) {
    if (!seen.insert(ex.id).second) {
      report.violations.push_back({ex.id, "duplicate id"});
    }
    if (ex.english.empty()) report.violations.push_back({ex.id, "empty english"});
    if (ex.translations.size() < 2) {
      report.violations.push_back({ex.id, "fewer than two dialect translations"});
    }
    std::string language;
    for (const auto& [tag, text] : ex.translations) {
      if (language.empty()) {
        language = tag.language;
      } else if (tag.language != language) {
        report.violations.push_back(
            {ex.id, "translations cross languages: " + language + " vs " +
                        tag.language});
      }
      if (text.empty()) {
        report.violations.push_back({ex.id, "empty translation: " + tag.Render()});
      }
    }
    if (ex.mt && !language.empty() && ex.mt->locale.language != language) {
      report.violations.push_back(
          {ex.id, "mt locale language mismatch: " + ex.mt->locale.Render()});
    }
  }
  return report;
}

FilterResult CompleteCaseFilter(const std::vector<ScoreRecord>& records,
                                const std::set<Condition>& required) {
  std::map<std::string, std::set<Condition>> have;
  for (const auto& r : records) have[r.example_id].insert(r.condition);

  std::set<std::string> complete, dropped;
  for (const auto& [id, conds] : have) {
    const bool ok = std::all_of(required.begin(), required.end(),
                                [&](const Condition& c) { return conds.count(c); });
    (ok ? complete : dropped).insert(id);
  }

  FilterResult result;
  for (const auto& r : records) {
    if (complete.count(r.example_id)) result.kept.push_back(r);
  }
  std::sort(result.kept.begin(), result.kept.end(),
            [](const ScoreRecord& a, const ScoreRecord& b) {
              return std::tie(a.example_id, a.condition, a.metric) <
                     std::tie(b.example_id, b.condition, b.metric);
            });
  result.dropped_example_ids.assign(dropped.begin(), dropped.end());
  return result;
}

std::vector<MicroDataPoint> ExpandRewrites(const std::vector<MicroExample>& dataset) {
  std::vector<MicroDataPoint> out;
  for (const auto& ex : dataset) {
    if (ex.dialect_rewrites.size() == 1) {
      out.push_back({ex.id, ex.base, ex.dialect_rewrites[0].feature,
                     ex.dialect_rewrites[0].text, ex.perturbations});
      continue;
    }
    for (std::size_t k = 0; k < ex.dialect_rewrites.size(); ++k) {
      out.push_back({ex.id + "#" + std::to_string(k), ex.base,
                     ex.dialect_rewrites[k].feature, ex.dialect_rewrites[k].text,
                     ex.perturbations});
    }
  }
  return out;
}

}  // namespace dialeval
