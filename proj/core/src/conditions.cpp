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

#include "dialeval/conditions.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "dialeval/rng.hpp"
#include "dialeval/text.hpp"
#include "json.hpp"

namespace dialeval {

namespace {

using nlohmann::json;

const char* const kPreferenceOrder[] = {"replace", "insert", "delete"};

struct Task {
  std::string example_id;
  Condition condition;
  MetricRequest request;
};

std::vector<ScoreRecord> RunTasks(std::vector<Task> tasks,
                                  const std::string& metric_name,
                                  const BatchScorer& scorer) {
  std::vector<MetricRequest> requests;
  requests.reserve(tasks.size());
  for (auto& t : tasks) requests.push_back(t.request);
  const auto scores = scorer(requests);
  if (scores.size() != tasks.size()) {
    throw std::runtime_error("scorer returned wrong number of scores");
  }
  std::vector<ScoreRecord> records;
  records.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    records.push_back({metric_name, tasks[i].example_id, tasks[i].condition,
                       scores[i]});
  }
  std::sort(records.begin(), records.end(),
            [](const ScoreRecord& a, const ScoreRecord& b) {
              return std::tie(a.example_id, a.condition) <
                     std::tie(b.example_id, b.condition);
            });
  return records;
}

void RecordDrop(std::vector<DroppedExample>* dropped, const std::string& id,
                const std::string& reason) {
  if (dropped) dropped->push_back({id, reason});
}

}  // namespace

std::optional<PerturbationChoice> SelectPerturbation(
    const std::string& example_id,
    const std::map<std::string, std::string>& perturbations) {
  for (const char* type : kPreferenceOrder) {
    const auto it = perturbations.find(type);
    if (it != perturbations.end() && !it->second.empty()) {
      return PerturbationChoice{example_id, type, it->second};
    }
  }
  return std::nullopt;
}

PerturbLexicon PerturbLexicon::Builtin() {
  PerturbLexicon lex;
  lex.replace = {
      {"zero", "one"},    {"one", "two"},       {"two", "three"},
      {"three", "four"},  {"four", "five"},     {"five", "six"},
      {"six", "seven"},   {"seven", "eight"},   {"eight", "nine"},
      {"nine", "ten"},    {"first", "second"},  {"second", "third"},
      {"good", "bad"},    {"bad", "good"},      {"hot", "cold"},
      {"cold", "hot"},    {"big", "small"},     {"small", "big"},
      {"open", "closed"}, {"closed", "open"},   {"up", "down"},
      {"down", "up"},     {"left", "right"},    {"right", "left"},
      {"always", "never"},{"never", "always"},  {"more", "less"},
      {"less", "more"},   {"early", "late"},    {"late", "early"},
      {"cheap", "expensive"}, {"expensive", "cheap"},
      {"april", "may"},   {"monday", "friday"},
  };
  lex.insert_modifiers = {"not", "never", "barely"};
  lex.stopwords = {
      {"en", {"the", "a",  "an", "is",  "are", "was", "were", "be",  "been",
              "it",  "this", "that", "of", "to", "in", "on", "at", "for",
              "with", "and", "or", "we", "you", "they", "i", "he", "she",
              "have", "has", "do", "does"}},
      {"pt", {"o", "a", "os", "as", "um", "uma", "de", "do", "da", "em",
              "no", "na", "e", "ou", "que", "é", "são", "para", "com", "se",
              "eu", "ele", "ela", "nós", "tem", "foi"}},
      {"zh", {"的", "了", "是", "在", "我", "有", "和", "就", "不", "人",
              "都", "一", "也", "很", "这", "他", "她"}},
  };
  return lex;
}

PerturbLexicon PerturbLexicon::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon: " + path);
  json j;
  in >> j;
  PerturbLexicon lex;
  if (j.contains("replace")) {
    for (const auto& [token, sub] : j["replace"].items()) {
      lex.replace[ComposeCanonical(token)] =
          ComposeCanonical(sub.get<std::string>());
    }
  }
  if (j.contains("insert") && j["insert"].contains("modifiers")) {
    for (const auto& m : j["insert"]["modifiers"]) {
      lex.insert_modifiers.push_back(ComposeCanonical(m.get<std::string>()));
    }
  }
  if (j.contains("stopwords")) {
    for (const auto& [lang, words] : j["stopwords"].items()) {
      for (const auto& w : words) {
        lex.stopwords[lang].push_back(ComposeCanonical(w.get<std::string>()));
      }
    }
  }
  return lex;
}

std::optional<std::string> PerturbBuiltin(const std::string& sentence,
                                          const std::string& type,
                                          const PerturbLexicon& lexicon,
                                          std::uint64_t seed,
                                          const std::string& language) {
  auto tokens = language == "zh" ? SplitCodepoints(sentence)
                                 : SplitWhitespace(sentence);
  if (tokens.empty()) return std::nullopt;

  const auto stop_it = lexicon.stopwords.find(language);
  const auto is_stopword = [&](const std::string& tok) {
    if (stop_it == lexicon.stopwords.end()) return false;
    return std::find(stop_it->second.begin(), stop_it->second.end(), tok) !=
           stop_it->second.end();
  };
  const char* joiner = language == "zh" ? "" : " ";
  const auto join = [&](const std::vector<std::string>& toks) {
    std::string out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i) out += joiner;
      out += toks[i];
    }
    return out;
  };

  Rng rng(seed ^ Fnv1a64(sentence));

  if (type == "replace") {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto it = lexicon.replace.find(tokens[i]);
      if (it != lexicon.replace.end() && it->second != tokens[i]) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) return std::nullopt;
    const auto pick = candidates[rng.NextBelow(candidates.size())];
    tokens[pick] = lexicon.replace.at(tokens[pick]);
    return join(tokens);
  }

  if (type == "insert") {
    if (lexicon.insert_modifiers.empty()) return std::nullopt;
    std::size_t pos = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!is_stopword(tokens[i])) {
        pos = i;
        break;
      }
    }
    if (pos == tokens.size()) return std::nullopt;
    const auto& modifier =
        lexicon.insert_modifiers[rng.NextBelow(lexicon.insert_modifiers.size())];
    tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(pos), modifier);
    return join(tokens);
  }

  if (type == "delete") {
    if (tokens.size() < 3) return std::nullopt;  // must keep >= 2 tokens
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!is_stopword(tokens[i])) candidates.push_back(i);
    }
    if (candidates.empty()) return std::nullopt;
    const auto pick = candidates[rng.NextBelow(candidates.size())];
    tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(pick));
    const auto out = join(tokens);
    return out == sentence ? std::nullopt : std::optional<std::string>(out);
  }

  throw ConfigError("unknown perturbation type: " + type);
}

std::vector<ScoreRecord> MicroConditionScores(
    const std::vector<MicroDataPoint>& points, const std::string& metric_name,
    const BatchScorer& scorer, std::vector<DroppedExample>* dropped,
    const std::optional<DialectTag>& language_tag) {
  std::vector<Task> tasks;
  for (const auto& p : points) {
    const auto choice = SelectPerturbation(p.id, p.perturbations);
    if (!choice) {
      RecordDrop(dropped, p.id, "all_perturbations_failed");
      continue;
    }
    tasks.push_back({p.id, Condition::Dialect(),
                     {p.id + "/dialect", p.rewrite, p.base, std::nullopt,
                      language_tag}});
    tasks.push_back({p.id, Condition::Perturb(),
                     {p.id + "/perturb", choice->text, p.base, std::nullopt,
                      language_tag}});
  }
  return RunTasks(std::move(tasks), metric_name, scorer);
}

std::vector<ScoreRecord> SentenceConditionScores(
    const std::vector<SentenceExample>& examples, const ConditionPlan& plan,
    const BatchScorer& scorer, std::vector<DroppedExample>* dropped) {
  if (plan.mode != PlanMode::kSentence) {
    throw ConfigError("plan mode is not sentence");
  }
  if (!plan.metric.needs_reference) {
    throw ConfigError("sentence mode requires a reference-based metric");
  }
  if (!plan.reference_dialect) {
    throw ConfigError("sentence mode requires --reference-dialect");
  }
  std::vector<Task> tasks;
  for (const auto& ex : examples) {
    const auto ref_it = ex.translations.find(*plan.reference_dialect);
    if (ref_it == ex.translations.end()) {
      RecordDrop(dropped, ex.id, "missing_reference_dialect");
      continue;
    }
    // Candidate side: the non-reference dialect (smallest tag when several).
    const DialectTag* cand_tag = nullptr;
    const std::string* cand_text = nullptr;
    for (const auto& [tag, text] : ex.translations) {
      if (tag != *plan.reference_dialect) {
        cand_tag = &tag;
        cand_text = &text;
        break;
      }
    }
    if (!cand_tag) {
      RecordDrop(dropped, ex.id, "missing_candidate_dialect");
      continue;
    }
    if (!ex.mt) {
      RecordDrop(dropped, ex.id, "missing_mt");
      continue;
    }
    if (!ex.perturbed_mt) {
      RecordDrop(dropped, ex.id, "missing_perturbed_mt");
      continue;
    }
    const auto tag = plan.metric.accepts_tag
                         ? std::optional<DialectTag>(*cand_tag)
                         : std::nullopt;
    tasks.push_back({ex.id, Condition::Dialect(),
                     {ex.id + "/dialect", *cand_text, ref_it->second,
                      std::nullopt, tag}});
    tasks.push_back({ex.id, Condition::Mt(),
                     {ex.id + "/mt", *cand_text, ex.mt->text, std::nullopt,
                      tag}});
    tasks.push_back({ex.id, Condition::Perturb(),
                     {ex.id + "/perturb", *cand_text, *ex.perturbed_mt,
                      std::nullopt, tag}});
  }
  return RunTasks(std::move(tasks), plan.metric.name, scorer);
}

std::vector<ScoreRecord> QeConditionScores(
    const std::vector<SentenceExample>& examples, const ConditionPlan& plan,
    const BatchScorer& scorer, std::vector<DroppedExample>* dropped) {
  const bool with_ref = plan.mode == PlanMode::kQeWithRef;
  if (plan.mode != PlanMode::kQe && !with_ref) {
    throw ConfigError("plan mode is not qe");
  }
  if (!with_ref && !plan.metric.needs_source) {
    throw ConfigError("qe mode requires a source-based metric");
  }
  if (with_ref && !plan.metric.needs_reference) {
    throw ConfigError("qe-with-reference mode requires a reference-based metric");
  }
  if (with_ref && !plan.reference_dialect) {
    throw ConfigError("qe-with-reference mode requires --reference-dialect");
  }

  std::vector<Task> tasks;
  for (const auto& ex : examples) {
    if (!ex.mt) {
      RecordDrop(dropped, ex.id, "missing_mt");
      continue;
    }
    if (!ex.perturbed_mt) {
      RecordDrop(dropped, ex.id, "missing_perturbed_mt");
      continue;
    }
    const auto source = std::optional<std::string>(ex.english);
    if (!with_ref) {
      for (const auto& [tag, text] : ex.translations) {
        tasks.push_back({ex.id, Condition::Dialect(tag.Render()),
                         {ex.id + "/dialect:" + tag.Render(), text,
                          std::nullopt, source,
                          plan.metric.accepts_tag
                              ? std::optional<DialectTag>(tag)
                              : std::nullopt}});
      }
      tasks.push_back({ex.id, Condition::Mt(),
                       {ex.id + "/mt", ex.mt->text, std::nullopt, source,
                        std::nullopt}});
      tasks.push_back({ex.id, Condition::Perturb(),
                       {ex.id + "/perturb", *ex.perturbed_mt, std::nullopt,
                        source, std::nullopt}});
      continue;
    }

    const auto ref_it = ex.translations.find(*plan.reference_dialect);
    if (ref_it == ex.translations.end()) {
      RecordDrop(dropped, ex.id, "missing_reference_dialect");
      continue;
    }
    const auto reference = std::optional<std::string>(ref_it->second);
    const auto src = plan.metric.needs_source ? source
                                              : std::optional<std::string>();
    for (const auto& [tag, text] : ex.translations) {
      if (tag == *plan.reference_dialect) continue;
      tasks.push_back({ex.id, Condition::Dialect(tag.Render()),
                       {ex.id + "/dialect:" + tag.Render(), text, reference,
                        src,
                        plan.metric.accepts_tag
                            ? std::optional<DialectTag>(tag)
                            : std::nullopt}});
    }
    tasks.push_back({ex.id, Condition::Mt(),
                     {ex.id + "/mt", ex.mt->text, reference, src,
                      std::nullopt}});
    tasks.push_back({ex.id, Condition::Perturb(),
                     {ex.id + "/perturb", *ex.perturbed_mt, reference, src,
                      std::nullopt}});
  }
  return RunTasks(std::move(tasks), plan.metric.name, scorer);
}

void WriteDroppedSidecar(std::ostream& out,
                         const std::vector<DroppedExample>& dropped) {
  for (const auto& d : dropped) {
    out << json{{"id", d.id}, {"reason", d.reason}}.dump() << '\n';
  }
}

}  // namespace dialeval
