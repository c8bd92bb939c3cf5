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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "dialeval/conditions.hpp"
#include "dialeval/dataset.hpp"
#include "dialeval/fixtures.hpp"
#include "dialeval/metrics.hpp"
#include "dialeval/nano.hpp"
#include "dialeval/report.hpp"
#include "dialeval/stats.hpp"
#include "dialeval/text.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace dialeval;

namespace {

struct MetricSpec {
  enum class Kind { kNative, kFile, kCmd } kind;
  std::string name;    // metric name (native name, file registry name, or cmd)
  std::string detail;  // path or command line
};

MetricSpec ParseMetricSpec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("metric spec must be native:<name>, file:<path>, or "
                      "cmd:\"<program>\": " + spec);
  }
  const auto head = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (head == "native") {
    if (rest != "bleu" && rest != "chrf") {
      throw ConfigError("unknown native metric: " + rest);
    }
    return {MetricSpec::Kind::kNative, rest, ""};
  }
  if (head == "file") {
    return {MetricSpec::Kind::kFile, PeekScoreFileMetric(rest), rest};
  }
  if (head == "cmd") return {MetricSpec::Kind::kCmd, "external", rest};
  throw ConfigError("unknown metric spec kind: " + head);
}

// Tracks written files so a failed run can quarantine its partial outputs.
class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) {
    fs::create_directories(dir_);
  }

  std::ofstream Open(const std::string& name) {
    const auto path = dir_ / name;
    written_.push_back(path);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write: " + path.string());
    return out;
  }

  void Quarantine() {
    const auto qdir = dir_ / "quarantine";
    fs::create_directories(qdir);
    for (const auto& p : written_) {
      std::error_code ec;
      if (fs::exists(p, ec)) fs::rename(p, qdir / p.filename(), ec);
    }
  }

  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

std::string FileHashHex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::ostringstream hex;
  hex << std::hex << Fnv1a64(ss.str());
  return hex.str();
}

struct CommonOptions {
  std::string dataset;
  std::string dataset_kind = "micro";
  std::vector<std::string> metrics;
  std::string language = "en";
  std::string reference_dialect;
  double alpha = 0.05;
  double confidence = 0.99;
  long family_size = 0;  // 0 = default family
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out = "out";
};

BatchScorer MakeScorer(const MetricSpec& spec, const std::string& language,
                       std::vector<std::unique_ptr<SubprocessScorer>>* keep) {
  switch (spec.kind) {
    case MetricSpec::Kind::kNative:
      if (spec.name == "bleu") return MakeBleuScorer(language == "zh");
      return MakeChrfScorer();
    case MetricSpec::Kind::kCmd: {
      keep->push_back(std::make_unique<SubprocessScorer>(spec.detail));
      return keep->back()->AsBatchScorer();
    }
    case MetricSpec::Kind::kFile:
      throw ConfigError("file metrics carry precomputed scores");
  }
  throw ConfigError("unreachable metric kind");
}

MetricDescriptor DescribeMetric(const MetricSpec& spec) {
  MetricDescriptor d;
  d.name = spec.name;
  switch (spec.kind) {
    case MetricSpec::Kind::kNative:
      d.needs_reference = true;
      d.range_hint = {{0.0, 1.0}};
      break;
    case MetricSpec::Kind::kCmd:
      d.needs_reference = true;
      d.needs_source = true;
      d.accepts_tag = true;
      break;
    case MetricSpec::Kind::kFile:
      d.needs_reference = true;
      break;
  }
  return d;
}

std::vector<std::pair<std::string, std::string>> BaseMetadata(
    const CommonOptions& opt) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("tool", ToolVersion());
  meta.emplace_back("seed", std::to_string(opt.seed));
  meta.emplace_back("alpha", std::to_string(opt.alpha));
  meta.emplace_back("confidence", std::to_string(opt.confidence));
  meta.emplace_back("dataset_hash", FileHashHex(opt.dataset));
  meta.emplace_back("bleu_tokenization",
                    "unicode-whitespace; per-codepoint for zh");
  meta.emplace_back("bleu_smoothing", "add-one num/denom for orders >= 2");
  meta.emplace_back("chrf_params", "max-order 6, beta 2, whitespace removed");
  meta.emplace_back("tie_rule", "ties excluded from binomial trials");
  meta.emplace_back("ci_quantile", "t with (I-1)(J-1) df");
  meta.emplace_back("dialect_orientation",
                    "candidate = non-reference dialect");
  return meta;
}

ReportRow MakeRow(const std::string& comparison, const RegressionFit& fit,
                  const Condition& j, const Condition& k, double confidence,
                  const std::vector<ScoreRecord>& records, double alpha,
                  long family) {
  const auto ci = ContrastWithCi(fit, j, k, confidence);
  ReportRow row;
  row.comparison = comparison;
  row.estimate = ci.estimate;
  row.standard_error = fit.contrasts.at(j == fit.reference_condition ? k : j)
                           .standard_error;
  row.ci_low = ci.lower;
  row.ci_high = ci.upper;
  row.win_loss = MakeWinLossResult(CountWinLoss(records, j, k), alpha, family);
  return row;
}

int RunRobustness(const CommonOptions& opt) {
  if (opt.metrics.empty()) throw ConfigError("no metrics requested");
  std::vector<MetricSpec> specs;
  for (const auto& m : opt.metrics) specs.push_back(ParseMetricSpec(m));

  OutputDir out(opt.out);
  try {
    for (const auto& spec : specs) {
      std::vector<ScoreRecord> records;
      std::vector<DroppedExample> dropped;
      std::set<Condition> required{Condition::Dialect(), Condition::Perturb()};

      if (opt.dataset_kind == "micro") {
        auto dataset = LoadMicroDatasetFile(opt.dataset);
        const auto report = ValidateMicro(dataset);
        if (!report.ok()) {
          throw ConfigError("dataset invalid: " + report.violations[0].message +
                            " (id " + report.violations[0].id + ")");
        }
        const auto points = ExpandRewrites(dataset);
        if (spec.kind == MetricSpec::Kind::kFile) {
          records = LoadScoreFileAt(spec.detail, spec.name);
        } else {
          std::vector<std::unique_ptr<SubprocessScorer>> keep;
          const auto scorer = MakeScorer(spec, opt.language, &keep);
          records = MicroConditionScores(points, spec.name, scorer, &dropped,
                                         DialectTag::LanguageOnly(opt.language));
        }
      } else if (opt.dataset_kind == "sentence") {
        auto dataset = LoadSentenceDatasetFile(opt.dataset);
        const auto report = ValidateSentence(dataset);
        if (!report.ok()) {
          throw ConfigError("dataset invalid: " + report.violations[0].message +
                            " (id " + report.violations[0].id + ")");
        }
        required.insert(Condition::Mt());
        if (spec.kind == MetricSpec::Kind::kFile) {
          records = LoadScoreFileAt(spec.detail, spec.name);
        } else {
          ConditionPlan plan;
          plan.mode = PlanMode::kSentence;
          plan.metric = DescribeMetric(spec);
          const auto ref = DialectTag::Parse(opt.reference_dialect);
          if (!ref) {
            throw ConfigError("sentence mode requires --reference-dialect");
          }
          plan.reference_dialect = ref;
          std::vector<std::unique_ptr<SubprocessScorer>> keep;
          const auto scorer = MakeScorer(spec, opt.language, &keep);
          records = SentenceConditionScores(dataset, plan, scorer, &dropped);
        }
      } else {
        throw ConfigError("unknown dataset kind: " + opt.dataset_kind);
      }

      auto filtered = CompleteCaseFilter(records, required);
      for (const auto& id : filtered.dropped_example_ids) {
        dropped.push_back({id, "incomplete_conditions"});
      }
      if (filtered.kept.empty()) {
        throw ConfigError("no complete examples for metric " + spec.name);
      }

      const auto fit = FitMixedEffects(filtered.kept, Condition::Perturb());
      const long n_comparisons = required.count(Condition::Mt()) ? 2 : 1;
      const long family = opt.family_size > 0 ? opt.family_size : n_comparisons;

      Report report;
      report.metric = spec.name;
      report.language = opt.language;
      report.metadata = BaseMetadata(opt);
      report.metadata.emplace_back("bonferroni_family", std::to_string(family));
      report.n_examples = fit.n_examples;
      report.attrition = dropped;
      report.rows.push_back(MakeRow("dialect_vs_perturb", fit,
                                    Condition::Dialect(), Condition::Perturb(),
                                    opt.confidence, filtered.kept, opt.alpha,
                                    family));
      if (n_comparisons == 2) {
        report.rows.push_back(MakeRow("mt_vs_perturb", fit, Condition::Mt(),
                                      Condition::Perturb(), opt.confidence,
                                      filtered.kept, opt.alpha, family));
      }

      const auto stem = spec.name + "_" + opt.language;
      {
        auto f = out.Open(stem + "_report.csv");
        WriteReportCsv(f, report);
      }
      {
        auto f = out.Open(stem + "_report.md");
        WriteReportMarkdown(f, report);
      }
      {
        auto f = out.Open(stem + "_plot.csv");
        WritePlotCsv(f, report);
      }
      {
        auto f = out.Open(stem + "_dropped.jsonl");
        WriteDroppedSidecar(f, dropped);
      }
      std::cout << "wrote " << (out.path() / (stem + "_report.csv")).string()
                << "\n";
    }
  } catch (...) {
    out.Quarantine();
    throw;
  }
  return 0;
}

int RunQe(const CommonOptions& opt, bool with_ref) {
  if (opt.metrics.empty()) throw ConfigError("no metrics requested");
  OutputDir out(opt.out);
  try {
    for (const auto& m : opt.metrics) {
      const auto spec = ParseMetricSpec(m);
      auto dataset = LoadSentenceDatasetFile(opt.dataset);
      const auto vreport = ValidateSentence(dataset);
      if (!vreport.ok()) {
        throw ConfigError("dataset invalid: " + vreport.violations[0].message);
      }

      ConditionPlan plan;
      plan.mode = with_ref ? PlanMode::kQeWithRef : PlanMode::kQe;
      plan.metric = DescribeMetric(spec);
      if (!opt.reference_dialect.empty()) {
        plan.reference_dialect = DialectTag::Parse(opt.reference_dialect);
      }

      std::vector<ScoreRecord> records;
      std::vector<DroppedExample> dropped;
      if (spec.kind == MetricSpec::Kind::kFile) {
        records = LoadScoreFileAt(spec.detail, spec.name);
      } else {
        std::vector<std::unique_ptr<SubprocessScorer>> keep;
        const auto scorer = MakeScorer(spec, opt.language, &keep);
        records = QeConditionScores(dataset, plan, scorer, &dropped);
      }

      // Required conditions: every dialect condition seen, plus mt+perturb.
      std::set<Condition> required{Condition::Mt(), Condition::Perturb()};
      for (const auto& r : records) {
        if (r.condition.kind == ConditionKind::kDialect) {
          required.insert(r.condition);
        }
      }
      auto filtered = CompleteCaseFilter(records, required);
      for (const auto& id : filtered.dropped_example_ids) {
        dropped.push_back({id, "incomplete_conditions"});
      }
      if (filtered.kept.empty()) {
        throw ConfigError("no complete examples for metric " + spec.name);
      }

      const auto fit = FitMixedEffects(filtered.kept, Condition::Perturb());
      std::vector<Condition> dialect_conditions;
      for (const auto& c : fit.conditions) {
        if (c.kind == ConditionKind::kDialect) dialect_conditions.push_back(c);
      }
      const long n_comparisons =
          static_cast<long>(dialect_conditions.size()) + 1;
      const long family = opt.family_size > 0 ? opt.family_size : n_comparisons;

      Report report;
      report.metric = spec.name;
      report.language = opt.language;
      report.metadata = BaseMetadata(opt);
      report.metadata.emplace_back("mode", with_ref ? "qe_with_ref" : "qe");
      report.metadata.emplace_back("bonferroni_family", std::to_string(family));
      report.n_examples = fit.n_examples;
      report.attrition = dropped;
      for (const auto& c : dialect_conditions) {
        report.rows.push_back(MakeRow(c.Render() + "_vs_perturb", fit, c,
                                      Condition::Perturb(), opt.confidence,
                                      filtered.kept, opt.alpha, family));
      }
      report.rows.push_back(MakeRow("mt_vs_perturb", fit, Condition::Mt(),
                                    Condition::Perturb(), opt.confidence,
                                    filtered.kept, opt.alpha, family));

      const auto stem = spec.name + "_" + opt.language +
                        (with_ref ? "_qe_ref" : "_qe");
      {
        auto f = out.Open(stem + "_report.csv");
        WriteReportCsv(f, report);
      }
      {
        auto f = out.Open(stem + "_report.md");
        WriteReportMarkdown(f, report);
      }
      {
        auto f = out.Open(stem + "_plot.csv");
        WritePlotCsv(f, report);
      }
      std::cout << "wrote " << (out.path() / (stem + "_report.csv")).string()
                << "\n";
    }
  } catch (...) {
    out.Quarantine();
    throw;
  }
  return 0;
}

int RunAwareness(const CommonOptions& opt, const std::string& scores_path) {
  OutputDir out(opt.out);
  try {
    std::vector<AwarenessObservation> observations;
    if (!scores_path.empty()) {
      // Score file rows: metric \t <example>@<candidate_tag> \t
      // dialect:<input_tag> \t score.
      std::ifstream in(scores_path);
      if (!in) throw ConfigError("cannot open score file: " + scores_path);
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
        if (fields.size() != 4) throw DataError(line_no, "expected 4 columns");
        const auto at = fields[1].rfind('@');
        if (at == std::string::npos) {
          throw DataError(line_no, "example id must end with @<candidate_tag>");
        }
        const auto candidate = DialectTag::Parse(fields[1].substr(at + 1));
        const auto condition = Condition::Parse(fields[2]);
        if (!candidate || !condition ||
            condition->kind != ConditionKind::kDialect ||
            condition->detail.empty()) {
          throw DataError(line_no, "bad candidate or input tag");
        }
        const auto input_tag = DialectTag::Parse(condition->detail);
        if (!input_tag) throw DataError(line_no, "bad input tag");
        observations.push_back({*candidate, *input_tag, std::stod(fields[3])});
      }
    } else {
      if (opt.metrics.empty()) throw ConfigError("no metrics requested");
      const auto spec = ParseMetricSpec(opt.metrics[0]);
      auto dataset = LoadSentenceDatasetFile(opt.dataset);
      std::vector<std::unique_ptr<SubprocessScorer>> keep;
      const auto scorer = MakeScorer(spec, opt.language, &keep);
      // Score each dialect translation against the MT output, once per
      // input tag.
      std::vector<MetricRequest> requests;
      std::vector<std::pair<DialectTag, DialectTag>> keys;
      for (const auto& ex : dataset) {
        if (!ex.mt) continue;
        for (const auto& [cand_tag, text] : ex.translations) {
          for (const auto& [input_tag, unused] : ex.translations) {
            requests.push_back({ex.id + "/" + cand_tag.Render() + "@" +
                                    input_tag.Render(),
                                text, ex.mt->text, std::nullopt, input_tag});
            keys.emplace_back(cand_tag, input_tag);
          }
        }
      }
      const auto scores = scorer(requests);
      for (std::size_t i = 0; i < scores.size(); ++i) {
        observations.push_back({keys[i].first, keys[i].second, scores[i]});
      }
    }

    const auto rows = AwarenessEval(observations);
    auto f = out.Open("awareness.md");
    f << "| candidate | input tag | mean score | aware |\n";
    f << "|---|---|---|---|\n";
    auto csv = out.Open("awareness.csv");
    csv << "candidate,input_tag,mean_score,aware\n";
    for (const auto& row : rows) {
      for (const auto& [tag, mean] : row.scores_by_input_tag) {
        f << "| " << row.candidate_dialect.Render() << " | " << tag.Render()
          << " | " << mean << " | "
          << (tag == row.candidate_dialect ? (row.aware ? "yes" : "no") : "")
          << " |\n";
        csv << row.candidate_dialect.Render() << ',' << tag.Render() << ','
            << mean << ','
            << (tag == row.candidate_dialect ? (row.aware ? "true" : "false")
                                             : "")
            << "\n";
      }
    }
    std::cout << "wrote " << (out.path() / "awareness.csv").string() << "\n";
  } catch (...) {
    out.Quarantine();
    throw;
  }
  return 0;
}

int RunNanoBuild(const CommonOptions& opt, double lambda, double pos_neg_ratio,
                 const std::string& universe_path,
                 const std::string& documents_path) {
  OutputDir out(opt.out);
  try {
    std::ifstream docs_in(documents_path);
    if (!docs_in) throw ConfigError("cannot open documents: " + documents_path);
    const auto documents = LoadNanoDocuments(docs_in);

    SamplerConfig config;
    config.lambda = lambda;
    config.pos_neg_ratio = pos_neg_ratio;
    config.seed = opt.seed;
    if (universe_path.empty()) {
      config.tag_universe = DefaultTagUniverse();
    } else {
      std::ifstream uin(universe_path);
      if (!uin) throw ConfigError("cannot open tag universe: " + universe_path);
      config.tag_universe = LoadTagUniverse(uin);
    }

    auto train = out.Open("train.jsonl");
    const auto stats = BuildNanoDataset(documents, config, train, opt.jobs);
    train.close();
    if (stats.sentences_kept == 0) {
      std::string breakdown;
      for (const auto& [reason, count] : stats.drop_reasons) {
        breakdown += " " + reason + "=" + std::to_string(count);
      }
      throw ConfigError("zero surviving sentences; drops:" + breakdown);
    }

    nlohmann::json summary{
        {"tool", ToolVersion()},
        {"seed", opt.seed},
        {"lambda", lambda},
        {"pos_neg_ratio", pos_neg_ratio},
        {"sentences_in", stats.sentences_in},
        {"sentences_kept", stats.sentences_kept},
        {"drop_reasons", stats.drop_reasons},
        {"total_examples", stats.total_examples},
        {"positive_fraction", stats.PositiveFraction()},
        {"dialect_tag_fraction", stats.DialectTagFraction()},
        {"sampled_tag_histogram", stats.sampled_tag_histogram},
    };
    auto f = out.Open("summary.json");
    f << summary.dump(2) << "\n";
    std::cout << "wrote " << (out.path() / "train.jsonl").string() << " ("
              << stats.total_examples << " examples)\n";
  } catch (...) {
    out.Quarantine();
    throw;
  }
  return 0;
}

int RunFixtures(const CommonOptions& opt, int n_micro, int n_nano_docs) {
  OutputDir out(opt.out);
  const auto micro = MakeAdversarialMicroDataset(n_micro, opt.seed);
  {
    auto f = out.Open("micro_adversarial.jsonl");
    WriteMicroDataset(f, micro);
  }
  {
    auto f = out.Open("oracle_scores.tsv");
    WriteScoreFile(f, MakeOracleScores(micro, opt.seed + 1));
  }
  {
    auto f = out.Open("nano_documents.jsonl");
    WriteNanoDocuments(f, MakeNanoDocuments(n_nano_docs, opt.seed + 2));
  }
  std::cout << "wrote fixtures under " << out.path().string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dialect robustness and awareness analysis for text-generation "
               "evaluation metrics"};
  app.set_config("--config");
  app.require_subcommand(1);

  CommonOptions opt;
  double lambda = 1.0;
  double pos_neg_ratio = 1.0;
  std::string universe_path, documents_path, scores_path;
  int n_micro = 100, n_nano_docs = 6000;

  const auto add_common = [&](CLI::App* cmd, bool needs_dataset) {
    if (needs_dataset) {
      cmd->add_option("--dataset", opt.dataset, "JSONL dataset path");
      cmd->add_option("--dataset-kind", opt.dataset_kind)
          ->check(CLI::IsMember({"micro", "sentence"}));
    }
    cmd->add_option("--metric", opt.metrics,
                    "native:<bleu|chrf> | file:<path> | cmd:\"<program>\"");
    cmd->add_option("--language", opt.language);
    cmd->add_option("--reference-dialect", opt.reference_dialect);
    cmd->add_option("--alpha", opt.alpha);
    cmd->add_option("--confidence", opt.confidence);
    cmd->add_option("--family-size", opt.family_size);
    cmd->add_option("--seed", opt.seed);
    cmd->add_option("--jobs", opt.jobs);
    cmd->add_option("--out", opt.out);
  };

  auto* robustness = app.add_subcommand(
      "robustness", "Regression and win/loss robustness report");
  add_common(robustness, true);

  auto* awareness =
      app.add_subcommand("awareness", "Dialect awareness comparison table");
  add_common(awareness, true);
  awareness->add_option("--scores", scores_path,
                        "precomputed awareness score file");

  auto* qe = app.add_subcommand("qe", "Quality-estimation robustness report");
  add_common(qe, true);
  bool with_ref = false;
  qe->add_flag("--with-reference", with_ref);

  auto* nano = app.add_subcommand("nano-build",
                                  "Tag-balanced acceptability training data");
  add_common(nano, false);
  nano->add_option("--documents", documents_path, "JSONL document file");
  nano->add_option("--lambda", lambda);
  nano->add_option("--pos-neg-ratio", pos_neg_ratio);
  nano->add_option("--tag-universe", universe_path);

  auto* fixtures =
      app.add_subcommand("fixtures", "Deterministic desk-scale datasets");
  add_common(fixtures, false);
  fixtures->add_option("--n-micro", n_micro);
  fixtures->add_option("--n-nano-docs", n_nano_docs);

  CLI11_PARSE(app, argc, argv);

  try {
    if (robustness->parsed()) return RunRobustness(opt);
    if (awareness->parsed()) return RunAwareness(opt, scores_path);
    if (qe->parsed()) return RunQe(opt, with_ref);
    if (nano->parsed()) {
      return RunNanoBuild(opt, lambda, pos_neg_ratio, universe_path,
                          documents_path);
    }
    if (fixtures->parsed()) return RunFixtures(opt, n_micro, n_nano_docs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
