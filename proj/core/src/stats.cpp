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

#include "dialeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/distributions/students_t.hpp>

namespace dialeval {

RegressionFit FitMixedEffects(std::span<const ScoreRecord> records,
                              const Condition& reference_condition) {
  std::set<Condition> condition_set;
  std::set<std::string> id_set;
  std::map<std::pair<std::string, Condition>, double> cell;
  for (const auto& r : records) {
    condition_set.insert(r.condition);
    id_set.insert(r.example_id);
    if (!cell.emplace(std::make_pair(r.example_id, r.condition), r.score)
             .second) {
      throw ConfigError("duplicate score for example " + r.example_id +
                        " condition " + r.condition.Render());
    }
  }
  const int I = static_cast<int>(id_set.size());
  const int J = static_cast<int>(condition_set.size());
  if (J < 2) throw ConfigError("need at least two conditions, got " +
                               std::to_string(J));
  if (I < 2) throw ConfigError("need at least two examples, got " +
                               std::to_string(I));
  if (!condition_set.count(reference_condition)) {
    throw ConfigError("reference condition not present: " +
                      reference_condition.Render());
  }
  std::string offenders;
  for (const auto& id : id_set) {
    for (const auto& c : condition_set) {
      if (!cell.count({id, c})) {
        if (!offenders.empty()) offenders += ", ";
        offenders += id;
        break;
      }
    }
  }
  if (!offenders.empty()) {
    throw ConfigError("unbalanced design; incomplete examples: " + offenders);
  }

  std::map<std::string, double> row_mean;
  std::map<Condition, double> col_mean;
  double grand = 0.0;
  for (const auto& [key, score] : cell) {
    row_mean[key.first] += score;
    col_mean[key.second] += score;
    grand += score;
  }
  for (auto& [id, sum] : row_mean) sum /= J;
  for (auto& [c, sum] : col_mean) sum /= I;
  grand /= static_cast<double>(I) * J;

  double ss_interaction = 0.0;
  for (const auto& [key, score] : cell) {
    const double resid =
        score - row_mean[key.first] - col_mean[key.second] + grand;
    ss_interaction += resid * resid;
  }
  const double sigma2 =
      ss_interaction / (static_cast<double>(I - 1) * (J - 1));

  double ss_rows = 0.0;
  for (const auto& [id, mean] : row_mean) {
    ss_rows += (mean - grand) * (mean - grand);
  }
  const double ms_example = J * ss_rows / (I - 1);
  const double tau2_raw = (ms_example - sigma2) / J;

  RegressionFit fit;
  fit.conditions.assign(condition_set.begin(), condition_set.end());
  fit.reference_condition = reference_condition;
  fit.grand_mean = grand;
  fit.sigma2 = sigma2;
  fit.tau2_raw = tau2_raw;
  fit.tau2 = std::max(0.0, tau2_raw);
  fit.n_examples = I;
  fit.n_conditions = J;
  const double se = std::sqrt(2.0 * sigma2 / I);
  const double ref_mean = col_mean.at(reference_condition);
  for (const auto& c : fit.conditions) {
    if (c == reference_condition) {
      fit.contrasts[c] = {0.0, 0.0};
    } else {
      fit.contrasts[c] = {col_mean.at(c) - ref_mean, se};
    }
  }
  return fit;
}

Interval ContrastWithCi(const RegressionFit& fit, const Condition& j,
                        const Condition& k, double confidence) {
  if (confidence <= 0.0 || confidence >= 1.0) {
    throw ConfigError("confidence must be in (0,1)");
  }
  const auto cj = fit.contrasts.find(j);
  const auto ck = fit.contrasts.find(k);
  if (cj == fit.contrasts.end()) {
    throw ConfigError("condition not in fit: " + j.Render());
  }
  if (ck == fit.contrasts.end()) {
    throw ConfigError("condition not in fit: " + k.Render());
  }
  const double estimate = cj->second.estimate - ck->second.estimate;
  const double df =
      static_cast<double>(fit.n_examples - 1) * (fit.n_conditions - 1);
  const double se = std::sqrt(2.0 * fit.sigma2 / fit.n_examples);
  double half = 0.0;
  if (se > 0.0) {
    const boost::math::students_t dist(df);
    half = boost::math::quantile(dist, (1.0 + confidence) / 2.0) * se;
  }
  return {estimate, estimate - half, estimate + half};
}

WinLossCounts CountWinLoss(std::span<const ScoreRecord> records,
                           const Condition& j, const Condition& k) {
  std::map<std::string, std::pair<std::optional<double>, std::optional<double>>>
      pairs;
  for (const auto& r : records) {
    if (r.condition == j) pairs[r.example_id].first = r.score;
    if (r.condition == k) pairs[r.example_id].second = r.score;
  }
  WinLossCounts counts;
  for (const auto& [id, pr] : pairs) {
    if (!pr.first || !pr.second) {
      throw ConfigError("missing condition pair for example " + id);
    }
    if (*pr.first > *pr.second) {
      ++counts.wins;
    } else if (*pr.first < *pr.second) {
      ++counts.losses;
    } else {
      ++counts.ties;
    }
  }
  return counts;
}

double BinomialOneTailed(long wins, long trials) {
  if (wins < 0 || trials < 0 || wins > trials) {
    throw ConfigError("invalid binomial arguments");
  }
  if (wins == 0) return 1.0;
  // log C(T, k) - T log 2, accumulated by logsumexp.
  const double log2 = std::log(2.0);
  const double log_fact_t = std::lgamma(static_cast<double>(trials) + 1.0);
  double max_term = -HUGE_VAL;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(trials - wins + 1));
  for (long k = wins; k <= trials; ++k) {
    const double term = log_fact_t -
                        std::lgamma(static_cast<double>(k) + 1.0) -
                        std::lgamma(static_cast<double>(trials - k) + 1.0) -
                        trials * log2;
    terms.push_back(term);
    max_term = std::max(max_term, term);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  const double p = std::exp(max_term) * sum;
  return std::min(1.0, p);
}

WinLossResult MakeWinLossResult(const WinLossCounts& counts, double alpha,
                                long family_size) {
  if (alpha <= 0.0 || alpha >= 1.0) throw ConfigError("alpha must be in (0,1)");
  if (family_size < 1) throw ConfigError("family size must be >= 1");
  WinLossResult r;
  r.wins = counts.wins;
  r.losses = counts.losses;
  r.ties = counts.ties;
  r.trials = counts.wins + counts.losses;
  r.alpha = alpha;
  r.family_size = family_size;
  if (r.trials > 0) {
    r.success_rate = static_cast<double>(r.wins) / r.trials;
    r.success_rate_defined = true;
    r.p_value = BinomialOneTailed(r.wins, r.trials);
  } else {
    r.success_rate = 0.0;
    r.success_rate_defined = false;
    r.p_value = 1.0;
  }
  r.significant_after_bonferroni = r.p_value < alpha / family_size;
  return r;
}

std::vector<BonferroniEntry> Bonferroni(
    const std::vector<std::pair<std::string, double>>& p_values, double alpha,
    std::optional<long> family_size) {
  if (alpha <= 0.0 || alpha >= 1.0) throw ConfigError("alpha must be in (0,1)");
  const long k = family_size.value_or(static_cast<long>(p_values.size()));
  if (k < 1) throw ConfigError("family size must be >= 1");
  std::vector<BonferroniEntry> out;
  out.reserve(p_values.size());
  for (const auto& [id, p] : p_values) {
    if (p <= 0.0 || p > 1.0) {
      throw ConfigError("p-value out of (0,1] for test " + id);
    }
    out.push_back({id, p, p < alpha / k});
  }
  return out;
}

std::vector<AwarenessRow> AwarenessEval(
    std::span<const AwarenessObservation> observations) {
  std::map<DialectTag, std::map<DialectTag, std::pair<double, long>>> grouped;
  for (const auto& obs : observations) {
    auto& [sum, count] = grouped[obs.candidate_dialect][obs.input_tag];
    sum += obs.score;
    ++count;
  }
  std::vector<AwarenessRow> rows;
  for (const auto& [candidate, by_tag] : grouped) {
    AwarenessRow row;
    row.candidate_dialect = candidate;
    for (const auto& [tag, acc] : by_tag) {
      row.scores_by_input_tag[tag] = acc.first / acc.second;
    }
    const auto matched = row.scores_by_input_tag.find(candidate);
    if (matched == row.scores_by_input_tag.end()) {
      throw ConfigError("no matched-tag scores for candidate " +
                        candidate.Render());
    }
    if (row.scores_by_input_tag.size() < 2) {
      throw ConfigError("no mismatched-tag scores for candidate " +
                        candidate.Render());
    }
    row.aware = true;
    for (const auto& [tag, mean] : row.scores_by_input_tag) {
      if (tag != candidate && mean >= matched->second) {
        row.aware = false;
        break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double Darr(const std::map<std::string, double>& metric_scores,
            std::span<const std::pair<std::string, std::string>> human_pairs) {
  if (human_pairs.empty()) throw ConfigError("no human preference pairs");
  long concordant = 0, discordant = 0;
  for (const auto& [better, worse] : human_pairs) {
    const auto b = metric_scores.find(better);
    const auto w = metric_scores.find(worse);
    if (b == metric_scores.end()) {
      throw ConfigError("no metric score for segment " + better);
    }
    if (w == metric_scores.end()) {
      throw ConfigError("no metric score for segment " + worse);
    }
    if (b->second > w->second) {
      ++concordant;
    } else {
      ++discordant;  // ties are conservative
    }
  }
  return static_cast<double>(concordant - discordant) /
         static_cast<double>(concordant + discordant);
}

}  // namespace dialeval
