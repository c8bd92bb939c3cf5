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

#ifndef DIALEVAL_STATS_H_
#define DIALEVAL_STATS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dialeval/dataset.hpp"
#include "dialeval/tag.hpp"

namespace dialeval {

struct Contrast {
  double estimate = 0.0;       // phi_j - phi_ref
  double standard_error = 0.0;
};

// Random-intercept model sigma_ij = theta_i + phi_j + eps_ij, estimated in
// closed form for the complete balanced design:
//   contrast(j)  = colmean_j - colmean_ref
//   sigma2       = sum (y_ij - rowmean_i - colmean_j + grand)^2 / ((I-1)(J-1))
//   tau2         = max(0, (MS_example - sigma2) / J)
//   SE(contrast) = sqrt(2 sigma2 / I)
struct RegressionFit {
  std::vector<Condition> conditions;   // fitted order
  Condition reference_condition;
  std::map<Condition, Contrast> contrasts;  // reference maps to {0, 0}
  double grand_mean = 0.0;
  double tau2 = 0.0;       // random-intercept variance, clamped at 0
  double tau2_raw = 0.0;   // pre-clamp value, for diagnostics
  double sigma2 = 0.0;     // residual variance
  int n_examples = 0;      // I
  int n_conditions = 0;    // J
};

// Requires a complete balanced design (one score per example x condition);
// unbalanced input is a hard error listing offending ids.
RegressionFit FitMixedEffects(std::span<const ScoreRecord> records,
                              const Condition& reference_condition);

struct Interval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// t interval on contrast(j) - contrast(k) with df = (I-1)(J-1).
Interval ContrastWithCi(const RegressionFit& fit, const Condition& j,
                        const Condition& k, double confidence);

struct WinLossCounts {
  long wins = 0;
  long losses = 0;
  long ties = 0;
};

// Per example: win iff score_j > score_k strictly; tie iff equal.
WinLossCounts CountWinLoss(std::span<const ScoreRecord> records,
                           const Condition& j, const Condition& k);

// Exact P(X >= wins) for X ~ Binomial(trials, 1/2), computed in log space.
double BinomialOneTailed(long wins, long trials);

// Sign-test summary. Ties are excluded from trials (T = wins + losses) and
// reported separately.
struct WinLossResult {
  long wins = 0;
  long losses = 0;
  long ties = 0;
  long trials = 0;
  double success_rate = 0.0;
  bool success_rate_defined = false;
  double p_value = 1.0;
  long family_size = 1;
  double alpha = 0.05;
  bool significant_after_bonferroni = false;
};

WinLossResult MakeWinLossResult(const WinLossCounts& counts, double alpha,
                                long family_size);

struct BonferroniEntry {
  std::string test_id;
  double p = 1.0;
  bool significant = false;
};

// significant iff p < alpha / K; family defaults to the list length.
std::vector<BonferroniEntry> Bonferroni(
    const std::vector<std::pair<std::string, double>>& p_values, double alpha,
    std::optional<long> family_size = std::nullopt);

struct AwarenessObservation {
  DialectTag candidate_dialect;
  DialectTag input_tag;
  double score = 0.0;
};

struct AwarenessRow {
  DialectTag candidate_dialect;
  std::map<DialectTag, double> scores_by_input_tag;  // means
  bool aware = false;  // matched tag strictly exceeds every mismatched tag
};

std::vector<AwarenessRow> AwarenessEval(
    std::span<const AwarenessObservation> observations);

// Segment-level agreement with human pairwise preferences:
// (Conc - Disc) / (Conc + Disc); exact ties count as discordant.
double Darr(const std::map<std::string, double>& metric_scores,
            std::span<const std::pair<std::string, std::string>> human_pairs);

}  // namespace dialeval

#endif  // DIALEVAL_STATS_H_
