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

#ifndef DIALEVAL_REPORT_H_
#define DIALEVAL_REPORT_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "dialeval/conditions.hpp"
#include "dialeval/stats.hpp"

namespace dialeval {

struct ReportRow {
  std::string comparison;  // e.g. "dialect_vs_perturb"
  double estimate = 0.0;
  double standard_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  WinLossResult win_loss;
};

// One robustness table: per metric x language, the machine layout behind
// the regression and success-rate analyses. The metadata block pins every
// decision a reader needs to reproduce the numbers.
struct Report {
  std::string metric;
  std::string language;
  std::vector<std::pair<std::string, std::string>> metadata;  // ordered
  std::vector<ReportRow> rows;
  int n_examples = 0;
  std::vector<DroppedExample> attrition;
};

void WriteReportCsv(std::ostream& out, const Report& report);
void WriteReportMarkdown(std::ostream& out, const Report& report);
// (comparison, estimate, ci_low, ci_high) -- enough to redraw coefficient
// plots externally.
void WritePlotCsv(std::ostream& out, const Report& report);

std::string ToolVersion();

}  // namespace dialeval

#endif  // DIALEVAL_REPORT_H_
