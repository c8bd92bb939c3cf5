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

#include "dialeval/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace dialeval {

namespace {

std::string Num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

std::string ToolVersion() { return "dialeval 0.1.0"; }

void WriteReportCsv(std::ostream& out, const Report& report) {
  for (const auto& [key, value] : report.metadata) {
    out << "# " << key << "=" << value << "\n";
  }
  out << "# metric=" << report.metric << " language=" << report.language
      << " n_examples=" << report.n_examples << "\n";
  out << "comparison,estimate,se,ci_low,ci_high,success_rate,wins,losses,ties,"
         "p,K,significant\n";
  for (const auto& row : report.rows) {
    const auto& wl = row.win_loss;
    out << row.comparison << ',' << Num(row.estimate) << ','
        << Num(row.standard_error) << ',' << Num(row.ci_low) << ','
        << Num(row.ci_high) << ','
        << (wl.success_rate_defined ? Num(wl.success_rate) : "NA") << ','
        << wl.wins << ',' << wl.losses << ',' << wl.ties << ','
        << Num(wl.p_value) << ',' << wl.family_size << ','
        << (wl.significant_after_bonferroni ? "true" : "false") << "\n";
  }
}

void WriteReportMarkdown(std::ostream& out, const Report& report) {
  out << "## " << report.metric << " / " << report.language << "\n\n";
  for (const auto& [key, value] : report.metadata) {
    out << "- " << key << ": " << value << "\n";
  }
  out << "- examples analyzed: " << report.n_examples << "\n";
  out << "- examples dropped: " << report.attrition.size() << "\n\n";
  out << "| comparison | estimate | SE | CI low | CI high | success | wins | "
         "losses | ties | p | K | significant |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : report.rows) {
    const auto& wl = row.win_loss;
    out << "| " << row.comparison << " | " << Num(row.estimate) << " | "
        << Num(row.standard_error) << " | " << Num(row.ci_low) << " | "
        << Num(row.ci_high) << " | "
        << (wl.success_rate_defined ? Num(wl.success_rate) : "NA") << " | "
        << wl.wins << " | " << wl.losses << " | " << wl.ties << " | "
        << Num(wl.p_value) << " | " << wl.family_size << " | "
        << (wl.significant_after_bonferroni ? "yes" : "no") << " |\n";
  }
  out << "\n";
}

void WritePlotCsv(std::ostream& out, const Report& report) {
  out << "condition,estimate,ci_low,ci_high\n";
  for (const auto& row : report.rows) {
    out << row.comparison << ',' << Num(row.estimate) << ',' << Num(row.ci_low)
        << ',' << Num(row.ci_high) << "\n";
  }
}

}  // namespace dialeval
