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

#ifndef DIALEVAL_FIXTURES_H_
#define DIALEVAL_FIXTURES_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dialeval/dataset.hpp"
#include "dialeval/nano.hpp"

namespace dialeval {

// Desk-scale datasets generated deterministically so end-to-end runs need
// no external downloads.

// Micro examples whose dialect rewrites change many characters (synonym
// swaps across most content words) while the semantic perturbation changes
// a single word; lexical metrics therefore rank perturb above dialect.
std::vector<MicroExample> MakeAdversarialMicroDataset(int n, std::uint64_t seed);

// Scores that encode the true semantics of the same examples: dialect
// rewrites score high, perturbations low.
std::vector<ScoreRecord> MakeOracleScores(const std::vector<MicroExample>& dataset,
                                          std::uint64_t seed);

// Document fixture for the tag-balancing pipeline: pt/zh/en pages with
// region-bearing and generic URLs, including deliberate LangID-vs-URL
// disagreements.
std::vector<NanoDocument> MakeNanoDocuments(int n_documents, std::uint64_t seed);

void WriteMicroDataset(std::ostream& out, const std::vector<MicroExample>& data);
void WriteScoreFile(std::ostream& out, const std::vector<ScoreRecord>& records);
void WriteNanoDocuments(std::ostream& out, const std::vector<NanoDocument>& docs);

}  // namespace dialeval

#endif  // DIALEVAL_FIXTURES_H_
