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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "dialeval/metrics.hpp"
#include "dialeval/nano.hpp"
#include "dialeval/rng.hpp"
#include "dialeval/stats.hpp"

namespace dialeval {
namespace {

std::string RandomSentence(Rng& rng, int words) {
  static const char* vocab[] = {"the",  "cat",    "tailor", "waved", "number",
                                "seven", "bridge", "quick",  "green", "under"};
  std::string s;
  for (int i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += vocab[rng.NextBelow(10)];
  }
  return s;
}

void BM_BleuSentence(benchmark::State& state) {
  Rng rng(1);
  const auto cand = RandomSentence(rng, static_cast<int>(state.range(0)));
  const auto ref = RandomSentence(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BleuSentence(cand, ref));
  }
}
BENCHMARK(BM_BleuSentence)->Arg(10)->Arg(40)->Arg(160);

void BM_ChrfSentence(benchmark::State& state) {
  Rng rng(2);
  const auto cand = RandomSentence(rng, static_cast<int>(state.range(0)));
  const auto ref = RandomSentence(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ChrfSentence(cand, ref));
  }
}
BENCHMARK(BM_ChrfSentence)->Arg(10)->Arg(40)->Arg(160);

void BM_BinomialOneTailed(benchmark::State& state) {
  const long trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BinomialOneTailed(trials / 2 + trials / 8, trials));
  }
}
BENCHMARK(BM_BinomialOneTailed)->Arg(100)->Arg(1000)->Arg(10000);

void BM_FitMixedEffects(benchmark::State& state) {
  Rng rng(3);
  const int I = static_cast<int>(state.range(0));
  const Condition conds[] = {Condition::Dialect(), Condition::Perturb(),
                             Condition::Mt()};
  std::vector<ScoreRecord> records;
  records.reserve(static_cast<std::size_t>(I) * 3);
  for (int i = 0; i < I; ++i) {
    const auto id = "e" + std::to_string(i);
    for (const auto& c : conds) {
      records.push_back({"m", id, c, rng.NextDouble()});
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitMixedEffects(records, conds[1]));
  }
}
BENCHMARK(BM_FitMixedEffects)->Arg(100)->Arg(1000)->Arg(5000);

void BM_SampleTag(benchmark::State& state) {
  SamplerConfig config;
  config.tag_universe = DefaultTagUniverse();
  Rng rng(4);
  const auto gold = *DialectTag::Parse("en-US");
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleTag(gold, config, rng));
  }
}
BENCHMARK(BM_SampleTag);

}  // namespace
}  // namespace dialeval

BENCHMARK_MAIN();
