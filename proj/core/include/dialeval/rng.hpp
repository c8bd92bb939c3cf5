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

#ifndef DIALEVAL_RNG_H_
#define DIALEVAL_RNG_H_

#include <cmath>
#include <cstdint>

namespace dialeval {

// splitmix64. Output is identical on every platform, which the
// byte-reproducibility contracts rely on; std:: distributions are
// implementation-defined and deliberately avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Stream for shard `index` derived from a global seed; independent of
  // shard scheduling.
  static Rng ForShard(std::uint64_t seed, std::uint64_t index) {
    Rng mixer(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return Rng(mixer.Next());
  }

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double NextDouble() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound > 0.
  std::uint64_t NextBelow(std::uint64_t bound) { return Next() % bound; }

  bool NextBernoulli(double p) { return NextDouble() < p; }

  // Standard normal via Box-Muller.
  double NextGaussian() {
    double u1 = NextDouble();
    while (u1 <= 0.0) u1 = NextDouble();
    const double u2 = NextDouble();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace dialeval

#endif  // DIALEVAL_RNG_H_
