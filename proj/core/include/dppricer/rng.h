// Copyright 2026 The dp-pricer Authors
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

#ifndef DPPRICER_RNG_H_
#define DPPRICER_RNG_H_

#include <cstdint>
#include <random>

namespace dppricer {

using Rng = std::mt19937_64;

// Independent sub-streams of one trial. Each stochastic source draws from its
// own stream, so disabling one source leaves the others' draws unchanged.
enum class Stream : std::uint64_t {
  kEnvironment = 1,
  kExploration = 2,
  kCovNoise = 3,
  kMleNoise = 4,
  kInputPerturb = 5,
  kBaselinePrice = 6,
};

// SplitMix64 finalizer.
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng MakeStream(std::uint64_t trial_seed, Stream stream) {
  return Rng(MixSeed(MixSeed(trial_seed) ^
                     MixSeed(static_cast<std::uint64_t>(stream))));
}

}  // namespace dppricer

#endif  // DPPRICER_RNG_H_
