// Copyright 2026 The Panotrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PANOTRACK_SIM_RNG_H_
#define PANOTRACK_SIM_RNG_H_

#include <cstdint>
#include <optional>
#include <random>

namespace panotrack::sim {

// Seedable, splittable random source with a frozen algorithm, so that
// fixtures regenerate bit-identically anywhere. The raw stream is the
// standard-specified mt19937_64; every derived draw (bounded integers,
// doubles, normals) is implemented here rather than with library
// distributions, whose outputs vary across standard libraries.
class SplitRng {
 public:
  // Recorded in generated manifests; bump when any draw rule changes.
  static constexpr const char* kAlgorithmId = "pt-mt19937_64-v1";

  explicit SplitRng(std::uint64_t seed);

  // A statistically independent child stream. Pure function of
  // (constructor seed, stream index): splitting never consumes draws.
  SplitRng Split(std::uint64_t stream) const;

  std::uint64_t NextUint64();

  // Uniform over {lo, ..., hi}, inclusive, rejection-sampled unbiased.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

  // Uniform in [0, 1), 53 random bits.
  double UniformDouble();

  // Standard normal via the Box-Muller transform; pairs are cached.
  double Normal();

  bool Bernoulli(double probability);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> cached_normal_;
};

}  // namespace panotrack::sim

#endif  // PANOTRACK_SIM_RNG_H_
