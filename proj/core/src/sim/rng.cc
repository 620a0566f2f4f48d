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

#include "panotrack/sim/rng.h"

#include <cmath>
#include <numbers>

#include "panotrack/error.h"

namespace panotrack::sim {
namespace {

std::uint64_t Splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

SplitRng SplitRng::Split(std::uint64_t stream) const {
  // Mixing the stream index before combining keeps nearby indices
  // (0, 1, 2, ...) from producing correlated child seeds.
  return SplitRng(Splitmix64(seed_ ^ Splitmix64(stream + 1)));
}

std::uint64_t SplitRng::NextUint64() { return engine_(); }

std::int64_t SplitRng::UniformInt(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw InputError("uniform_int: empty range [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) {
    // lo == INT64_MIN, hi == INT64_MAX: every draw is in range.
    return static_cast<std::int64_t>(NextUint64());
  }
  // Reject the tail that would bias the modulus.
  const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
  std::uint64_t draw = NextUint64();
  while (draw >= limit) {
    draw = NextUint64();
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                   draw % span);
}

double SplitRng::UniformDouble() {
  return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
}

double SplitRng::Normal() {
  if (cached_normal_.has_value()) {
    const double value = *cached_normal_;
    cached_normal_.reset();
    return value;
  }
  // Box-Muller on (0, 1] x [0, 1) so the logarithm stays finite.
  const double u = 1.0 - UniformDouble();
  const double v = UniformDouble();
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  cached_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

bool SplitRng::Bernoulli(double probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw InputError("bernoulli: probability " + std::to_string(probability) +
                     " outside [0, 1]");
  }
  return UniformDouble() < probability;
}

}  // namespace panotrack::sim
