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

#ifndef PANOTRACK_SIM_PERTURB_H_
#define PANOTRACK_SIM_PERTURB_H_

#include <cstdint>

#include "panotrack/panoptic_map.h"

namespace panotrack::sim {

// Breaks track identities: picks k distinct (track, frame) cut points at
// random and hands each track a fresh instance id from its cut onward.
// Pixels keep their masks and classes; only instance ids change. For one
// seed the chosen cuts for k are a prefix of those for k+1, so association
// scores degrade monotonically in k. Throws when fewer than k cuts exist.
Sequence PerturbIds(const Sequence& gt, int k, std::uint64_t seed);

// Erodes every instance mask by the given radius (full 3x3 neighborhood
// per pass). Vacated pixels take the class of the nearest background
// pixel; masks that erode away vanish entirely. Ids are untouched on
// surviving masks. Deterministic; the seed is accepted for interface
// symmetry and unused.
Sequence PerturbMasks(const Sequence& gt, int erosion, std::uint64_t seed);

// Removes each (instance, frame) mask independently with the given
// probability, replacing its pixels with the nearest background class.
Sequence DropDetections(const Sequence& gt, double rate, std::uint64_t seed);

}  // namespace panotrack::sim

#endif  // PANOTRACK_SIM_PERTURB_H_
