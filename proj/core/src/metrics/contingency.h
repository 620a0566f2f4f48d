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

// Internal to the metrics implementation; not installed.

#ifndef PANOTRACK_SRC_METRICS_CONTINGENCY_H_
#define PANOTRACK_SRC_METRICS_CONTINGENCY_H_

#include <cstdint>
#include <map>

#include "panotrack/panoptic_map.h"

namespace panotrack::metrics::internal {

// (class, instance) of one side of a pixel, packed for cheap comparison.
inline std::uint32_t PackSide(std::uint16_t class_id,
                              std::uint16_t instance_id) {
  return (static_cast<std::uint32_t>(class_id) << 16) | instance_id;
}

inline std::uint16_t SideClass(std::uint32_t side) {
  return static_cast<std::uint16_t>(side >> 16);
}

inline std::uint16_t SideInstance(std::uint32_t side) {
  return static_cast<std::uint16_t>(side & 0xffff);
}

inline std::uint64_t PackCell(std::uint32_t gt_side, std::uint32_t pred_side) {
  return (static_cast<std::uint64_t>(gt_side) << 32) | pred_side;
}

inline std::uint32_t CellGt(std::uint64_t cell) {
  return static_cast<std::uint32_t>(cell >> 32);
}

inline std::uint32_t CellPred(std::uint64_t cell) {
  return static_cast<std::uint32_t>(cell & 0xffffffffu);
}

// Pixel counts of every co-occurring (gt segment, pred segment) pair in
// one frame. Ordered by gt side then pred side, so one gt segment's cells
// are contiguous; iteration order is the accumulation order everywhere,
// which keeps floating-point results reproducible.
using FrameContingency = std::map<std::uint64_t, std::int64_t>;

// Single pass over the two label maps, run-length compressed: neighboring
// pixels usually share both labels, so map updates happen once per run.
FrameContingency BuildContingency(const PanopticMap& gt,
                                  const PanopticMap& pred);

}  // namespace panotrack::metrics::internal

#endif  // PANOTRACK_SRC_METRICS_CONTINGENCY_H_
