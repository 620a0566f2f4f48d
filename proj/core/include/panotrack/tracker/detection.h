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

#ifndef PANOTRACK_TRACKER_DETECTION_H_
#define PANOTRACK_TRACKER_DETECTION_H_

#include <optional>
#include <utility>

#include "panotrack/embedding.h"
#include "panotrack/mask.h"

namespace panotrack::tracker {

// Per-pixel real-valued evidence for one instance; positive means
// foreground. All values finite.
struct LogitsMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major

  std::int64_t num_pixels() const {
    return static_cast<std::int64_t>(width) * height;
  }
  void Validate() const;
};

// One candidate object in one frame, as an upstream instance head would
// emit it: a mask, a thing class, a confidence score and an appearance
// embedding. The motion fields are optional: a mask already propagated
// from a previous track, or a plain pixel offset since the last frame.
struct Detection {
  BitMask mask;
  std::optional<LogitsMap> mask_logits;
  int class_id = 0;
  double score = 0.0;
  Embedding embedding;
  std::optional<BitMask> propagated_mask;
  std::optional<int> propagated_from;
  std::optional<std::pair<int, int>> offset;  // (dx, dy) pixels
};

// Enforces: non-empty mask, score in [0, 1], finite embedding, logits
// dimensions matching the mask, and propagated_mask and propagated_from
// present only together.
void ValidateDetection(const Detection& detection);

}  // namespace panotrack::tracker

#endif  // PANOTRACK_TRACKER_DETECTION_H_
