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

#ifndef PANOTRACK_METRICS_LOSSES_H_
#define PANOTRACK_METRICS_LOSSES_H_

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "panotrack/embedding.h"
#include "panotrack/mask.h"

namespace panotrack::metrics {

// Per-pixel class probability distributions. values is pixel-major with
// one channel per entry of class_ids; each pixel's channel vector is
// non-negative and sums to 1 within 1e-6.
struct ProbMap {
  int width = 0;
  int height = 0;
  std::vector<int> class_ids;
  std::vector<double> values;

  std::int64_t num_pixels() const {
    return static_cast<std::int64_t>(width) * height;
  }
  int ChannelOf(int class_id) const;  // -1 when the class has no channel
  void Validate() const;
};

// Bootstrapped per-pixel log loss: the quartile of pixels with the worst
// true-class log probability receives weight 4/(W*H), the rest weight 0.
// The quartile is the exact k worst pixels with k = max(1, floor(W*H/4)),
// ties at the boundary broken by pixel index. Probabilities are clamped
// below at 1e-12.
double SemanticBootstrapLoss(const ProbMap& prob,
                             std::span<const std::uint16_t> gt_classes);

// Sum of (1 - soft IoU) between each propagated soft mask and the ground
// truth mask under the same (instance, frame) key. The two collections
// must agree on their key sets.
double MotionLoss(
    const std::map<std::pair<int, int>, ProbMask>& propagated,
    const std::map<std::pair<int, int>, BitMask>& gt);

// Binary cross entropy over embedding-pair similarities. Each pair's
// cosine similarity delta acts as the logit of "same track" after
// temperature scaling: loss = sum of
//   -[y*log(sigmoid(delta/temperature)) +
//     (1-y)*log(1 - sigmoid(delta/temperature))].
// Log arguments are clamped below at 1e-12.
double AppearanceMatchingLoss(
    std::span<const std::pair<Embedding, Embedding>> pairs,
    std::span<const int> same_track, int track_count,
    double temperature = 0.1);

}  // namespace panotrack::metrics

#endif  // PANOTRACK_METRICS_LOSSES_H_
