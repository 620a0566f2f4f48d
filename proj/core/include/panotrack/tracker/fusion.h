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

#ifndef PANOTRACK_TRACKER_FUSION_H_
#define PANOTRACK_TRACKER_FUSION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "panotrack/class_table.h"
#include "panotrack/panoptic_map.h"
#include "panotrack/tracker/detection.h"

namespace panotrack::tracker {

// Element-wise fusion of two logit maps:
//   fl = (sigmoid(a) + sigmoid(b)) * (a + b).
// Symmetric, and fl carries the sign of a + b.
LogitsMap FuseLogits(const LogitsMap& a, const LogitsMap& b);

// Per-pixel semantic logits, one channel per entry of class_ids.
struct SemanticLogits {
  int width = 0;
  int height = 0;
  std::vector<int> class_ids;
  std::vector<double> values;  // pixel-major, channel-minor

  std::int64_t num_pixels() const {
    return static_cast<std::int64_t>(width) * height;
  }
  void Validate(const ClassTable& table) const;
};

struct ResolveConfig {
  // Committed instances below this pixel area are dropped and release
  // their pixels to lower-scored detections.
  int min_area = 32;
};

struct ResolveResult {
  PanopticMap map;
  // Instance id in map per input detection; -1 for dropped detections.
  std::vector<int> instance_of_detection;
};

// Flattens detections and semantic evidence into one panoptic map.
// Detections claim pixels in descending score order (ties toward the
// lower index): a detection with mask logits claims where its fusion
// with the semantic channel of its class is positive, otherwise its
// binary mask. Unclaimed pixels take the semantic argmax over stuff
// channels with instance id 0. Instance ids are 1..k in claim order.
ResolveResult ResolvePanoptic(const SemanticLogits& semantic,
                              std::span<const Detection> detections,
                              const ClassTable& table,
                              const ResolveConfig& config = {});

// Same, with the semantic evidence already collapsed to a per-pixel
// class map. Unclaimed pixels keep the map's class when it is a stuff
// class; unclaimed thing-class pixels fall back to the ignore class
// (or the first stuff class when the table has no ignore entry).
ResolveResult ResolvePanopticFromClassMap(
    std::span<const std::uint16_t> semantic_classes, int width, int height,
    std::span<const Detection> detections, const ClassTable& table,
    const ResolveConfig& config = {});

// Motion-enhanced appearance features: w_a * f_a + w_p * f_p,
// element-wise over two equal-length vectors.
std::vector<double> CombineFeatures(const std::vector<double>& f_a,
                                    const std::vector<double>& f_p,
                                    double w_a, double w_p);

}  // namespace panotrack::tracker

#endif  // PANOTRACK_TRACKER_FUSION_H_
