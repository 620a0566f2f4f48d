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

#ifndef PANOTRACK_METRICS_PQ_H_
#define PANOTRACK_METRICS_PQ_H_

#include <cstdint>
#include <vector>

#include "panotrack/panoptic_map.h"

namespace panotrack::metrics {

// Segment-level match counts for one class, accumulated over a sequence.
// A ground-truth and a predicted segment of the same class match when
// their IoU exceeds 0.5; at most one match per segment can exist.
struct PqClassStats {
  int class_id = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double iou_sum = 0.0;

  // iou_sum / (tp + fp/2 + fn/2); 0 when the class never occurs.
  double Pq() const;
  // Mean matched IoU, iou_sum / tp; 0 when tp == 0.
  double MatchedIou() const;
  // tp / (tp + fp/2 + fn/2); 0 when the class never occurs.
  double Rq() const;
};

struct PqStats {
  // One entry per class that occurs in ground truth or prediction,
  // ascending by class id.
  std::vector<PqClassStats> classes;

  // Means over classes with tp + fp + fn > 0.
  double MeanPq() const;
  double MeanMatchedIou() const;
  double MeanRq() const;
};

// Panoptic quality accumulated per frame over the sequence. Predicted
// segment areas are reduced by their overlap with the ignore region for
// matching, and predicted segments that are majority-ignore are not
// counted as false positives.
PqStats ComputePq(const Sequence& gt, const Sequence& pred);

// Per-class semantic IoU accumulated over all frames, restricted to
// pixels whose ground-truth class is not the ignore class.
struct SqClassStats {
  int class_id = 0;
  std::int64_t intersection = 0;
  std::int64_t gt_pixels = 0;
  std::int64_t pred_pixels = 0;

  double Iou() const;
};

struct SqStats {
  // One entry per class with gt_pixels + pred_pixels > 0, ascending by
  // class id.
  std::vector<SqClassStats> classes;

  // Mean IoU over classes present in ground truth.
  double Mean() const;
};

SqStats ComputeSq(const Sequence& gt, const Sequence& pred);

}  // namespace panotrack::metrics

#endif  // PANOTRACK_METRICS_PQ_H_
