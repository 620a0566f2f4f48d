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
//
// Sequence-level accumulators fed one frame contingency at a time, in
// frame order. All floating-point sums run in sorted key order so results
// do not depend on prediction id numbering or on how work is batched.

#ifndef PANOTRACK_SRC_METRICS_ACCUMULATORS_H_
#define PANOTRACK_SRC_METRICS_ACCUMULATORS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "metrics/contingency.h"
#include "panotrack/metrics/pq.h"
#include "panotrack/metrics/tracking.h"

namespace panotrack::metrics::internal {

class PqAccumulator {
 public:
  explicit PqAccumulator(std::optional<int> ignore_id)
      : ignore_id_(ignore_id) {}

  void AddFrame(const FrameContingency& cells);
  PqStats Finish() const;

 private:
  bool IsIgnoreClass(int class_id) const {
    return ignore_id_.has_value() && *ignore_id_ == class_id;
  }

  std::optional<int> ignore_id_;
  std::map<int, PqClassStats> classes_;
};

class SqAccumulator {
 public:
  explicit SqAccumulator(std::optional<int> ignore_id)
      : ignore_id_(ignore_id) {}

  void AddFrame(const FrameContingency& cells);
  SqStats Finish() const;

 private:
  bool IsIgnoreClass(int class_id) const {
    return ignore_id_.has_value() && *ignore_id_ == class_id;
  }

  std::optional<int> ignore_id_;
  std::map<int, SqClassStats> classes_;
};

// Space-time overlap bookkeeping for AQ, AS, id switches and TQ. Tracks
// are identified by instance id; an id reappearing under a different
// class is rejected, mirroring track assembly.
class TubeAccumulator {
 public:
  void AddFrame(int frame, const FrameContingency& cells);

  struct Result {
    double aq = 1.0;
    double tq = 1.0;
    bool vacuous = true;  // no ground-truth tracks seen
    std::vector<TrackScore> track_scores;
  };
  Result Finish(const AssociationOptions& options) const;

  int gt_track_count() const { return static_cast<int>(gt_area_.size()); }
  int pred_track_count() const { return static_cast<int>(pred_area_.size()); }

 private:
  // Tube volumes and classes per instance id.
  std::map<int, std::int64_t> gt_area_;
  std::map<int, std::int64_t> pred_area_;
  std::map<int, int> gt_class_;
  std::map<int, int> pred_class_;
  // Overlap pixels per (gt id, pred id) pair, over all frames.
  std::map<std::pair<int, int>, std::int64_t> overlap_;
  // Per gt id: (frame, matched pred id or -1), appended in frame order.
  std::map<int, std::vector<std::pair<int, int>>> frame_matches_;
};

}  // namespace panotrack::metrics::internal

#endif  // PANOTRACK_SRC_METRICS_ACCUMULATORS_H_
