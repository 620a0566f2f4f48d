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

#ifndef PANOTRACK_METRICS_REPORT_H_
#define PANOTRACK_METRICS_REPORT_H_

#include <vector>

#include "panotrack/metrics/pq.h"
#include "panotrack/metrics/tracking.h"
#include "panotrack/panoptic_map.h"

namespace panotrack::metrics {

// Every metric of one (ground truth, prediction) sequence pair. The
// headline fields satisfy stq == sqrt(aq * sq_mean) and
// pat == 2*pq*tq/(pq+tq) exactly as stored.
struct MetricReport {
  PqStats pq_stats;
  SqStats sq_stats;
  std::vector<TrackScore> track_scores;

  double pq = 0.0;
  double sq = 0.0;
  double aq = 0.0;
  double tq = 0.0;
  double stq = 0.0;
  double pat = 0.0;
  // No ground-truth tracks: aq and tq are vacuously 1.
  bool tracking_vacuous = false;

  int frame_count = 0;
  int gt_track_count = 0;
  int pred_track_count = 0;
};

struct EvaluateOptions {
  AssociationOptions association;
};

// Computes the full report in a single pass over the frames. Equivalent
// to composing ComputePq, ComputeSq, ComputeAq and ComputeTq, but shares
// the per-frame overlap tallies between them.
MetricReport EvaluateSequence(const Sequence& gt, const Sequence& pred,
                              const EvaluateOptions& options = {});

}  // namespace panotrack::metrics

#endif  // PANOTRACK_METRICS_REPORT_H_
