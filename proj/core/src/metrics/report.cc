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

#include "panotrack/metrics/report.h"

#include <cmath>
#include <string>
#include <utility>

#include "metrics/accumulators.h"
#include "metrics/contingency.h"
#include "panotrack/error.h"

namespace panotrack::metrics {

MetricReport EvaluateSequence(const Sequence& gt, const Sequence& pred,
                              const EvaluateOptions& options) {
  if (gt.frames.empty()) {
    throw InputError("cannot evaluate an empty sequence");
  }
  if (gt.frames.size() != pred.frames.size()) {
    throw InputError("sequences have " + std::to_string(gt.frames.size()) +
                     " and " + std::to_string(pred.frames.size()) +
                     " frames");
  }
  if (!(gt.class_table == pred.class_table)) {
    throw InputError("sequences use different class tables");
  }

  internal::PqAccumulator pq_accumulator(gt.class_table.ignore_id());
  internal::SqAccumulator sq_accumulator(gt.class_table.ignore_id());
  internal::TubeAccumulator tube_accumulator;
  for (std::size_t t = 0; t < gt.frames.size(); ++t) {
    const internal::FrameContingency cells =
        internal::BuildContingency(gt.frames[t], pred.frames[t]);
    pq_accumulator.AddFrame(cells);
    sq_accumulator.AddFrame(cells);
    tube_accumulator.AddFrame(static_cast<int>(t), cells);
  }

  MetricReport report;
  report.pq_stats = pq_accumulator.Finish();
  report.sq_stats = sq_accumulator.Finish();
  internal::TubeAccumulator::Result tubes =
      tube_accumulator.Finish(options.association);
  report.track_scores = std::move(tubes.track_scores);

  report.pq = report.pq_stats.MeanPq();
  report.sq = report.sq_stats.Mean();
  report.aq = tubes.aq;
  report.tq = tubes.tq;
  report.tracking_vacuous = tubes.vacuous;
  report.stq = ComputeStq(report.aq, report.sq);
  report.pat = ComputePat(report.pq, report.tq);

  report.frame_count = static_cast<int>(gt.frames.size());
  report.gt_track_count = tube_accumulator.gt_track_count();
  report.pred_track_count = tube_accumulator.pred_track_count();

  // The stored headline numbers must be exactly the stated combinations
  // of their parts.
  PT_CHECK(report.stq == std::sqrt(report.aq * report.sq));
  PT_CHECK(report.pat == (report.pq + report.tq == 0.0
                              ? 0.0
                              : 2.0 * report.pq * report.tq /
                                    (report.pq + report.tq)));
  return report;
}

}  // namespace panotrack::metrics
