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

#include "panotrack/metrics/pq.h"

#include <string>

#include "metrics/accumulators.h"
#include "metrics/contingency.h"
#include "panotrack/error.h"

namespace panotrack::metrics {

namespace {

void RequireComparable(const Sequence& gt, const Sequence& pred) {
  if (gt.frames.size() != pred.frames.size()) {
    throw InputError("sequences have " + std::to_string(gt.frames.size()) +
                     " and " + std::to_string(pred.frames.size()) +
                     " frames");
  }
  if (!(gt.class_table == pred.class_table)) {
    throw InputError("sequences use different class tables");
  }
}

}  // namespace

double PqClassStats::Pq() const {
  const double denom = static_cast<double>(tp) + 0.5 * fp + 0.5 * fn;
  if (denom == 0.0) return 0.0;
  return iou_sum / denom;
}

double PqClassStats::MatchedIou() const {
  if (tp == 0) return 0.0;
  return iou_sum / static_cast<double>(tp);
}

double PqClassStats::Rq() const {
  const double denom = static_cast<double>(tp) + 0.5 * fp + 0.5 * fn;
  if (denom == 0.0) return 0.0;
  return static_cast<double>(tp) / denom;
}

namespace {

template <typename Getter>
double MeanOverOccurringClasses(const std::vector<PqClassStats>& classes,
                                Getter getter) {
  double sum = 0.0;
  int count = 0;
  for (const PqClassStats& stats : classes) {
    if (stats.tp + stats.fp + stats.fn == 0) continue;
    sum += getter(stats);
    count += 1;
  }
  if (count == 0) return 0.0;
  return sum / count;
}

}  // namespace

double PqStats::MeanPq() const {
  return MeanOverOccurringClasses(classes,
                                  [](const PqClassStats& s) { return s.Pq(); });
}

double PqStats::MeanMatchedIou() const {
  return MeanOverOccurringClasses(
      classes, [](const PqClassStats& s) { return s.MatchedIou(); });
}

double PqStats::MeanRq() const {
  return MeanOverOccurringClasses(classes,
                                  [](const PqClassStats& s) { return s.Rq(); });
}

PqStats ComputePq(const Sequence& gt, const Sequence& pred) {
  RequireComparable(gt, pred);
  internal::PqAccumulator accumulator(gt.class_table.ignore_id());
  for (std::size_t t = 0; t < gt.frames.size(); ++t) {
    accumulator.AddFrame(
        internal::BuildContingency(gt.frames[t], pred.frames[t]));
  }
  return accumulator.Finish();
}

double SqClassStats::Iou() const {
  const std::int64_t uni = gt_pixels + pred_pixels - intersection;
  if (uni == 0) return 0.0;
  return static_cast<double>(intersection) / static_cast<double>(uni);
}

double SqStats::Mean() const {
  double sum = 0.0;
  int count = 0;
  for (const SqClassStats& stats : classes) {
    if (stats.gt_pixels == 0) continue;
    sum += stats.Iou();
    count += 1;
  }
  if (count == 0) return 0.0;
  return sum / count;
}

SqStats ComputeSq(const Sequence& gt, const Sequence& pred) {
  RequireComparable(gt, pred);
  internal::SqAccumulator accumulator(gt.class_table.ignore_id());
  for (std::size_t t = 0; t < gt.frames.size(); ++t) {
    accumulator.AddFrame(
        internal::BuildContingency(gt.frames[t], pred.frames[t]));
  }
  return accumulator.Finish();
}

}  // namespace panotrack::metrics
