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

#include "metrics/accumulators.h"

#include <cmath>
#include <set>
#include <string>

#include "panotrack/error.h"

namespace panotrack::metrics::internal {

void PqAccumulator::AddFrame(const FrameContingency& cells) {
  // Predicted segment areas, and their overlap with the ignore region.
  // The ignore overlap is carved out of the matching denominator, and a
  // majority-ignore predicted segment is not a false positive.
  std::map<std::uint32_t, std::int64_t> pred_area;
  std::map<std::uint32_t, std::int64_t> pred_ignore;
  for (const auto& [cell, count] : cells) {
    const std::uint32_t pred = CellPred(cell);
    if (IsIgnoreClass(SideClass(pred))) continue;
    pred_area[pred] += count;
    if (IsIgnoreClass(SideClass(CellGt(cell)))) pred_ignore[pred] += count;
  }

  std::set<std::uint32_t> matched_pred;
  for (auto it = cells.begin(); it != cells.end();) {
    const std::uint32_t gt = CellGt(it->first);
    const auto segment_begin = it;
    std::int64_t gt_area = 0;
    while (it != cells.end() && CellGt(it->first) == gt) {
      gt_area += it->second;
      ++it;
    }
    const int gt_class = SideClass(gt);
    if (IsIgnoreClass(gt_class)) continue;

    PqClassStats& stats = classes_[gt_class];
    stats.class_id = gt_class;
    bool matched = false;
    for (auto cell_it = segment_begin; cell_it != it; ++cell_it) {
      const std::uint32_t pred = CellPred(cell_it->first);
      if (SideClass(pred) != gt_class || IsIgnoreClass(SideClass(pred))) {
        continue;
      }
      const std::int64_t inter = cell_it->second;
      const double denom = static_cast<double>(gt_area + pred_area[pred] -
                                               inter - pred_ignore[pred]);
      const double iou = static_cast<double>(inter) / denom;
      if (iou > 0.5) {
        // Disjointness makes a second candidate above 0.5 impossible.
        stats.tp += 1;
        stats.iou_sum += iou;
        matched_pred.insert(pred);
        matched = true;
        break;
      }
    }
    if (!matched) stats.fn += 1;
  }

  for (const auto& [pred, area] : pred_area) {
    PqClassStats& stats = classes_[SideClass(pred)];
    stats.class_id = SideClass(pred);
    if (matched_pred.contains(pred)) continue;
    if (2 * pred_ignore[pred] > area) continue;
    stats.fp += 1;
  }
}

PqStats PqAccumulator::Finish() const {
  PqStats stats;
  stats.classes.reserve(classes_.size());
  for (const auto& [class_id, class_stats] : classes_) {
    stats.classes.push_back(class_stats);
  }
  return stats;
}

void SqAccumulator::AddFrame(const FrameContingency& cells) {
  for (const auto& [cell, count] : cells) {
    const int gt_class = SideClass(CellGt(cell));
    if (IsIgnoreClass(gt_class)) continue;
    SqClassStats& gt_stats = classes_[gt_class];
    gt_stats.class_id = gt_class;
    gt_stats.gt_pixels += count;
    const int pred_class = SideClass(CellPred(cell));
    if (IsIgnoreClass(pred_class)) continue;
    SqClassStats& pred_stats = classes_[pred_class];
    pred_stats.class_id = pred_class;
    pred_stats.pred_pixels += count;
    if (pred_class == gt_class) gt_stats.intersection += count;
  }
}

SqStats SqAccumulator::Finish() const {
  SqStats stats;
  stats.classes.reserve(classes_.size());
  for (const auto& [class_id, class_stats] : classes_) {
    stats.classes.push_back(class_stats);
  }
  return stats;
}

namespace {

void RecordClass(std::map<int, int>& classes, int instance_id, int class_id,
                 const char* side) {
  const auto [it, inserted] = classes.emplace(instance_id, class_id);
  if (!inserted && it->second != class_id) {
    throw InputError(std::string(side) + " instance id " +
                     std::to_string(instance_id) + " labeled as class " +
                     std::to_string(it->second) + " and class " +
                     std::to_string(class_id));
  }
}

}  // namespace

void TubeAccumulator::AddFrame(int frame, const FrameContingency& cells) {
  // Per-frame segment areas of thing instances on both sides.
  std::map<std::uint32_t, std::int64_t> gt_frame_area;
  std::map<std::uint32_t, std::int64_t> pred_frame_area;
  for (const auto& [cell, count] : cells) {
    const std::uint32_t gt = CellGt(cell);
    const std::uint32_t pred = CellPred(cell);
    if (SideInstance(gt) > 0) gt_frame_area[gt] += count;
    if (SideInstance(pred) > 0) pred_frame_area[pred] += count;
  }
  for (const auto& [gt, area] : gt_frame_area) {
    RecordClass(gt_class_, SideInstance(gt), SideClass(gt), "ground-truth");
    gt_area_[SideInstance(gt)] += area;
  }
  for (const auto& [pred, area] : pred_frame_area) {
    RecordClass(pred_class_, SideInstance(pred), SideClass(pred), "predicted");
    pred_area_[SideInstance(pred)] += area;
  }

  // Tube overlaps, and the frame-level IoU > 0.5 match per gt instance
  // that drives id-switch counting. Disjointness again means at most one
  // predicted instance can clear 0.5.
  std::map<std::uint32_t, int> frame_match;
  for (const auto& [cell, count] : cells) {
    const std::uint32_t gt = CellGt(cell);
    const std::uint32_t pred = CellPred(cell);
    if (SideInstance(gt) == 0 || SideInstance(pred) == 0) continue;
    overlap_[{SideInstance(gt), SideInstance(pred)}] += count;
    const double iou =
        static_cast<double>(count) /
        static_cast<double>(gt_frame_area[gt] + pred_frame_area[pred] - count);
    if (iou > 0.5) frame_match[gt] = SideInstance(pred);
  }
  for (const auto& [gt, area] : gt_frame_area) {
    const auto match = frame_match.find(gt);
    frame_matches_[SideInstance(gt)].emplace_back(
        frame, match == frame_match.end() ? -1 : match->second);
  }
}

TubeAccumulator::Result TubeAccumulator::Finish(
    const AssociationOptions& options) const {
  Result result;
  if (gt_area_.empty()) return result;  // vacuous: aq = tq = 1

  result.vacuous = false;
  double aq_sum = 0.0;
  double tq_sum = 0.0;
  for (const auto& [gt_id, gt_area] : gt_area_) {
    double weighted = 0.0;
    for (auto it = overlap_.lower_bound({gt_id, 0});
         it != overlap_.end() && it->first.first == gt_id; ++it) {
      const int pred_id = it->first.second;
      if (options.require_same_class &&
          pred_class_.at(pred_id) != gt_class_.at(gt_id)) {
        continue;
      }
      const std::int64_t tpa = it->second;
      const double tube_iou =
          static_cast<double>(tpa) /
          static_cast<double>(gt_area + pred_area_.at(pred_id) - tpa);
      weighted += static_cast<double>(tpa) * tube_iou;
    }
    const double as_score = weighted / static_cast<double>(gt_area);

    const auto& matches = frame_matches_.at(gt_id);
    int ids = 0;
    for (std::size_t i = 1; i < matches.size(); ++i) {
      const int previous = matches[i - 1].second;
      const int current = matches[i].second;
      if (previous == -1 || current == -1 || previous != current) ids += 1;
    }
    const int n_ids = static_cast<int>(matches.size()) - 1;
    const double fragmentation =
        n_ids == 0 ? 1.0 : 1.0 - static_cast<double>(ids) / n_ids;
    const double tq_g = CombineTrackScore(fragmentation, as_score);

    result.track_scores.push_back(
        TrackScore{gt_id, as_score, ids, n_ids, tq_g});
    aq_sum += as_score;
    tq_sum += tq_g;
  }
  result.aq = aq_sum / static_cast<double>(gt_area_.size());
  result.tq = tq_sum / static_cast<double>(gt_area_.size());
  return result;
}

}  // namespace panotrack::metrics::internal
