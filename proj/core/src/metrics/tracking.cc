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

#include "panotrack/metrics/tracking.h"

#include <cmath>
#include <string>

#include "panotrack/error.h"

namespace panotrack::metrics {

double ComputeAs(const Track& g, const std::vector<Track>& pred_tubes,
                 const AssociationOptions& options) {
  const std::int64_t g_area = g.TubeArea();
  if (g_area == 0) {
    throw InputError("association score of an empty track is undefined");
  }
  double weighted = 0.0;
  for (const Track& p : pred_tubes) {
    if (options.require_same_class && p.class_id != g.class_id) continue;
    const std::int64_t tpa = TubeIntersectionArea(p, g);
    if (tpa == 0) continue;
    weighted += static_cast<double>(tpa) * TubeIou(p, g);
  }
  return weighted / static_cast<double>(g_area);
}

double ComputeAq(const std::vector<Track>& gt_tracks, const Sequence& pred,
                 const AssociationOptions& options) {
  if (gt_tracks.empty()) return 1.0;  // vacuously perfect
  const std::vector<Track> pred_tubes = BuildTracks(pred);
  double sum = 0.0;
  for (const Track& g : gt_tracks) {
    sum += ComputeAs(g, pred_tubes, options);
  }
  return sum / static_cast<double>(gt_tracks.size());
}

IdSwitchCount CountIdSwitches(const Track& g, const Sequence& pred) {
  if (g.masks.empty()) {
    throw InputError("id switches of an empty track are undefined");
  }
  IdSwitchCount count;
  count.n_ids = static_cast<int>(g.masks.size()) - 1;
  int previous_match = -1;
  bool first = true;
  for (const auto& [frame, mask] : g.masks) {
    if (frame < 0 || frame >= static_cast<int>(pred.frames.size())) {
      throw InputError("track frame " + std::to_string(frame) +
                       " outside the predicted sequence");
    }
    int match = -1;
    for (const Segment& segment :
         ExtractSegments(pred.frames[frame], pred.class_table)) {
      if (segment.instance_id == 0) continue;
      if (MaskIou(segment.mask, mask) > 0.5) {
        match = segment.instance_id;
        break;  // disjoint segments: at most one candidate above 0.5
      }
    }
    if (!first && (previous_match == -1 || match == -1 ||
                   previous_match != match)) {
      count.ids += 1;
    }
    previous_match = match;
    first = false;
  }
  return count;
}

double CombineTrackScore(double fragmentation_factor, double as_score) {
  return std::sqrt(fragmentation_factor * as_score);
}

TqResult ComputeTq(const std::vector<Track>& gt_tracks, const Sequence& pred,
                   const AssociationOptions& options) {
  TqResult result;
  if (gt_tracks.empty()) {
    result.tq = 1.0;
    result.vacuous = true;
    return result;
  }
  const std::vector<Track> pred_tubes = BuildTracks(pred);
  double sum = 0.0;
  for (const Track& g : gt_tracks) {
    TrackScore score;
    score.track_id = g.track_id;
    score.as_score = ComputeAs(g, pred_tubes, options);
    const IdSwitchCount switches = CountIdSwitches(g, pred);
    score.ids = switches.ids;
    score.n_ids = switches.n_ids;
    const double fragmentation =
        switches.n_ids == 0
            ? 1.0
            : 1.0 - static_cast<double>(switches.ids) / switches.n_ids;
    score.tq_g = CombineTrackScore(fragmentation, score.as_score);
    sum += score.tq_g;
    result.track_scores.push_back(score);
  }
  result.tq = sum / static_cast<double>(gt_tracks.size());
  return result;
}

namespace {

void RequireUnitRange(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InputError(std::string(name) + " must lie in [0, 1], got " +
                     std::to_string(value));
  }
}

}  // namespace

double ComputePat(double pq, double tq) {
  RequireUnitRange(pq, "pq");
  RequireUnitRange(tq, "tq");
  if (pq + tq == 0.0) return 0.0;
  return 2.0 * pq * tq / (pq + tq);
}

double ComputeStq(double aq, double sq) {
  RequireUnitRange(aq, "aq");
  RequireUnitRange(sq, "sq");
  return std::sqrt(aq * sq);
}

}  // namespace panotrack::metrics
