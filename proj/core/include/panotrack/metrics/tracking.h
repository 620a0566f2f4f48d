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

#ifndef PANOTRACK_METRICS_TRACKING_H_
#define PANOTRACK_METRICS_TRACKING_H_

#include <vector>

#include "panotrack/panoptic_map.h"
#include "panotrack/track.h"

namespace panotrack::metrics {

struct AssociationOptions {
  // When true, only predicted tubes of the track's own class contribute
  // to association scores. Off by default: tubes are id-level objects.
  bool require_same_class = false;
};

// Association score of one ground-truth track against a set of predicted
// id-tubes:
//   AS(g) = (1/|g|) * sum over overlapping p of |p n g| * tube_iou(p, g)
// where |g| is the track's tube volume in pixels.
double ComputeAs(const Track& g, const std::vector<Track>& pred_tubes,
                 const AssociationOptions& options = {});

// Mean of ComputeAs over the ground-truth tracks, with predicted tubes
// assembled from the prediction's instance ids. Returns 1 when there are
// no ground-truth tracks (vacuously perfect; see EvaluateSequence).
double ComputeAq(const std::vector<Track>& gt_tracks, const Sequence& pred,
                 const AssociationOptions& options = {});

struct IdSwitchCount {
  int ids = 0;    // consecutive-frame pairs with inconsistent matches
  int n_ids = 0;  // frames(g) - 1, the maximum possible
};

// Matches each frame of g to the predicted instance whose mask has
// IoU > 0.5 with g's mask there (at most one can exist), then counts the
// consecutive-frame pairs of g whose matched ids differ or are missing.
IdSwitchCount CountIdSwitches(const Track& g, const Sequence& pred);

struct TrackScore {
  int track_id = 0;
  double as_score = 0.0;
  int ids = 0;
  int n_ids = 0;
  double tq_g = 0.0;
};

struct TqResult {
  double tq = 0.0;
  // True when there were no ground-truth tracks to score; tq is then
  // reported as 1.
  bool vacuous = false;
  std::vector<TrackScore> track_scores;
};

// Per-track tracking quality and its mean:
//   TQ(g) = sqrt((1 - IDS/N_IDS) * AS(g)),  TQ = mean over tracks,
// with the fragmentation factor defined as 1 for single-frame tracks
// (IDS = N_IDS = 0).
TqResult ComputeTq(const std::vector<Track>& gt_tracks, const Sequence& pred,
                   const AssociationOptions& options = {});

// The per-track combination rule above, isolated so alternative readings
// are a one-line change.
double CombineTrackScore(double fragmentation_factor, double as_score);

// Harmonic mean of panoptic and tracking quality; 0 when both are 0.
double ComputePat(double pq, double tq);

// Geometric mean of association and segmentation quality.
double ComputeStq(double aq, double sq);

}  // namespace panotrack::metrics

#endif  // PANOTRACK_METRICS_TRACKING_H_
