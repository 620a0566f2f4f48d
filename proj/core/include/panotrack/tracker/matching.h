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

#ifndef PANOTRACK_TRACKER_MATCHING_H_
#define PANOTRACK_TRACKER_MATCHING_H_

#include <optional>
#include <span>
#include <vector>

#include "panotrack/mask.h"
#include "panotrack/tracker/detection.h"

namespace panotrack::tracker {

// One live track's mask carried into the current frame.
struct PropagatedTrack {
  int track_id = 0;
  int class_id = 0;
  BitMask mask;
};

// Stage 1: one-to-one matching between propagated track masks and current
// detections that maximizes total IoU over same-class pairs reaching
// iou_min. Entries below the threshold never match. Returns, per
// detection, the matched track id.
std::vector<std::optional<int>> MatchByMotion(
    std::span<const PropagatedTrack> propagated,
    std::span<const Detection> current, double iou_min);

// One live track's appearance summary: the mean of its stored embedding
// history.
struct AppearanceCandidate {
  int track_id = 0;
  int class_id = 0;
  Embedding embedding;
};

// Stage 2: one-to-one matching maximizing total cosine similarity over
// same-class pairs reaching sim_min. Zero embeddings on either side
// never match. Returns, per detection, the matched track id.
std::vector<std::optional<int>> MatchByAppearance(
    std::span<const Detection> unmatched,
    std::span<const AppearanceCandidate> candidates, double sim_min);

}  // namespace panotrack::tracker

#endif  // PANOTRACK_TRACKER_MATCHING_H_
