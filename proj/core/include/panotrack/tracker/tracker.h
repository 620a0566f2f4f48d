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

#ifndef PANOTRACK_TRACKER_TRACKER_H_
#define PANOTRACK_TRACKER_TRACKER_H_

#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <vector>

#include "panotrack/class_table.h"
#include "panotrack/panoptic_map.h"
#include "panotrack/tracker/detection.h"
#include "panotrack/tracker/fusion.h"
#include "panotrack/tracker/matching.h"

namespace panotrack::tracker {

struct TrackerConfig {
  double iou_min = 0.3;   // motion-stage acceptance threshold
  double sim_min = 0.7;   // appearance-stage acceptance threshold
  int max_age = 12;       // frames a track may go unseen before retiring
  int embedding_length = 128;
  int history_length = 8;  // embeddings kept per track, mean-pooled
  int min_area = 32;       // pixels; smaller resolved instances are dropped

  void Validate() const;
};

// Association memory across the frames of one sequence. Single-owner:
// one sequence's frames pass through one state strictly in order.
class TrackerState {
 public:
  explicit TrackerState(TrackerConfig config);

  struct TrackEntry {
    int class_id = 0;
    BitMask last_mask;
    int last_frame = 0;
    std::deque<Embedding> embedding_history;

    Embedding MeanEmbedding() const;
  };

  const TrackerConfig& config() const { return config_; }
  const std::map<int, TrackEntry>& bank() const { return bank_; }
  int next_id() const { return next_id_; }
  int last_frame_index() const { return last_frame_index_; }

  // Frames a track has gone unseen as of frame_index; 0 when it was seen
  // in the immediately preceding frame.
  int AgeAt(const TrackEntry& entry, int frame_index) const {
    return frame_index - entry.last_frame - 1;
  }

  // Tracks still eligible for matching at frame_index, ascending by id.
  std::vector<int> LiveTrackIds(int frame_index) const;

  // Advances by one frame: resolves detections and semantic evidence
  // into a panoptic map, associates the surviving instances with the
  // bank by motion first and appearance second, mints fresh ids for the
  // rest, retires tracks unseen for more than max_age frames, and
  // returns the map relabeled with track ids. frame_index must exceed
  // the previously processed one.
  PanopticMap Step(int frame_index, std::span<const Detection> detections,
                   const SemanticLogits& semantic, const ClassTable& table);

  // Variant with the semantic evidence collapsed to a per-pixel class
  // map (row-major, width * height entries).
  PanopticMap Step(int frame_index, std::span<const Detection> detections,
                   std::span<const std::uint16_t> semantic_classes, int width,
                   int height, const ClassTable& table);

 private:
  PanopticMap StepResolved(int frame_index,
                           std::span<const Detection> detections,
                           ResolveResult resolved, const ClassTable& table);

  TrackerConfig config_;
  std::map<int, TrackEntry> bank_;
  int next_id_ = 1;
  int last_frame_index_ = -1;
};

// Free-function spelling of TrackerState::Step.
inline PanopticMap StepTracker(TrackerState& state, int frame_index,
                               std::span<const Detection> detections,
                               const SemanticLogits& semantic,
                               const ClassTable& table) {
  return state.Step(frame_index, detections, semantic, table);
}

inline PanopticMap StepTracker(TrackerState& state, int frame_index,
                               std::span<const Detection> detections,
                               std::span<const std::uint16_t> semantic_classes,
                               int width, int height,
                               const ClassTable& table) {
  return state.Step(frame_index, detections, semantic_classes, width, height,
                    table);
}

}  // namespace panotrack::tracker

#endif  // PANOTRACK_TRACKER_TRACKER_H_
