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

#include "panotrack/tracker/tracker.h"

#include <algorithm>
#include <string>
#include <utility>

#include "panotrack/error.h"
#include "panotrack/tracker/assignment.h"

namespace panotrack::tracker {

namespace {

constexpr int kMaxTrackId = 65535;  // on-disk instance channel limit

}  // namespace

void TrackerConfig::Validate() const {
  if (!(iou_min > 0.0 && iou_min <= 1.0)) {
    throw InputError("iou_min must lie in (0, 1]");
  }
  if (!(sim_min > -1.0 && sim_min < 1.0)) {
    throw InputError("sim_min must lie in (-1, 1)");
  }
  if (max_age < 0) {
    throw InputError("max_age must be >= 0");
  }
  if (embedding_length < 1) {
    throw InputError("embedding_length must be >= 1");
  }
  if (history_length < 1) {
    throw InputError("history_length must be >= 1");
  }
  if (min_area < 1) {
    throw InputError("min_area must be >= 1");
  }
}

TrackerState::TrackerState(TrackerConfig config) : config_(config) {
  config_.Validate();
}

Embedding TrackerState::TrackEntry::MeanEmbedding() const {
  if (embedding_history.empty()) return {};
  Embedding mean(embedding_history.front().size(), 0.0);
  for (const Embedding& e : embedding_history) {
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += e[i];
  }
  for (double& v : mean) v /= static_cast<double>(embedding_history.size());
  return mean;
}

std::vector<int> TrackerState::LiveTrackIds(int frame_index) const {
  std::vector<int> ids;
  for (const auto& [id, entry] : bank_) {
    if (AgeAt(entry, frame_index) <= config_.max_age) ids.push_back(id);
  }
  return ids;
}

PanopticMap TrackerState::Step(int frame_index,
                               std::span<const Detection> detections,
                               const SemanticLogits& semantic,
                               const ClassTable& table) {
  return StepResolved(
      frame_index, detections,
      ResolvePanoptic(semantic, detections, table,
                      ResolveConfig{config_.min_area}),
      table);
}

PanopticMap TrackerState::Step(int frame_index,
                               std::span<const Detection> detections,
                               std::span<const std::uint16_t> semantic_classes,
                               int width, int height, const ClassTable& table) {
  return StepResolved(
      frame_index, detections,
      ResolvePanopticFromClassMap(semantic_classes, width, height, detections,
                                  table, ResolveConfig{config_.min_area}),
      table);
}

PanopticMap TrackerState::StepResolved(int frame_index,
                                       std::span<const Detection> detections,
                                       ResolveResult resolved,
                                       const ClassTable& table) {
  if (frame_index <= last_frame_index_) {
    throw InputError("frame index " + std::to_string(frame_index) +
                     " does not increase past " +
                     std::to_string(last_frame_index_));
  }
  for (std::size_t d = 0; d < detections.size(); ++d) {
    if (static_cast<int>(detections[d].embedding.size()) !=
        config_.embedding_length) {
      throw InputError("detection " + std::to_string(d) + " embedding has " +
                       std::to_string(detections[d].embedding.size()) +
                       " values, config says " +
                       std::to_string(config_.embedding_length));
    }
  }

  // Retire first: a track past max_age is gone before any matching, so
  // the appearance stage can only revive tracks within the window.
  for (auto it = bank_.begin(); it != bank_.end();) {
    if (AgeAt(it->second, frame_index) > config_.max_age) {
      it = bank_.erase(it);
    } else {
      ++it;
    }
  }

  // Committed detections and their resolved (post-overlap) masks.
  std::vector<int> committed;
  for (std::size_t d = 0; d < detections.size(); ++d) {
    if (resolved.instance_of_detection[d] >= 0) {
      committed.push_back(static_cast<int>(d));
    }
  }
  std::vector<BitMask> resolved_mask_of_instance;
  {
    int max_instance = 0;
    for (const int inst : resolved.instance_of_detection) {
      max_instance = std::max(max_instance, inst);
    }
    resolved_mask_of_instance.assign(
        max_instance + 1, BitMask(resolved.map.width(), resolved.map.height()));
    const auto instances = resolved.map.instance_data();
    for (std::int64_t p = 0; p < resolved.map.num_pixels(); ++p) {
      if (instances[p] > 0) {
        resolved_mask_of_instance[instances[p]].Set(
            static_cast<int>(p % resolved.map.width()),
            static_cast<int>(p / resolved.map.width()), true);
      }
    }
  }
  const auto resolved_mask = [&](int d) -> const BitMask& {
    return resolved_mask_of_instance[resolved.instance_of_detection[d]];
  };

  const std::vector<int> live_ids = LiveTrackIds(frame_index);

  // Stage 1, motion: per pair, the track's mask carried into this frame
  // is the detection's own propagated mask when it names the track, the
  // bank mask shifted by the detection's offset when one is given, and
  // the bank mask as-is otherwise (zero-motion prior).
  std::vector<int> track_of_committed(committed.size(), -1);
  {
    const int rows = static_cast<int>(committed.size());
    const int cols = static_cast<int>(live_ids.size());
    std::vector<double> cost(static_cast<std::size_t>(rows) * cols, 0.0);
    std::vector<std::uint8_t> allowed(static_cast<std::size_t>(rows) * cols,
                                      0);
    for (int i = 0; i < rows; ++i) {
      const Detection& det = detections[committed[i]];
      for (int j = 0; j < cols; ++j) {
        const TrackEntry& entry = bank_.at(live_ids[j]);
        if (det.class_id != entry.class_id) continue;
        double iou = 0.0;
        if (det.propagated_from.has_value() &&
            *det.propagated_from == live_ids[j]) {
          iou = MaskIou(*det.propagated_mask, resolved_mask(committed[i]));
        } else if (det.offset.has_value()) {
          iou = MaskIou(TranslateMask(entry.last_mask, det.offset->first,
                                      det.offset->second),
                        resolved_mask(committed[i]));
        } else {
          iou = MaskIou(entry.last_mask, resolved_mask(committed[i]));
        }
        if (iou < config_.iou_min) continue;
        const std::size_t cell = static_cast<std::size_t>(i) * cols + j;
        cost[cell] = -iou;
        allowed[cell] = 1;
      }
    }
    const std::vector<int> matched = SolveAssignment(rows, cols, cost, allowed);
    for (int i = 0; i < rows; ++i) {
      if (matched[i] >= 0) track_of_committed[i] = live_ids[matched[i]];
    }
  }

  // Stage 2, appearance, over what stage 1 left unmatched on both sides.
  {
    std::vector<int> open_detections;
    for (std::size_t i = 0; i < committed.size(); ++i) {
      if (track_of_committed[i] == -1) {
        open_detections.push_back(static_cast<int>(i));
      }
    }
    std::vector<AppearanceCandidate> candidates;
    for (const int id : live_ids) {
      bool taken = false;
      for (const int t : track_of_committed) {
        if (t == id) {
          taken = true;
          break;
        }
      }
      if (taken) continue;
      candidates.push_back(AppearanceCandidate{
          id, bank_.at(id).class_id, bank_.at(id).MeanEmbedding()});
    }
    std::vector<Detection> open_copies;
    open_copies.reserve(open_detections.size());
    for (const int i : open_detections) {
      open_copies.push_back(detections[committed[i]]);
    }
    const std::vector<std::optional<int>> matched =
        MatchByAppearance(open_copies, candidates, config_.sim_min);
    for (std::size_t k = 0; k < open_detections.size(); ++k) {
      if (matched[k].has_value()) {
        track_of_committed[open_detections[k]] = *matched[k];
      }
    }
  }

  // Fresh ids for the remainder, in detection order; update the bank.
  for (std::size_t i = 0; i < committed.size(); ++i) {
    const Detection& det = detections[committed[i]];
    int track_id = track_of_committed[i];
    if (track_id == -1) {
      if (next_id_ > kMaxTrackId) {
        throw InputError("track id space exhausted (65535 ids)");
      }
      track_id = next_id_++;
      track_of_committed[i] = track_id;
      bank_.emplace(track_id, TrackEntry{det.class_id,
                                         resolved_mask(committed[i]), 0, {}});
    }
    TrackEntry& entry = bank_.at(track_id);
    PT_CHECK(entry.class_id == det.class_id);
    entry.last_mask = resolved_mask(committed[i]);
    entry.last_frame = frame_index;
    entry.embedding_history.push_back(det.embedding);
    while (static_cast<int>(entry.embedding_history.size()) >
           config_.history_length) {
      entry.embedding_history.pop_front();
    }
  }

  // Relabel the resolved instances with their track ids.
  std::vector<std::uint16_t> track_of_instance(
      resolved_mask_of_instance.size(), 0);
  for (std::size_t i = 0; i < committed.size(); ++i) {
    track_of_instance[resolved.instance_of_detection[committed[i]]] =
        static_cast<std::uint16_t>(track_of_committed[i]);
  }
  PanopticMap output = std::move(resolved.map);
  const auto instances = output.mutable_instance_data();
  for (std::int64_t p = 0; p < output.num_pixels(); ++p) {
    if (instances[p] > 0) instances[p] = track_of_instance[instances[p]];
  }

  last_frame_index_ = frame_index;
  return output;
}

}  // namespace panotrack::tracker
