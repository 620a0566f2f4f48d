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

#include "panotrack/track.h"

#include <string>
#include <utility>

#include "panotrack/error.h"

namespace panotrack {

std::int64_t Track::TubeArea() const {
  std::int64_t area = 0;
  for (const auto& [frame, mask] : masks) {
    area += mask.Area();
  }
  return area;
}

namespace {

void RequireSharedGrid(const Track& a, const Track& b) {
  const BitMask* reference = nullptr;
  for (const Track* track : {&a, &b}) {
    for (const auto& [frame, mask] : track->masks) {
      if (reference == nullptr) {
        reference = &mask;
      } else if (mask.width() != reference->width() ||
                 mask.height() != reference->height()) {
        throw InputError("tube masks disagree on frame dimensions");
      }
    }
  }
}

}  // namespace

std::int64_t TubeIntersectionArea(const Track& a, const Track& b) {
  RequireSharedGrid(a, b);
  std::int64_t inter = 0;
  for (const auto& [frame, mask] : a.masks) {
    const auto it = b.masks.find(frame);
    if (it != b.masks.end()) {
      inter += IntersectionArea(mask, it->second);
    }
  }
  return inter;
}

double TubeIou(const Track& a, const Track& b) {
  const std::int64_t inter = TubeIntersectionArea(a, b);
  const std::int64_t uni = a.TubeArea() + b.TubeArea() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<Track> BuildTracks(const Sequence& sequence) {
  std::map<int, Track> by_id;
  for (std::size_t t = 0; t < sequence.frames.size(); ++t) {
    for (Segment& segment :
         ExtractSegments(sequence.frames[t], sequence.class_table)) {
      if (segment.instance_id == 0) continue;
      auto it = by_id.find(segment.instance_id);
      if (it == by_id.end()) {
        Track track;
        track.track_id = segment.instance_id;
        track.class_id = segment.class_id;
        it = by_id.emplace(segment.instance_id, std::move(track)).first;
      } else if (it->second.class_id != segment.class_id) {
        throw InputError(
            "instance id " + std::to_string(segment.instance_id) +
            " labeled as class " + std::to_string(it->second.class_id) +
            " and class " + std::to_string(segment.class_id));
      }
      it->second.masks.emplace(static_cast<int>(t), std::move(segment.mask));
    }
  }
  std::vector<Track> tracks;
  tracks.reserve(by_id.size());
  for (auto& [id, track] : by_id) {
    tracks.push_back(std::move(track));
  }
  return tracks;
}

}  // namespace panotrack
