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

#ifndef PANOTRACK_TRACK_H_
#define PANOTRACK_TRACK_H_

#include <map>
#include <vector>

#include "panotrack/mask.h"
#include "panotrack/panoptic_map.h"

namespace panotrack {

// One object's masks over time under a single id. The frame->mask map is
// ordered, all masks share dimensions, and the class never changes.
struct Track {
  int track_id = 0;
  int class_id = 0;
  std::map<int, BitMask> masks;

  // Total foreground pixel count over all frames (the tube volume).
  std::int64_t TubeArea() const;
};

// IoU of the two space-time tubes: summed per-frame intersections over
// summed per-frame unions. A frame missing from a track contributes an
// empty mask there.
double TubeIou(const Track& a, const Track& b);

// Pixel overlap between the two tubes, summed over frames.
std::int64_t TubeIntersectionArea(const Track& a, const Track& b);

// Groups a sequence's thing segments by instance id into tracks, one per
// distinct id, with track_id = instance id. An instance id that appears
// under two different classes is a labeling error and is rejected.
std::vector<Track> BuildTracks(const Sequence& sequence);

}  // namespace panotrack

#endif  // PANOTRACK_TRACK_H_
