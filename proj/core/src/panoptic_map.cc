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

#include "panotrack/panoptic_map.h"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "panotrack/error.h"

namespace panotrack {

PanopticMap::PanopticMap(int width, int height, std::uint16_t fill_class)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw InputError("panoptic map dimensions must be >= 1, got " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
  class_of_.assign(num_pixels(), fill_class);
  instance_of_.assign(num_pixels(), 0);
}

std::int64_t PanopticMap::Index(int x, int y) const {
  PT_CHECK(x >= 0 && x < width_ && y >= 0 && y < height_);
  return static_cast<std::int64_t>(y) * width_ + x;
}

void ValidatePanopticMap(const PanopticMap& map, const ClassTable& table) {
  const auto classes = map.class_data();
  const auto instances = map.instance_data();
  for (std::int64_t p = 0; p < map.num_pixels(); ++p) {
    const int class_id = classes[p];
    const int instance_id = instances[p];
    const std::string at = " at pixel (" + std::to_string(p % map.width()) +
                           ", " + std::to_string(p / map.width()) + ")";
    if (!table.Contains(class_id)) {
      throw InputError("unknown class id " + std::to_string(class_id) + at);
    }
    if (table.IsThing(class_id)) {
      if (instance_id == 0) {
        throw InputError("thing class " + std::to_string(class_id) +
                         " without an instance id" + at);
      }
    } else if (instance_id != 0) {
      throw InputError("instance id " + std::to_string(instance_id) +
                       " on non-thing class " + std::to_string(class_id) + at);
    }
  }
}

void ValidateSequence(const Sequence& sequence) {
  for (std::size_t t = 0; t < sequence.frames.size(); ++t) {
    const PanopticMap& frame = sequence.frames[t];
    if (frame.width() != sequence.frames[0].width() ||
        frame.height() != sequence.frames[0].height()) {
      throw InputError("frame " + std::to_string(t) +
                       " dimensions differ from frame 0");
    }
    ValidatePanopticMap(frame, sequence.class_table);
  }
}

std::vector<Segment> ExtractSegments(const PanopticMap& map,
                                     const ClassTable& table) {
  // Keyed by (class, instance); std::map gives the documented ordering.
  std::map<std::pair<int, int>, BitMask> masks;
  const auto classes = map.class_data();
  const auto instances = map.instance_data();
  for (std::int64_t p = 0; p < map.num_pixels(); ++p) {
    const int class_id = classes[p];
    if (table.IsIgnore(class_id)) continue;
    const std::pair<int, int> key{class_id, instances[p]};
    auto it = masks.find(key);
    if (it == masks.end()) {
      it = masks.emplace(key, BitMask(map.width(), map.height())).first;
    }
    it->second.Set(static_cast<int>(p % map.width()),
                   static_cast<int>(p / map.width()), true);
  }
  std::vector<Segment> segments;
  segments.reserve(masks.size());
  for (auto& [key, mask] : masks) {
    segments.push_back(Segment{key.first, key.second, std::move(mask)});
  }
  return segments;
}

}  // namespace panotrack
