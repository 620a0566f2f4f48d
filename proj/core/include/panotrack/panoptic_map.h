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

#ifndef PANOTRACK_PANOPTIC_MAP_H_
#define PANOTRACK_PANOPTIC_MAP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "panotrack/class_table.h"
#include "panotrack/mask.h"

namespace panotrack {

// Dense per-pixel panoptic labeling. Each pixel carries a semantic class id
// and an instance id; instance id 0 means "no instance" (stuff or ignore
// regions). Storage is row-major uint16, which covers the on-disk encoding
// range (class <= 255, instance <= 65535).
class PanopticMap {
 public:
  PanopticMap(int width, int height, std::uint16_t fill_class = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::int64_t num_pixels() const {
    return static_cast<std::int64_t>(width_) * height_;
  }

  std::uint16_t ClassAt(int x, int y) const { return class_of_[Index(x, y)]; }
  std::uint16_t InstanceAt(int x, int y) const {
    return instance_of_[Index(x, y)];
  }
  void SetPixel(int x, int y, std::uint16_t class_id,
                std::uint16_t instance_id) {
    const std::int64_t p = Index(x, y);
    class_of_[p] = class_id;
    instance_of_[p] = instance_id;
  }

  // Row-major views; pixel p lives at (p % width, p / width).
  std::span<const std::uint16_t> class_data() const { return class_of_; }
  std::span<const std::uint16_t> instance_data() const { return instance_of_; }
  std::span<std::uint16_t> mutable_class_data() { return class_of_; }
  std::span<std::uint16_t> mutable_instance_data() { return instance_of_; }

  bool operator==(const PanopticMap&) const = default;

 private:
  std::int64_t Index(int x, int y) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint16_t> class_of_;
  std::vector<std::uint16_t> instance_of_;
};

// One maximal (class, instance) region of a panoptic map. Stuff segments
// carry instance_id 0; thing segments carry instance_id > 0.
struct Segment {
  int class_id = 0;
  int instance_id = 0;
  BitMask mask;
};

// A temporally ordered stack of panoptic maps sharing one class table.
struct Sequence {
  std::vector<PanopticMap> frames;
  ClassTable class_table;
};

// Rejects maps whose labeling contradicts the class table: unknown class
// ids, instance ids on stuff or ignore pixels, or thing pixels without an
// instance id.
void ValidatePanopticMap(const PanopticMap& map, const ClassTable& table);

// ValidatePanopticMap for every frame plus the shared-dimension invariant.
void ValidateSequence(const Sequence& sequence);

// Splits a map into its segments: one per (thing class, instance) pair and
// one per stuff class present. Ignore pixels belong to no segment; the
// returned masks are disjoint and cover every non-ignore pixel. Sorted by
// (class_id, instance_id).
std::vector<Segment> ExtractSegments(const PanopticMap& map,
                                     const ClassTable& table);

}  // namespace panotrack

#endif  // PANOTRACK_PANOPTIC_MAP_H_
