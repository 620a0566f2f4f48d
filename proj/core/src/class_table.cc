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

#include "panotrack/class_table.h"

#include <algorithm>
#include <utility>

#include "panotrack/error.h"

namespace panotrack {

ClassTable::ClassTable(std::vector<ClassEntry> entries,
                       std::optional<int> ignore_id)
    : entries_(std::move(entries)), ignore_id_(ignore_id) {
  for (int i = 0; i < static_cast<int>(entries_.size()); ++i) {
    const ClassEntry& entry = entries_[i];
    if (entry.id < 0) {
      throw InputError("class table: negative class id " +
                       std::to_string(entry.id));
    }
    if (!index_of_.emplace(entry.id, i).second) {
      throw InputError("class table: duplicate class id " +
                       std::to_string(entry.id));
    }
  }
  if (ignore_id_.has_value() && !index_of_.count(*ignore_id_)) {
    throw InputError("class table: ignore_id " + std::to_string(*ignore_id_) +
                     " has no entry");
  }
  for (const ClassEntry& entry : entries_) {
    if (ignore_id_.has_value() && entry.id == *ignore_id_) continue;
    (entry.is_thing ? thing_ids_ : stuff_ids_).push_back(entry.id);
  }
  std::sort(thing_ids_.begin(), thing_ids_.end());
  std::sort(stuff_ids_.begin(), stuff_ids_.end());
}

bool ClassTable::Contains(int class_id) const {
  return index_of_.count(class_id) > 0;
}

bool ClassTable::IsThing(int class_id) const {
  auto it = index_of_.find(class_id);
  return it != index_of_.end() && entries_[it->second].is_thing &&
         !IsIgnore(class_id);
}

bool ClassTable::IsIgnore(int class_id) const {
  return ignore_id_.has_value() && class_id == *ignore_id_;
}

bool ClassTable::IsStuff(int class_id) const {
  auto it = index_of_.find(class_id);
  return it != index_of_.end() && !entries_[it->second].is_thing &&
         !IsIgnore(class_id);
}

const ClassEntry& ClassTable::Entry(int class_id) const {
  auto it = index_of_.find(class_id);
  if (it == index_of_.end()) {
    throw InputError("class table: unknown class id " +
                     std::to_string(class_id));
  }
  return entries_[it->second];
}

ClassTable ClassTable::KittiStep() {
  return ClassTable(
      {
          {0, "road", false},
          {1, "sidewalk", false},
          {2, "building", false},
          {3, "wall", false},
          {4, "fence", false},
          {5, "pole", false},
          {6, "traffic_light", false},
          {7, "traffic_sign", false},
          {8, "vegetation", false},
          {9, "terrain", false},
          {10, "sky", false},
          {11, "pedestrian", true},
          {12, "rider", false},
          {13, "car", true},
          {14, "truck", false},
          {15, "bus", false},
          {16, "train", false},
          {17, "motorcycle", false},
          {18, "bicycle", false},
          {255, "void", false},
      },
      255);
}

ClassTable ClassTable::MotChallengeStep() {
  return ClassTable(
      {
          {0, "road", false},
          {1, "sidewalk", false},
          {2, "building", false},
          {3, "vegetation", false},
          {4, "sky", false},
          {5, "background", false},
          {6, "pedestrian", true},
          {255, "void", false},
      },
      255);
}

}  // namespace panotrack
