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

#ifndef PANOTRACK_CLASS_TABLE_H_
#define PANOTRACK_CLASS_TABLE_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace panotrack {

struct ClassEntry {
  int id = 0;
  std::string name;
  bool is_thing = false;

  bool operator==(const ClassEntry&) const = default;
};

// The semantic label set: which class ids exist, which are countable
// ("thing") classes, and the optional ignore class excluded from all metrics.
class ClassTable {
 public:
  ClassTable() = default;

  // Throws InputError if ids are negative or duplicated, or if ignore_id
  // does not appear among the entries.
  ClassTable(std::vector<ClassEntry> entries, std::optional<int> ignore_id);

  const std::vector<ClassEntry>& entries() const { return entries_; }
  std::optional<int> ignore_id() const { return ignore_id_; }

  bool Contains(int class_id) const;
  bool IsThing(int class_id) const;
  bool IsIgnore(int class_id) const;
  // Contained, not a thing, not the ignore class.
  bool IsStuff(int class_id) const;

  // Entry for a contained id. Throws InputError otherwise.
  const ClassEntry& Entry(int class_id) const;

  // Sorted by id. Thing/stuff partitions exclude the ignore class.
  const std::vector<int>& thing_ids() const { return thing_ids_; }
  const std::vector<int>& stuff_ids() const { return stuff_ids_; }

  bool operator==(const ClassTable& other) const {
    return entries_ == other.entries_ && ignore_id_ == other.ignore_id_;
  }

  // 19 classes in Cityscapes order with car and pedestrian as things,
  // plus a void entry (id 255) as the ignore class.
  static ClassTable KittiStep();
  // 7 classes, pedestrian as the single thing class, plus void (255).
  static ClassTable MotChallengeStep();

 private:
  std::vector<ClassEntry> entries_;
  std::optional<int> ignore_id_;
  std::vector<int> thing_ids_;
  std::vector<int> stuff_ids_;
  std::unordered_map<int, int> index_of_;
};

}  // namespace panotrack

#endif  // PANOTRACK_CLASS_TABLE_H_
