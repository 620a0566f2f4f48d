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

#ifndef PANOTRACK_IO_DATASET_H_
#define PANOTRACK_IO_DATASET_H_

#include <string>
#include <vector>

#include "panotrack/class_table.h"
#include "panotrack/panoptic_map.h"
#include "panotrack/track.h"

namespace panotrack::io {

struct SequenceData {
  Sequence sequence;
  std::vector<Track> tracks;
};

// Loads a directory of frames named 000000.png, 000001.png, ... into a
// sequence plus its instance tracks. Frame indices must start at zero and
// be gapless; a dimension change mid-sequence, a malformed frame name or
// an instance id appearing under two classes is a hard error. Non-PNG
// files in the directory are ignored.
SequenceData ReadSequenceDir(const std::string& dir, const ClassTable& table);

// Writes sequence frames as 6-digit zero-padded PNGs into dir, creating
// it if needed. Inverse of ReadSequenceDir.
void WriteSequenceDir(const Sequence& sequence, const std::string& dir);

// Class-table JSON codec, schema "panotrack/classes@1":
//   {"schema": ..., "ignore_id": 255 | null,
//    "classes": [{"id": 0, "name": "road", "thing": false}, ...]}
ClassTable ReadClassTable(const std::string& path);
void WriteClassTable(const ClassTable& table, const std::string& path);

}  // namespace panotrack::io

#endif  // PANOTRACK_IO_DATASET_H_
