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

#ifndef PANOTRACK_IO_DETECTIONS_H_
#define PANOTRACK_IO_DETECTIONS_H_

#include <string>
#include <vector>

#include "panotrack/tracker/detection.h"

namespace panotrack::io {

// Per-frame detections with embeddings, as interchanged between the
// simulator and the tracker. Masks travel as run-length counts.
struct DetectionsFile {
  int width = 0;
  int height = 0;
  int embedding_length = 0;
  std::vector<std::vector<tracker::Detection>> frames;
};

// JSON codec, schema "panotrack/detections@1". The round-trip is lossless:
// every record field, including the optional offset and propagated-mask
// fields, reloads bit-identically. Dense per-pixel logits are a live-only
// input and are not part of the file format. Schema violations report the
// offending field path, e.g. "frames[3][0].embedding".
DetectionsFile ReadDetections(const std::string& path);
void WriteDetections(const DetectionsFile& file, const std::string& path);

}  // namespace panotrack::io

#endif  // PANOTRACK_IO_DETECTIONS_H_
