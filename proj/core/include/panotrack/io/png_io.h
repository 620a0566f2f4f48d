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

#ifndef PANOTRACK_IO_PNG_IO_H_
#define PANOTRACK_IO_PNG_IO_H_

#include <string>

#include "panotrack/class_table.h"
#include "panotrack/panoptic_map.h"

namespace panotrack::io {

// Decodes an 8-bit RGB PNG into a panoptic map: R is the class id, G*256+B
// the instance id. The result is validated against the class table; wrong
// bit depth or channel count, unknown classes and stuff pixels carrying an
// instance id are all hard errors.
PanopticMap ReadPanopticPng(const std::string& path, const ClassTable& table);

// Exact inverse of ReadPanopticPng. Class ids above 255 do not fit the R
// channel and are rejected; instance ids are 16-bit by construction.
void WritePanopticPng(const PanopticMap& map, const std::string& path);

// Per-pixel class ids without instance labeling, as the tracker's
// semantic input.
struct SemanticMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> classes;  // row-major
};

// Decodes an 8-bit RGB PNG whose R channel holds class ids; G and B must
// be zero everywhere. Unknown class ids are rejected, but thing classes
// are fine here: instance ids are what the tracker will assign.
SemanticMap ReadSemanticPng(const std::string& path, const ClassTable& table);

}  // namespace panotrack::io

#endif  // PANOTRACK_IO_PNG_IO_H_
