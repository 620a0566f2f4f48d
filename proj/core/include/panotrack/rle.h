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

#ifndef PANOTRACK_RLE_H_
#define PANOTRACK_RLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "panotrack/mask.h"

namespace panotrack {

// Row-major run-length encoding of a binary mask. Runs alternate
// background, foreground, background, ... starting with background.
// runs[0] may be zero when the mask starts with foreground; every later
// run is strictly positive and the runs sum to width * height.
std::vector<std::int64_t> EncodeRle(const BitMask& mask);

// Inverse of EncodeRle. Rejects encodings that violate the conventions
// above instead of guessing at intent.
BitMask DecodeRle(std::span<const std::int64_t> runs, int width, int height);

}  // namespace panotrack

#endif  // PANOTRACK_RLE_H_
