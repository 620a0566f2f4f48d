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

#include "panotrack/rle.h"

#include <string>

#include "panotrack/error.h"

namespace panotrack {

std::vector<std::int64_t> EncodeRle(const BitMask& mask) {
  std::vector<std::int64_t> runs;
  bool current = false;  // runs start with a background count
  std::int64_t length = 0;
  for (std::int64_t p = 0; p < mask.num_pixels(); ++p) {
    const bool value = mask.Get(static_cast<int>(p % mask.width()),
                                static_cast<int>(p / mask.width()));
    if (value == current) {
      ++length;
      continue;
    }
    runs.push_back(length);
    current = value;
    length = 1;
  }
  runs.push_back(length);
  return runs;
}

BitMask DecodeRle(std::span<const std::int64_t> runs, int width, int height) {
  BitMask mask(width, height);
  if (runs.empty()) {
    throw InputError("rle: empty run list");
  }
  std::int64_t cursor = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::int64_t run = runs[i];
    if (run < 0 || (run == 0 && i != 0)) {
      throw InputError("rle: run " + std::to_string(i) +
                       " has invalid length " + std::to_string(run));
    }
    if (i % 2 == 1) {
      for (std::int64_t p = cursor; p < cursor + run; ++p) {
        if (p >= mask.num_pixels()) {
          throw InputError("rle: runs overflow the mask");
        }
        mask.Set(static_cast<int>(p % width), static_cast<int>(p / width),
                 true);
      }
    }
    cursor += run;
  }
  if (cursor != mask.num_pixels()) {
    throw InputError("rle: runs cover " + std::to_string(cursor) +
                     " pixels, mask has " + std::to_string(mask.num_pixels()));
  }
  return mask;
}

}  // namespace panotrack
