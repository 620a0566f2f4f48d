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

#ifndef PANOTRACK_TESTS_TEST_UTIL_H_
#define PANOTRACK_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <string>
#include <vector>

#include "panotrack/class_table.h"
#include "panotrack/mask.h"
#include "panotrack/panoptic_map.h"

namespace panotrack::test {

// Mask from ascii art: '#' foreground, anything else background. All rows
// must have equal length.
BitMask MakeMask(const std::vector<std::string>& rows);

// Handy fixture table: 0 "ground" stuff, 1 "box" thing, 2 "disc" thing,
// 3 "sky" stuff, 9 "void" ignore.
ClassTable TinyTable();

// Frame from two ascii grids of equal shape. Classes are single digits;
// instances are single digits with '.' meaning none.
PanopticMap MakeFrame(const std::vector<std::string>& class_rows,
                      const std::vector<std::string>& instance_rows);

Sequence MakeSequence(std::vector<PanopticMap> frames,
                      ClassTable table = TinyTable());

// Fresh directory under the system temp root; removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string Sub(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

std::string ReadFileToString(const std::filesystem::path& path);

}  // namespace panotrack::test

#endif  // PANOTRACK_TESTS_TEST_UTIL_H_
