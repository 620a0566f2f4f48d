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

#include "panotrack/io/dataset.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "io/json_util.h"
#include "json.hpp"
#include "panotrack/error.h"
#include "panotrack/io/png_io.h"

namespace panotrack::io {
namespace {

namespace fs = std::filesystem;

constexpr char kClassSchema[] = "panotrack/classes@1";

std::string FrameName(int index) {
  char name[16];
  std::snprintf(name, sizeof(name), "%06d.png", index);
  return name;
}

// 6-digit zero-padded index, or -1 when the name is no frame file at all.
// A .png with a malformed stem is a hard error, not a skip.
int ParseFrameIndex(const fs::path& path) {
  if (path.extension() != ".png") return -1;
  const std::string stem = path.stem().string();
  if (stem.size() != 6 ||
      !std::all_of(stem.begin(), stem.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    throw InputError("frame file " + path.filename().string() +
                     " is not a 6-digit zero-padded index");
  }
  return std::stoi(stem);
}

}  // namespace

SequenceData ReadSequenceDir(const std::string& dir, const ClassTable& table) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw InputError(dir + " is not a readable directory");
  }

  std::map<int, fs::path> frame_paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const int index = ParseFrameIndex(entry.path());
    if (index >= 0) frame_paths[index] = entry.path();
  }
  if (frame_paths.empty()) {
    throw InputError("no frame files found in " + dir);
  }

  SequenceData data;
  data.sequence.class_table = table;
  int expected = 0;
  for (const auto& [index, path] : frame_paths) {
    if (index != expected) {
      throw InputError("missing frame " + FrameName(expected) + " in " + dir);
    }
    ++expected;
    PanopticMap frame = ReadPanopticPng(path.string(), table);
    if (!data.sequence.frames.empty() &&
        (frame.width() != data.sequence.frames.front().width() ||
         frame.height() != data.sequence.frames.front().height())) {
      throw InputError(path.filename().string() + " is " +
                       std::to_string(frame.width()) + "x" +
                       std::to_string(frame.height()) +
                       " but the sequence started at " +
                       std::to_string(data.sequence.frames.front().width()) +
                       "x" +
                       std::to_string(data.sequence.frames.front().height()));
    }
    data.sequence.frames.push_back(std::move(frame));
  }
  data.tracks = BuildTracks(data.sequence);
  return data;
}

void WriteSequenceDir(const Sequence& sequence, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw InputError("cannot create directory " + dir + ": " + ec.message());
  }
  for (std::size_t i = 0; i < sequence.frames.size(); ++i) {
    const fs::path path = fs::path(dir) / FrameName(static_cast<int>(i));
    WritePanopticPng(sequence.frames[i], path.string());
  }
}

ClassTable ReadClassTable(const std::string& path) {
  const nlohmann::json doc = LoadJsonFile(path);
  RequireSchema(doc, kClassSchema, "classes");

  std::optional<int> ignore_id;
  const nlohmann::json& ignore = Field(doc, "ignore_id", "classes");
  if (!ignore.is_null()) {
    if (!ignore.is_number_integer()) {
      throw InputError("classes.ignore_id: expected an integer or null");
    }
    ignore_id = ignore.get<int>();
  }

  const nlohmann::json& classes = Field(doc, "classes", "classes");
  if (!classes.is_array()) {
    throw InputError("classes.classes: expected an array");
  }
  std::vector<ClassEntry> entries;
  entries.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string where = "classes.classes[" + std::to_string(i) + "]";
    ClassEntry entry;
    entry.id = static_cast<int>(IntField(classes[i], "id", where));
    entry.name = StringField(classes[i], "name", where);
    const nlohmann::json& thing = Field(classes[i], "thing", where);
    if (!thing.is_boolean()) {
      throw InputError(where + ".thing: expected a boolean");
    }
    entry.is_thing = thing.get<bool>();
    entries.push_back(std::move(entry));
  }
  return ClassTable(std::move(entries), ignore_id);
}

void WriteClassTable(const ClassTable& table, const std::string& path) {
  nlohmann::json doc;
  doc["schema"] = kClassSchema;
  if (table.ignore_id().has_value()) {
    doc["ignore_id"] = *table.ignore_id();
  } else {
    doc["ignore_id"] = nullptr;
  }
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassEntry& entry : table.entries()) {
    nlohmann::json item;
    item["id"] = entry.id;
    item["name"] = entry.name;
    item["thing"] = entry.is_thing;
    classes.push_back(std::move(item));
  }
  doc["classes"] = std::move(classes);
  WriteTextFile(path, doc.dump(2) + "\n");
}

}  // namespace panotrack::io
