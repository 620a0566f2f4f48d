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

#include "panotrack/io/detections.h"

#include <string>
#include <utility>
#include <vector>

#include "io/json_util.h"
#include "json.hpp"
#include "panotrack/error.h"
#include "panotrack/rle.h"

namespace panotrack::io {
namespace {

constexpr char kDetectionsSchema[] = "panotrack/detections@1";

std::vector<std::int64_t> RleField(const nlohmann::json& object,
                                   const char* key,
                                   const std::string& where) {
  const nlohmann::json& value = Field(object, key, where);
  if (!value.is_array()) {
    throw InputError(where + "." + key + ": expected an array of run counts");
  }
  std::vector<std::int64_t> runs;
  runs.reserve(value.size());
  for (const nlohmann::json& run : value) {
    if (!run.is_number_integer()) {
      throw InputError(where + "." + key + ": run counts must be integers");
    }
    runs.push_back(run.get<std::int64_t>());
  }
  return runs;
}

BitMask MaskField(const nlohmann::json& object, const char* key, int width,
                  int height, const std::string& where) {
  try {
    return DecodeRle(RleField(object, key, where), width, height);
  } catch (const InputError& error) {
    throw InputError(where + "." + key + ": " + error.what());
  }
}

tracker::Detection ReadRecord(const nlohmann::json& record, int width,
                              int height, int embedding_length,
                              const std::string& where) {
  tracker::Detection detection;
  detection.class_id = static_cast<int>(IntField(record, "class_id", where));
  detection.score = DoubleField(record, "score", where);
  detection.mask = MaskField(record, "rle", width, height, where);

  const nlohmann::json& embedding = Field(record, "embedding", where);
  if (!embedding.is_array()) {
    throw InputError(where + ".embedding: expected an array of numbers");
  }
  if (static_cast<int>(embedding.size()) != embedding_length) {
    throw InputError(where + ".embedding: length " +
                     std::to_string(embedding.size()) +
                     " differs from the declared embedding_length " +
                     std::to_string(embedding_length));
  }
  detection.embedding.reserve(embedding.size());
  for (const nlohmann::json& value : embedding) {
    if (!value.is_number()) {
      throw InputError(where + ".embedding: expected an array of numbers");
    }
    detection.embedding.push_back(value.get<double>());
  }

  if (record.contains("offset")) {
    const nlohmann::json& offset = record["offset"];
    if (!offset.is_array() || offset.size() != 2 ||
        !offset[0].is_number_integer() || !offset[1].is_number_integer()) {
      throw InputError(where + ".offset: expected [dx, dy] integers");
    }
    detection.offset = {offset[0].get<int>(), offset[1].get<int>()};
  }
  const bool has_mask = record.contains("propagated_rle");
  const bool has_source = record.contains("propagated_from");
  if (has_mask != has_source) {
    throw InputError(where +
                     ": propagated_rle and propagated_from must be present "
                     "together");
  }
  if (has_mask) {
    detection.propagated_mask =
        MaskField(record, "propagated_rle", width, height, where);
    detection.propagated_from =
        static_cast<int>(IntField(record, "propagated_from", where));
  }
  return detection;
}

nlohmann::json WriteRecord(const tracker::Detection& detection, int width,
                           int height, int embedding_length,
                           const std::string& where) {
  if (detection.mask.width() != width || detection.mask.height() != height) {
    throw InputError(where + ".rle: mask is " +
                     std::to_string(detection.mask.width()) + "x" +
                     std::to_string(detection.mask.height()) +
                     " but the file declares " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  if (static_cast<int>(detection.embedding.size()) != embedding_length) {
    throw InputError(where + ".embedding: length " +
                     std::to_string(detection.embedding.size()) +
                     " differs from the declared embedding_length " +
                     std::to_string(embedding_length));
  }
  if (detection.propagated_mask.has_value() !=
      detection.propagated_from.has_value()) {
    throw InputError(where +
                     ": propagated mask and source id must be set together");
  }

  nlohmann::json record;
  record["class_id"] = detection.class_id;
  record["score"] = detection.score;
  record["rle"] = EncodeRle(detection.mask);
  record["embedding"] = detection.embedding;
  if (detection.offset.has_value()) {
    record["offset"] = {detection.offset->first, detection.offset->second};
  }
  if (detection.propagated_mask.has_value()) {
    if (detection.propagated_mask->width() != width ||
        detection.propagated_mask->height() != height) {
      throw InputError(where + ".propagated_rle: mask dimensions differ from "
                               "the declared frame size");
    }
    record["propagated_rle"] = EncodeRle(*detection.propagated_mask);
    record["propagated_from"] = *detection.propagated_from;
  }
  return record;
}

}  // namespace

DetectionsFile ReadDetections(const std::string& path) {
  const nlohmann::json doc = LoadJsonFile(path);
  RequireSchema(doc, kDetectionsSchema, "detections");

  DetectionsFile file;
  file.width = static_cast<int>(IntField(doc, "width", "detections"));
  file.height = static_cast<int>(IntField(doc, "height", "detections"));
  file.embedding_length =
      static_cast<int>(IntField(doc, "embedding_length", "detections"));
  if (file.width < 1 || file.height < 1) {
    throw InputError("detections: frame dimensions must be positive");
  }
  if (file.embedding_length < 0) {
    throw InputError("detections.embedding_length: must be nonnegative");
  }

  const nlohmann::json& frames = Field(doc, "frames", "detections");
  if (!frames.is_array()) {
    throw InputError("detections.frames: expected an array");
  }
  file.frames.reserve(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const std::string frame_where = "frames[" + std::to_string(t) + "]";
    if (!frames[t].is_array()) {
      throw InputError(frame_where + ": expected an array of records");
    }
    std::vector<tracker::Detection> frame;
    frame.reserve(frames[t].size());
    for (std::size_t i = 0; i < frames[t].size(); ++i) {
      frame.push_back(ReadRecord(frames[t][i], file.width, file.height,
                                 file.embedding_length,
                                 frame_where + "[" + std::to_string(i) + "]"));
    }
    file.frames.push_back(std::move(frame));
  }
  return file;
}

void WriteDetections(const DetectionsFile& file, const std::string& path) {
  if (file.width < 1 || file.height < 1) {
    throw InputError("detections: frame dimensions must be positive");
  }
  nlohmann::json doc;
  doc["schema"] = kDetectionsSchema;
  doc["width"] = file.width;
  doc["height"] = file.height;
  doc["embedding_length"] = file.embedding_length;
  nlohmann::json frames = nlohmann::json::array();
  for (std::size_t t = 0; t < file.frames.size(); ++t) {
    nlohmann::json frame = nlohmann::json::array();
    for (std::size_t i = 0; i < file.frames[t].size(); ++i) {
      frame.push_back(WriteRecord(
          file.frames[t][i], file.width, file.height, file.embedding_length,
          "frames[" + std::to_string(t) + "][" + std::to_string(i) + "]"));
    }
    frames.push_back(std::move(frame));
  }
  doc["frames"] = std::move(frames);
  WriteTextFile(path, doc.dump(2) + "\n");
}

}  // namespace panotrack::io
