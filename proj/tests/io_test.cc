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

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "panotrack/class_table.h"
#include "panotrack/error.h"
#include "panotrack/io/dataset.h"
#include "panotrack/io/detections.h"
#include "panotrack/io/png_io.h"
#include "panotrack/io/report_io.h"
#include "panotrack/metrics/report.h"
#include "panotrack/panoptic_map.h"
#include "panotrack/sim/rng.h"
#include "panotrack/version.h"
#include "test_util.h"

namespace panotrack::io {
namespace {

using test::MakeFrame;
using test::MakeMask;
using test::MakeSequence;
using test::ReadFileToString;
using test::TempDir;
using test::TinyTable;

PanopticMap RandomMap(sim::SplitRng& rng) {
  const int width = static_cast<int>(rng.UniformInt(1, 12));
  const int height = static_cast<int>(rng.UniformInt(1, 12));
  PanopticMap map(width, height);
  static const int kClasses[] = {0, 1, 2, 3, 9};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int class_id = kClasses[rng.UniformInt(0, 4)];
      const int instance =
          (class_id == 1 || class_id == 2)
              ? static_cast<int>(rng.UniformInt(1, 500))
              : 0;
      map.SetPixel(x, y, class_id, instance);
    }
  }
  return map;
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  REQUIRE(stream.good());
  stream << content;
}

// Writes a zero-filled PNG with the given layout, bypassing the library's
// own writer so malformed layouts can be fed to the readers.
void WriteRawPng(const std::string& path, int width, int height,
                 int bit_depth, int color_type, int channels) {
  std::FILE* file = std::fopen(path.c_str(), "wb");
  REQUIRE(file != nullptr);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                              nullptr);
  REQUIRE(png != nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(info != nullptr);
  if (setjmp(png_jmpbuf(png)) != 0) {
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
    FAIL("libpng failed while writing a fixture");
    return;
  }
  png_init_io(png, file);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(
      static_cast<std::size_t>(width) * channels * (bit_depth / 8), 0);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(file);
}

TEST_CASE("panoptic pngs round-trip random maps") {
  TempDir dir;
  sim::SplitRng rng(2026);
  const ClassTable table = TinyTable();
  for (int i = 0; i < 60; ++i) {
    const PanopticMap map = RandomMap(rng);
    const std::string path = dir.Sub("map.png");
    WritePanopticPng(map, path);
    CHECK(ReadPanopticPng(path, table) == map);
  }
}

TEST_CASE("instance ids beyond one byte survive the encoding") {
  TempDir dir;
  PanopticMap map(2, 1);
  map.SetPixel(0, 0, 1, 300);
  map.SetPixel(1, 0, 0, 0);
  const std::string path = dir.Sub("wide.png");
  WritePanopticPng(map, path);
  const PanopticMap loaded = ReadPanopticPng(path, TinyTable());
  CHECK(loaded.InstanceAt(0, 0) == 300);
  CHECK(loaded.ClassAt(0, 0) == 1);
}

TEST_CASE("class ids beyond one byte are rejected at write time") {
  TempDir dir;
  PanopticMap map(1, 1);
  map.SetPixel(0, 0, 300, 0);
  CHECK_THROWS_AS(WritePanopticPng(map, dir.Sub("bad.png")),
                  InputError);
}

TEST_CASE("reading validates the pixels against the class table") {
  TempDir dir;
  const ClassTable table = TinyTable();

  PanopticMap unknown_class(1, 1);
  unknown_class.SetPixel(0, 0, 7, 0);
  const std::string unknown_path = dir.Sub("unknown.png");
  WritePanopticPng(unknown_class, unknown_path);
  CHECK_THROWS_AS(ReadPanopticPng(unknown_path, table), InputError);

  PanopticMap stuff_with_instance(1, 1);
  stuff_with_instance.SetPixel(0, 0, 3, 2);
  const std::string stuff_path = dir.Sub("stuff.png");
  WritePanopticPng(stuff_with_instance, stuff_path);
  CHECK_THROWS_AS(ReadPanopticPng(stuff_path, table), InputError);

  PanopticMap bare_thing(1, 1);
  bare_thing.SetPixel(0, 0, 1, 0);
  const std::string bare_path = dir.Sub("bare.png");
  WritePanopticPng(bare_thing, bare_path);
  CHECK_THROWS_AS(ReadPanopticPng(bare_path, table), InputError);
}

TEST_CASE("non-png bytes and missing files are read errors") {
  TempDir dir;
  const std::string path = dir.Sub("fake.png");
  WriteTextFile(path, "this is not a png");
  CHECK_THROWS_AS(ReadPanopticPng(path, TinyTable()), InputError);
  CHECK_THROWS_AS(ReadPanopticPng(dir.Sub("absent.png"), TinyTable()),
                  InputError);
}

TEST_CASE("off-layout pngs are rejected rather than coerced") {
  TempDir dir;
  const ClassTable table = TinyTable();

  const std::string rgba = dir.Sub("rgba.png");
  WriteRawPng(rgba, 4, 3, 8, PNG_COLOR_TYPE_RGBA, 4);
  CHECK_THROWS_AS(ReadPanopticPng(rgba, table), InputError);
  CHECK_THROWS_AS(ReadSemanticPng(rgba, table), InputError);

  const std::string gray = dir.Sub("gray.png");
  WriteRawPng(gray, 4, 3, 8, PNG_COLOR_TYPE_GRAY, 1);
  CHECK_THROWS_AS(ReadPanopticPng(gray, table), InputError);

  const std::string deep = dir.Sub("deep.png");
  WriteRawPng(deep, 4, 3, 16, PNG_COLOR_TYPE_RGB, 3);
  CHECK_THROWS_AS(ReadPanopticPng(deep, table), InputError);
}

TEST_CASE("semantic reads accept class-only frames") {
  TempDir dir;
  PanopticMap map(3, 2);
  map.SetPixel(0, 0, 0, 0);
  map.SetPixel(1, 0, 3, 0);
  map.SetPixel(2, 0, 1, 0);  // a thing class without an instance id
  map.SetPixel(0, 1, 0, 0);
  map.SetPixel(1, 1, 9, 0);
  map.SetPixel(2, 1, 3, 0);
  const std::string path = dir.Sub("semantic.png");
  WritePanopticPng(map, path);

  const SemanticMap semantic = ReadSemanticPng(path, TinyTable());
  CHECK(semantic.width == 3);
  CHECK(semantic.height == 2);
  REQUIRE(semantic.classes.size() == 6);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 3; ++x) {
      CHECK(semantic.classes[y * 3 + x] == map.ClassAt(x, y));
    }
  }
}

TEST_CASE("semantic reads reject instance-bearing pixels") {
  TempDir dir;
  PanopticMap map(1, 1);
  map.SetPixel(0, 0, 1, 5);
  const std::string path = dir.Sub("labeled.png");
  WritePanopticPng(map, path);
  CHECK_THROWS_AS(ReadSemanticPng(path, TinyTable()), InputError);
}

TEST_CASE("sequence directories round-trip") {
  TempDir dir;
  Sequence sequence = MakeSequence({
      MakeFrame({"0011", "0011"}, {"..11", "..11"}),
      MakeFrame({"0001", "0011"}, {"...1", "..11"}),
      MakeFrame({"0000", "0000"}, {"....", "...."}),
  });
  const std::string seq_dir = dir.Sub("seq");
  WriteSequenceDir(sequence, seq_dir);

  // Stray non-frame files are ignored.
  WriteTextFile((std::filesystem::path(seq_dir) / "notes.txt").string(),
                "scratch");

  SequenceData data = ReadSequenceDir(seq_dir, TinyTable());
  REQUIRE(data.sequence.frames.size() == 3);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(data.sequence.frames[t] == sequence.frames[t]);
  }
  REQUIRE(data.tracks.size() == 1);
  CHECK(data.tracks[0].track_id == 1);
  CHECK(data.tracks[0].class_id == 1);
  CHECK(data.tracks[0].masks.size() == 2);
}

TEST_CASE("sequence directories reject gaps and bad names") {
  TempDir dir;
  Sequence sequence = MakeSequence({MakeFrame({"00"}, {".."}),
                                    MakeFrame({"00"}, {".."})});

  const std::string gap_dir = dir.Sub("gap");
  WriteSequenceDir(sequence, gap_dir);
  std::filesystem::remove(std::filesystem::path(gap_dir) / "000000.png");
  CHECK_THROWS_WITH_AS(ReadSequenceDir(gap_dir, TinyTable()),
                       doctest::Contains("missing frame 000000.png"),
                       InputError);

  const std::string name_dir = dir.Sub("name");
  WriteSequenceDir(sequence, name_dir);
  WriteTextFile((std::filesystem::path(name_dir) / "0001.png").string(), "x");
  CHECK_THROWS_WITH_AS(ReadSequenceDir(name_dir, TinyTable()),
                       doctest::Contains("6-digit"), InputError);

  const std::string empty_dir = dir.Sub("empty");
  std::filesystem::create_directory(empty_dir);
  CHECK_THROWS_WITH_AS(ReadSequenceDir(empty_dir, TinyTable()),
                       doctest::Contains("no frame files"), InputError);

  CHECK_THROWS_WITH_AS(ReadSequenceDir(dir.Sub("absent"),
                                       TinyTable()),
                       doctest::Contains("not a readable directory"),
                       InputError);
}

TEST_CASE("sequence directories reject mid-sequence resizes") {
  TempDir dir;
  const std::string seq_dir = dir.Sub("drift");
  std::filesystem::create_directory(seq_dir);
  PanopticMap small(2, 2);
  PanopticMap large(3, 2);
  WritePanopticPng(small,
                   (std::filesystem::path(seq_dir) / "000000.png").string());
  WritePanopticPng(large,
                   (std::filesystem::path(seq_dir) / "000001.png").string());
  CHECK_THROWS_WITH_AS(ReadSequenceDir(seq_dir, TinyTable()),
                       doctest::Contains("started at"), InputError);
}

TEST_CASE("class tables round-trip through json") {
  TempDir dir;
  const std::string path = dir.Sub("classes.json");

  const ClassTable kitti = ClassTable::KittiStep();
  WriteClassTable(kitti, path);
  const ClassTable loaded = ReadClassTable(path);
  REQUIRE(loaded.entries().size() == kitti.entries().size());
  for (std::size_t i = 0; i < kitti.entries().size(); ++i) {
    CHECK(loaded.entries()[i].id == kitti.entries()[i].id);
    CHECK(loaded.entries()[i].name == kitti.entries()[i].name);
    CHECK(loaded.entries()[i].is_thing == kitti.entries()[i].is_thing);
  }
  REQUIRE(loaded.ignore_id().has_value());
  CHECK(*loaded.ignore_id() == 255);

  const ClassTable no_ignore({{0, "ground", false}, {1, "box", true}},
                             std::nullopt);
  WriteClassTable(no_ignore, path);
  CHECK_FALSE(ReadClassTable(path).ignore_id().has_value());
}

TEST_CASE("class table schema violations name the offending field") {
  TempDir dir;
  const std::string path = dir.Sub("classes.json");

  WriteTextFile(path, R"({"schema": "panotrack/classes@2", "ignore_id": null,
                          "classes": []})");
  CHECK_THROWS_WITH_AS(ReadClassTable(path),
                       doctest::Contains("classes.schema"), InputError);

  WriteTextFile(path, R"({"schema": "panotrack/classes@1", "ignore_id": null,
                          "classes": [{"id": 0, "thing": false}]})");
  CHECK_THROWS_WITH_AS(ReadClassTable(path),
                       doctest::Contains("classes.classes[0]"), InputError);

  WriteTextFile(path, "{not json");
  CHECK_THROWS_AS(ReadClassTable(path), InputError);
}

DetectionsFile SampleDetections() {
  DetectionsFile file;
  file.width = 8;
  file.height = 2;
  file.embedding_length = 3;

  tracker::Detection full;
  full.mask = MakeMask({"####....", "####...."});
  full.class_id = 1;
  full.score = 0.4375;
  full.embedding = {0.1, -2.75, 1e-3};
  full.offset = {3, -1};
  full.propagated_mask = MakeMask({"..##....", "..##...."});
  full.propagated_from = 17;

  tracker::Detection plain;
  plain.mask = MakeMask({"......##", "......##"});
  plain.class_id = 2;
  plain.score = 1.0;
  plain.embedding = {0.0, 1.0, 0.0};

  file.frames = {{full, plain}, {}, {plain}};
  return file;
}

TEST_CASE("detections files round-trip every field exactly") {
  TempDir dir;
  const std::string path = dir.Sub("detections.json");
  const DetectionsFile file = SampleDetections();
  WriteDetections(file, path);
  const DetectionsFile loaded = ReadDetections(path);

  CHECK(loaded.width == file.width);
  CHECK(loaded.height == file.height);
  CHECK(loaded.embedding_length == file.embedding_length);
  REQUIRE(loaded.frames.size() == file.frames.size());
  for (std::size_t t = 0; t < file.frames.size(); ++t) {
    REQUIRE(loaded.frames[t].size() == file.frames[t].size());
    for (std::size_t i = 0; i < file.frames[t].size(); ++i) {
      const tracker::Detection& a = file.frames[t][i];
      const tracker::Detection& b = loaded.frames[t][i];
      CHECK(b.mask == a.mask);
      CHECK(b.class_id == a.class_id);
      CHECK(b.score == a.score);
      CHECK(b.embedding == a.embedding);
      CHECK(b.offset == a.offset);
      CHECK(b.propagated_mask == a.propagated_mask);
      CHECK(b.propagated_from == a.propagated_from);
    }
  }
}

TEST_CASE("detections writes validate against the declared layout") {
  TempDir dir;
  const std::string path = dir.Sub("detections.json");

  DetectionsFile wrong_mask = SampleDetections();
  wrong_mask.frames[0][0].mask = MakeMask({"##"});
  CHECK_THROWS_WITH_AS(WriteDetections(wrong_mask, path),
                       doctest::Contains("frames[0][0].rle"), InputError);

  DetectionsFile wrong_embedding = SampleDetections();
  wrong_embedding.frames[2][0].embedding = {1.0};
  CHECK_THROWS_WITH_AS(WriteDetections(wrong_embedding, path),
                       doctest::Contains("frames[2][0].embedding"),
                       InputError);

  DetectionsFile half_propagated = SampleDetections();
  half_propagated.frames[0][0].propagated_from.reset();
  CHECK_THROWS_AS(WriteDetections(half_propagated, path), InputError);
}

TEST_CASE("detections reads name the offending record") {
  TempDir dir;
  const std::string path = dir.Sub("detections.json");
  const std::string valid =
      R"({"schema": "panotrack/detections@1", "width": 4, "height": 1,
          "embedding_length": 2, "frames": [[
            {"class_id": 11, "score": 1.0, "rle": [0, 4],
             "embedding": [0.0, 1.0]}]]})";

  WriteTextFile(path, valid);
  CHECK_NOTHROW(ReadDetections(path));

  std::string doctored = valid;
  doctored.replace(doctored.find("[0.0, 1.0]"), 10, "[0.0]");
  WriteTextFile(path, doctored);
  CHECK_THROWS_WITH_AS(ReadDetections(path),
                       doctest::Contains("frames[0][0].embedding"),
                       InputError);

  doctored = valid;
  doctored.replace(doctored.find("[0, 4]"), 6, "[0, 3]");
  WriteTextFile(path, doctored);
  CHECK_THROWS_WITH_AS(ReadDetections(path),
                       doctest::Contains("frames[0][0].rle"), InputError);

  doctored = valid;
  doctored.replace(doctored.find("\"score\""), 7,
                   "\"propagated_from\": 3, \"score\"");
  WriteTextFile(path, doctored);
  CHECK_THROWS_WITH_AS(ReadDetections(path), doctest::Contains("propagated"),
                       InputError);

  doctored = valid;
  doctored.replace(doctored.find("@1"), 2, "@9");
  WriteTextFile(path, doctored);
  CHECK_THROWS_WITH_AS(ReadDetections(path),
                       doctest::Contains("detections.schema"), InputError);
}

TEST_CASE("reports render deterministically and parse back") {
  Sequence gt = MakeSequence({MakeFrame({"0011", "0011"}, {"..11", "..11"}),
                              MakeFrame({"0011", "0011"}, {"..11", "..11"})});
  const metrics::MetricReport report = metrics::EvaluateSequence(gt, gt);

  ReportMetadata metadata;
  metadata.tool_version = kVersion;
  metadata.config_json = R"({"seed": 7})";
  const std::string first = RenderReport(report, metadata);
  CHECK(first == RenderReport(report, metadata));

  TempDir dir;
  const std::string path = dir.Sub("report.json");
  WriteReport(report, metadata, path);
  CHECK(ReadFileToString(path) == first);

  const nlohmann::json doc = nlohmann::json::parse(first);
  CHECK(doc.at("schema") == "panotrack/report@1");
  CHECK(doc.at("metrics").at("pq") == 1.0);
  CHECK(doc.at("metrics").at("sq") == 1.0);
  CHECK(doc.at("metrics").at("aq") == 1.0);
  CHECK(doc.at("metrics").at("tq") == 1.0);
  CHECK(doc.at("metrics").at("stq") == 1.0);
  CHECK(doc.at("metrics").at("pat") == 1.0);
  CHECK(doc.at("tracking_vacuous") == false);
  CHECK(doc.at("counts").at("frames") == 2);
  CHECK(doc.at("counts").at("gt_tracks") == 1);
  CHECK(doc.at("counts").at("pred_tracks") == 1);
  CHECK(doc.at("tool_version") == kVersion);
  CHECK(doc.at("config").at("seed") == 7);
  REQUIRE(doc.at("tracks").size() == 1);
  CHECK(doc.at("tracks")[0].at("as") == 1.0);
  CHECK(doc.at("tracks")[0].at("ids") == 0);
  CHECK(doc.at("tracks")[0].at("n_ids") == 1);

  // The headline combination is recoverable from the parsed numbers.
  const double pq = doc.at("metrics").at("pq").get<double>();
  const double tq = doc.at("metrics").at("tq").get<double>();
  const double pat = doc.at("metrics").at("pat").get<double>();
  CHECK(pat == doctest::Approx(2.0 * pq * tq / (pq + tq)).epsilon(1e-12));
}

TEST_CASE("an unparseable config echo is rejected") {
  const metrics::MetricReport report;
  ReportMetadata metadata;
  metadata.tool_version = kVersion;
  metadata.config_json = "{broken";
  CHECK_THROWS_AS(RenderReport(report, metadata), InputError);

  metadata.config_json.clear();
  const std::string rendered = RenderReport(report, metadata);
  const nlohmann::json doc = nlohmann::json::parse(rendered);
  CHECK(doc.at("config").is_object());
  CHECK(doc.at("config").empty());
}

}  // namespace
}  // namespace panotrack::io
