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

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "doctest.h"
#include "panotrack/error.h"
#include "panotrack/tracker/tracker.h"
#include "test_util.h"

namespace panotrack::tracker {
namespace {

using test::MakeMask;
using test::TinyTable;

TrackerConfig SmallConfig() {
  TrackerConfig config;
  config.embedding_length = 2;
  config.min_area = 1;
  return config;
}

Detection Det(BitMask mask, int class_id, double score, Embedding embedding) {
  Detection detection;
  detection.mask = std::move(mask);
  detection.class_id = class_id;
  detection.score = score;
  detection.embedding = std::move(embedding);
  return detection;
}

std::vector<std::uint16_t> Background(int width, int height) {
  return std::vector<std::uint16_t>(
      static_cast<std::size_t>(width) * height, 0);
}

int InstanceUnder(const PanopticMap& map, const BitMask& mask) {
  int instance = -1;
  mask.ForEachForeground([&](int x, int y) {
    if (instance == -1) instance = map.InstanceAt(x, y);
  });
  return instance;
}

TEST_CASE("first frame mints ids in detection order") {
  TrackerState state(SmallConfig());
  const BitMask a = MakeMask({"##              "});
  const BitMask b = MakeMask({"     ##         "});
  const BitMask c = MakeMask({"          ##    "});
  // Scores deliberately out of order: resolve commits by score, but track
  // ids follow the detection indices.
  std::vector<Detection> detections = {
      Det(a, 1, 0.5, {1.0, 0.0}),
      Det(b, 1, 0.9, {0.0, 1.0}),
      Det(c, 2, 0.7, {1.0, 1.0}),
  };
  PanopticMap out =
      state.Step(0, detections, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, a) == 1);
  CHECK(InstanceUnder(out, b) == 2);
  CHECK(InstanceUnder(out, c) == 3);
  CHECK(state.next_id() == 4);
  CHECK(state.LiveTrackIds(1) == std::vector<int>{1, 2, 3});
}

TEST_CASE("stepping twice with the same inputs is deterministic") {
  auto run = [] {
    TrackerState state(SmallConfig());
    std::vector<Detection> frame0 = {
        Det(MakeMask({"###             "}), 1, 1.0, {1.0, 0.0})};
    std::vector<Detection> frame1 = {
        Det(MakeMask({" ###            "}), 1, 1.0, {1.0, 0.0})};
    state.Step(0, frame0, Background(16, 1), 16, 1, TinyTable());
    return state.Step(1, frame1, Background(16, 1), 16, 1, TinyTable());
  };
  CHECK(run() == run());
}

TEST_CASE("an offset carries a track across a large jump") {
  TrackerState state(SmallConfig());
  std::vector<Detection> frame0 = {
      Det(MakeMask({"####            "}), 1, 1.0, {1.0, 0.0})};
  state.Step(0, frame0, Background(16, 1), 16, 1, TinyTable());

  const BitMask moved = MakeMask({"        ####    "});
  Detection with_offset = Det(moved, 1, 1.0, {0.0, 1.0});
  with_offset.offset = {8, 0};
  // The appearance is useless here (orthogonal embedding): only the
  // shifted bank mask can make the match.
  std::vector<Detection> frame1 = {with_offset};
  PanopticMap out =
      state.Step(1, frame1, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, moved) == 1);
  CHECK(state.next_id() == 2);
}

TEST_CASE("without motion evidence a large jump becomes a new track") {
  TrackerState state(SmallConfig());
  std::vector<Detection> frame0 = {
      Det(MakeMask({"####            "}), 1, 1.0, {1.0, 0.0})};
  state.Step(0, frame0, Background(16, 1), 16, 1, TinyTable());

  const BitMask moved = MakeMask({"        ####    "});
  std::vector<Detection> frame1 = {Det(moved, 1, 1.0, {0.0, 1.0})};
  PanopticMap out =
      state.Step(1, frame1, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, moved) == 2);
}

TEST_CASE("the zero-motion prior bridges small drift") {
  TrackerState state(SmallConfig());
  std::vector<Detection> frame0 = {
      Det(MakeMask({"####            "}), 1, 1.0, {1.0, 0.0})};
  state.Step(0, frame0, Background(16, 1), 16, 1, TinyTable());

  // One pixel of drift: IoU 3/5 with the unshifted bank mask.
  const BitMask drifted = MakeMask({" ####           "});
  std::vector<Detection> frame1 = {Det(drifted, 1, 1.0, {0.0, 1.0})};
  PanopticMap out =
      state.Step(1, frame1, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, drifted) == 1);
}

TEST_CASE("a propagated mask that names its track wins the match") {
  TrackerState state(SmallConfig());
  std::vector<Detection> frame0 = {
      Det(MakeMask({"####            "}), 1, 1.0, {1.0, 0.0})};
  state.Step(0, frame0, Background(16, 1), 16, 1, TinyTable());

  const BitMask far_away = MakeMask({"          ####  "});
  Detection propagated = Det(far_away, 1, 1.0, {0.0, 1.0});
  propagated.propagated_mask = far_away;
  propagated.propagated_from = 1;
  std::vector<Detection> frame1 = {propagated};
  PanopticMap out =
      state.Step(1, frame1, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, far_away) == 1);
}

TEST_CASE("appearance revives a track the motion stage cannot reach") {
  TrackerState state(SmallConfig());
  std::vector<Detection> frame0 = {
      Det(MakeMask({"####            "}), 1, 1.0, {1.0, 0.0})};
  state.Step(0, frame0, Background(16, 1), 16, 1, TinyTable());

  // Unseen for one frame, well within max_age.
  state.Step(1, {}, Background(16, 1), 16, 1, TinyTable());

  const BitMask reappeared = MakeMask({"          ####  "});
  std::vector<Detection> frame2 = {Det(reappeared, 1, 1.0, {1.0, 0.0})};
  PanopticMap out =
      state.Step(2, frame2, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, reappeared) == 1);
}

TEST_CASE("appearance will not cross classes") {
  TrackerState state(SmallConfig());
  std::vector<Detection> frame0 = {
      Det(MakeMask({"####            "}), 1, 1.0, {1.0, 0.0})};
  state.Step(0, frame0, Background(16, 1), 16, 1, TinyTable());

  const BitMask reappeared = MakeMask({"          ####  "});
  std::vector<Detection> frame1 = {Det(reappeared, 2, 1.0, {1.0, 0.0})};
  PanopticMap out =
      state.Step(1, frame1, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, reappeared) == 2);
}

TEST_CASE("a retired id is never reused") {
  TrackerConfig config = SmallConfig();
  config.max_age = 0;
  TrackerState state(config);
  const BitMask spot = MakeMask({"####            "});
  std::vector<Detection> frame = {Det(spot, 1, 1.0, {1.0, 0.0})};
  state.Step(0, frame, Background(16, 1), 16, 1, TinyTable());
  CHECK(state.LiveTrackIds(1) == std::vector<int>{1});

  state.Step(1, {}, Background(16, 1), 16, 1, TinyTable());
  // Age 1 exceeds max_age 0: the track is gone before frame 2 matches.
  CHECK(state.LiveTrackIds(2).empty());

  PanopticMap out =
      state.Step(2, frame, Background(16, 1), 16, 1, TinyTable());
  CHECK(InstanceUnder(out, spot) == 2);
  CHECK(state.bank().count(1) == 0);
}

TEST_CASE("with max_age zero the output geometry equals the resolve") {
  TrackerConfig config = SmallConfig();
  config.max_age = 0;
  TrackerState state(config);
  const std::vector<std::uint16_t> semantic = Background(16, 2);
  std::vector<Detection> detections = {
      Det(MakeMask({"####            ", "                "}), 1, 0.9,
          {1.0, 0.0}),
      Det(MakeMask({"  ####          ", "                "}), 1, 0.7,
          {0.0, 1.0}),
      Det(MakeMask({"                ", "      ####      "}), 2, 0.8,
          {1.0, 1.0}),
  };

  ResolveResult direct = ResolvePanopticFromClassMap(
      semantic, 16, 2, detections, TinyTable(), ResolveConfig{1});
  PanopticMap stepped =
      state.Step(0, detections, semantic, 16, 2, TinyTable());

  REQUIRE(stepped.width() == direct.map.width());
  REQUIRE(stepped.height() == direct.map.height());
  // Identical classes; identical instance partition up to relabeling.
  std::map<int, int> relabel;
  for (int y = 0; y < stepped.height(); ++y) {
    for (int x = 0; x < stepped.width(); ++x) {
      CHECK(stepped.ClassAt(x, y) == direct.map.ClassAt(x, y));
      const int from = direct.map.InstanceAt(x, y);
      const int to = stepped.InstanceAt(x, y);
      CHECK((from == 0) == (to == 0));
      if (from != 0) {
        auto [it, inserted] = relabel.emplace(from, to);
        CHECK(it->second == to);
      }
    }
  }
}

TEST_CASE("embedding history is mean-pooled and capped") {
  TrackerConfig config = SmallConfig();
  config.history_length = 2;
  TrackerState state(config);
  const BitMask spot = MakeMask({"####            "});
  auto frame_with = [&](Embedding e) {
    return std::vector<Detection>{Det(spot, 1, 1.0, std::move(e))};
  };
  state.Step(0, frame_with({1.0, 0.0}), Background(16, 1), 16, 1,
             TinyTable());
  state.Step(1, frame_with({0.0, 1.0}), Background(16, 1), 16, 1,
             TinyTable());
  {
    const auto& entry = state.bank().at(1);
    REQUIRE(entry.embedding_history.size() == 2);
    CHECK(entry.MeanEmbedding() == Embedding{0.5, 0.5});
  }
  state.Step(2, frame_with({0.0, 3.0}), Background(16, 1), 16, 1,
             TinyTable());
  {
    const auto& entry = state.bank().at(1);
    REQUIRE(entry.embedding_history.size() == 2);
    CHECK(entry.MeanEmbedding() == Embedding{0.0, 2.0});
  }
}

TEST_CASE("step validates its inputs") {
  TrackerState state(SmallConfig());
  const BitMask spot = MakeMask({"####            "});
  std::vector<Detection> frame = {Det(spot, 1, 1.0, {1.0, 0.0})};
  state.Step(3, frame, Background(16, 1), 16, 1, TinyTable());
  CHECK_THROWS_AS(
      state.Step(3, frame, Background(16, 1), 16, 1, TinyTable()),
      InputError);
  CHECK_THROWS_AS(
      state.Step(2, frame, Background(16, 1), 16, 1, TinyTable()),
      InputError);

  std::vector<Detection> wrong_length = {Det(spot, 1, 1.0, {1.0, 0.0, 0.0})};
  CHECK_THROWS_AS(
      state.Step(4, wrong_length, Background(16, 1), 16, 1, TinyTable()),
      InputError);
}

TEST_CASE("tracker config validation") {
  TrackerConfig config;
  CHECK_NOTHROW(config.Validate());
  config.iou_min = 0.0;
  CHECK_THROWS_AS(config.Validate(), InputError);
  config = TrackerConfig();
  config.sim_min = 1.0;
  CHECK_THROWS_AS(config.Validate(), InputError);
  config = TrackerConfig();
  config.max_age = -1;
  CHECK_THROWS_AS(config.Validate(), InputError);
  config = TrackerConfig();
  config.history_length = 0;
  CHECK_THROWS_AS(config.Validate(), InputError);
  config = TrackerConfig();
  config.min_area = 0;
  CHECK_THROWS_AS(TrackerState{config}, InputError);
}

}  // namespace
}  // namespace panotrack::tracker
