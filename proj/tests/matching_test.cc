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

#include <optional>
#include <vector>

#include "doctest.h"
#include "panotrack/error.h"
#include "panotrack/tracker/matching.h"
#include "test_util.h"

namespace panotrack::tracker {
namespace {

using test::MakeMask;

Detection MaskDetection(BitMask mask, int class_id) {
  Detection detection;
  detection.mask = std::move(mask);
  detection.class_id = class_id;
  detection.score = 1.0;
  return detection;
}

Detection EmbeddingDetection(Embedding embedding, int class_id) {
  Detection detection;
  detection.mask = MakeMask({"#"});
  detection.class_id = class_id;
  detection.score = 1.0;
  detection.embedding = std::move(embedding);
  return detection;
}

TEST_CASE("motion matching recovers identical masks") {
  const BitMask blob = MakeMask({"###.."});
  std::vector<PropagatedTrack> tracks = {{7, 1, blob}};
  std::vector<Detection> detections = {MaskDetection(blob, 1)};
  auto matches = MatchByMotion(tracks, detections, 0.3);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0] == 7);
}

TEST_CASE("motion matching rejects weak overlap") {
  std::vector<PropagatedTrack> tracks = {{7, 1, MakeMask({"#...."})}};
  std::vector<Detection> detections = {
      MaskDetection(MakeMask({"..###"}), 1)};
  auto matches = MatchByMotion(tracks, detections, 0.3);
  CHECK_FALSE(matches[0].has_value());
}

TEST_CASE("motion matching accepts exactly the threshold") {
  // IoU = 3/10.
  std::vector<PropagatedTrack> tracks = {{4, 1, MakeMask({"#####....."})}};
  std::vector<Detection> detections = {
      MaskDetection(MakeMask({"..########"}), 1)};
  CHECK(MatchByMotion(tracks, detections, 0.3)[0] == 4);
  CHECK_FALSE(MatchByMotion(tracks, detections, 0.31)[0].has_value());
}

TEST_CASE("motion matching prefers the stronger overlap") {
  // Track 1 overlaps the detection with IoU 0.8, track 2 with 0.6.
  std::vector<PropagatedTrack> tracks = {
      {1, 1, MakeMask({"####."})},
      {2, 1, MakeMask({"###.."})},
  };
  std::vector<Detection> detections = {
      MaskDetection(MakeMask({"#####"}), 1)};
  auto matches = MatchByMotion(tracks, detections, 0.3);
  CHECK(matches[0] == 1);
}

TEST_CASE("motion matching is one-to-one") {
  const BitMask blob = MakeMask({"####"});
  std::vector<PropagatedTrack> tracks = {{3, 1, blob}};
  std::vector<Detection> detections = {
      MaskDetection(blob, 1),
      MaskDetection(MakeMask({"###."}), 1),
  };
  auto matches = MatchByMotion(tracks, detections, 0.3);
  CHECK(matches[0] == 3);
  CHECK_FALSE(matches[1].has_value());
}

TEST_CASE("motion matching is class-gated") {
  const BitMask blob = MakeMask({"####"});
  std::vector<PropagatedTrack> tracks = {{3, 2, blob}};
  std::vector<Detection> detections = {MaskDetection(blob, 1)};
  CHECK_FALSE(MatchByMotion(tracks, detections, 0.3)[0].has_value());
}

TEST_CASE("motion matching validates the threshold") {
  std::vector<PropagatedTrack> tracks;
  std::vector<Detection> detections;
  CHECK_THROWS_AS(MatchByMotion(tracks, detections, 0.0), InputError);
  CHECK_THROWS_AS(MatchByMotion(tracks, detections, 1.5), InputError);
  CHECK_NOTHROW(MatchByMotion(tracks, detections, 1.0));
}

TEST_CASE("appearance matching pairs aligned embeddings") {
  std::vector<AppearanceCandidate> candidates = {{9, 1, {1.0, 0.0}}};
  std::vector<Detection> detections = {
      EmbeddingDetection({0.9, 0.05}, 1)};
  auto matches = MatchByAppearance(detections, candidates, 0.7);
  CHECK(matches[0] == 9);
}

TEST_CASE("appearance matching prefers the closer candidate") {
  // Candidate 5 at cosine ~0.9, candidate 6 at ~0.7.
  std::vector<AppearanceCandidate> candidates = {
      {5, 1, {0.9, 0.43589}},
      {6, 1, {0.7, 0.71414}},
  };
  std::vector<Detection> detections = {EmbeddingDetection({1.0, 0.0}, 1)};
  auto matches = MatchByAppearance(detections, candidates, 0.65);
  CHECK(matches[0] == 5);
}

TEST_CASE("appearance matching rejects dissimilar and foreign-class pairs") {
  std::vector<AppearanceCandidate> candidates = {{5, 1, {1.0, 0.0}}};
  std::vector<Detection> orthogonal = {EmbeddingDetection({0.0, 1.0}, 1)};
  CHECK_FALSE(MatchByAppearance(orthogonal, candidates, 0.7)[0].has_value());
  std::vector<Detection> foreign = {EmbeddingDetection({1.0, 0.0}, 2)};
  CHECK_FALSE(MatchByAppearance(foreign, candidates, 0.7)[0].has_value());
}

TEST_CASE("appearance matching skips zero embeddings quietly") {
  std::vector<AppearanceCandidate> candidates = {{5, 1, {0.0, 0.0}}};
  std::vector<Detection> detections = {EmbeddingDetection({1.0, 0.0}, 1)};
  CHECK_FALSE(MatchByAppearance(detections, candidates, 0.7)[0].has_value());
  std::vector<Detection> empty = {EmbeddingDetection({}, 1)};
  CHECK_FALSE(MatchByAppearance(empty, candidates, 0.7)[0].has_value());
}

TEST_CASE("appearance matching validates the threshold") {
  std::vector<AppearanceCandidate> candidates;
  std::vector<Detection> detections;
  CHECK_THROWS_AS(MatchByAppearance(detections, candidates, 1.0), InputError);
  CHECK_THROWS_AS(MatchByAppearance(detections, candidates, -1.0),
                  InputError);
  CHECK_NOTHROW(MatchByAppearance(detections, candidates, 0.0));
}

}  // namespace
}  // namespace panotrack::tracker
