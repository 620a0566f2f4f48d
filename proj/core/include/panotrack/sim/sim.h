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

#ifndef PANOTRACK_SIM_SIM_H_
#define PANOTRACK_SIM_SIM_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "panotrack/class_table.h"
#include "panotrack/embedding.h"
#include "panotrack/mask.h"
#include "panotrack/panoptic_map.h"
#include "panotrack/sim/rng.h"
#include "panotrack/track.h"
#include "panotrack/tracker/detection.h"

namespace panotrack::sim {

enum class ShapeKind { kRectangle, kEllipse };

// Everything the generator needs; the seed fully determines the output.
struct SimConfig {
  int width = 128;
  int height = 64;
  int frames = 10;

  int min_objects = 1;
  int max_objects = 6;
  std::vector<ShapeKind> shape_kinds = {ShapeKind::kRectangle,
                                        ShapeKind::kEllipse};

  // Bounding-box side lengths, sampled per axis.
  int min_size = 8;
  int max_size = 16;

  // Per-axis speed magnitude in pixels/frame; sign is random.
  int min_speed = 0;
  int max_speed = 3;

  // Chance per frame that an object redraws its velocity.
  double turn_probability = 0.1;

  // Chance that a new object spawns on top of an existing one.
  double occlusion_probability = 0.0;

  // Reject trajectories that ever overlap another object. Useful for
  // fixtures where visible masks must equal the full shapes.
  bool non_overlapping = false;

  // Background is horizontal bands cycling through these stuff classes.
  // Empty means: derive from the class table.
  std::vector<int> stuff_band_classes;

  // Base embeddings are resampled until every pair is at most this similar.
  double max_pairwise_cosine = 0.4;
  int embedding_length = 128;

  ClassTable class_table = ClassTable::KittiStep();
  std::uint64_t seed = 1;

  void Validate() const;
};

// Full per-object record, including the un-occluded shape. positions[t] is
// the top-left corner of the shape's bounding box at frame t.
struct ObjectTrace {
  int track_id = 0;
  int class_id = 0;
  ShapeKind shape_kind = ShapeKind::kRectangle;
  int box_width = 0;
  int box_height = 0;
  // Shape raster at the origin, box_width x box_height.
  BitMask shape_mask{1, 1};
  std::vector<std::pair<int, int>> positions;
};

struct SimOutput {
  Sequence gt;
  std::vector<Track> gt_tracks;
  // (track id, frame t >= 1) -> position delta from frame t-1 to frame t.
  std::map<std::pair<int, int>, std::pair<int, int>> offsets;
  // track id -> unit-length base embedding.
  std::map<int, Embedding> base_embeddings;
  std::vector<ObjectTrace> traces;
  std::string rng_algorithm;
};

// The trace's shape placed at its frame-t position on the full frame grid.
// This is the mask before any occlusion by later-indexed objects.
BitMask AmodalMask(const ObjectTrace& trace, int frame, int frame_width,
                   int frame_height);

SimOutput GenerateSequence(const SimConfig& config);

// Per (track id, frame) embedding: unit-normalized base + isotropic noise
// of scale noise_sigma. noise_sigma of zero returns the base unchanged.
std::map<std::pair<int, int>, Embedding> SynthEmbeddings(const SimOutput& out,
                                                         double noise_sigma,
                                                         std::uint64_t seed);

// One detection per visibly present object per frame: the visible mask,
// the object's class, score 1, the matching synthetic embedding, and for
// frames past the first the true motion offset.
std::vector<std::vector<tracker::Detection>> DetectionsFromOutput(
    const SimOutput& out,
    const std::map<std::pair<int, int>, Embedding>& embeddings);

}  // namespace panotrack::sim

#endif  // PANOTRACK_SIM_SIM_H_
