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

#include "panotrack/sim/sim.h"

#include <algorithm>
#include <cstdint>
#include <string>

#include "panotrack/error.h"

namespace panotrack::sim {
namespace {

constexpr int kPlacementAttempts = 1000;
constexpr int kEmbeddingAttempts = 1000;

void RequireProbability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InputError(std::string(name) + " must lie in [0, 1], got " +
                     std::to_string(value));
  }
}

BitMask RasterizeShape(ShapeKind kind, int box_width, int box_height) {
  BitMask mask(box_width, box_height);
  if (kind == ShapeKind::kRectangle) {
    for (int y = 0; y < box_height; ++y) {
      for (int x = 0; x < box_width; ++x) {
        mask.Set(x, y, true);
      }
    }
    return mask;
  }
  // Inscribed ellipse, sampled at pixel centers.
  const double rx = box_width / 2.0;
  const double ry = box_height / 2.0;
  for (int y = 0; y < box_height; ++y) {
    for (int x = 0; x < box_width; ++x) {
      const double dx = (x + 0.5 - rx) / rx;
      const double dy = (y + 0.5 - ry) / ry;
      if (dx * dx + dy * dy <= 1.0) {
        mask.Set(x, y, true);
      }
    }
  }
  return mask;
}

struct Velocity {
  int vx = 0;
  int vy = 0;
};

Velocity DrawVelocity(const SimConfig& config, SplitRng& rng) {
  Velocity v;
  v.vx = static_cast<int>(rng.UniformInt(config.min_speed, config.max_speed));
  if (rng.Bernoulli(0.5)) v.vx = -v.vx;
  v.vy = static_cast<int>(rng.UniformInt(config.min_speed, config.max_speed));
  if (rng.Bernoulli(0.5)) v.vy = -v.vy;
  return v;
}

// One reflecting step along a single axis. position stays in [0, limit];
// the velocity flips sign on impact. Validate() guarantees a single
// reflection suffices.
void BounceStep(int limit, int& position, int& velocity) {
  position += velocity;
  if (position < 0) {
    position = -position;
    velocity = -velocity;
  } else if (position > limit) {
    position = 2 * limit - position;
    velocity = -velocity;
  }
}

ObjectTrace SampleTrajectory(const SimConfig& config,
                             const std::vector<ObjectTrace>& placed,
                             SplitRng& rng) {
  ObjectTrace trace;
  trace.shape_kind = config.shape_kinds[static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(config.shape_kinds.size()) -
                            1))];
  trace.box_width =
      static_cast<int>(rng.UniformInt(config.min_size, config.max_size));
  trace.box_height =
      static_cast<int>(rng.UniformInt(config.min_size, config.max_size));
  trace.shape_mask =
      RasterizeShape(trace.shape_kind, trace.box_width, trace.box_height);

  const auto& things = config.class_table.thing_ids();
  trace.class_id = things[static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(things.size()) - 1))];

  const int limit_x = config.width - trace.box_width;
  const int limit_y = config.height - trace.box_height;

  int x;
  int y;
  const bool spawn_on_existing =
      !placed.empty() && rng.Bernoulli(config.occlusion_probability);
  if (spawn_on_existing) {
    const auto& target = placed[static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(placed.size()) - 1))];
    const auto [tx, ty] = target.positions.front();
    x = std::clamp(
        tx + static_cast<int>(
                 rng.UniformInt(-trace.box_width / 2, trace.box_width / 2)),
        0, limit_x);
    y = std::clamp(
        ty + static_cast<int>(
                 rng.UniformInt(-trace.box_height / 2, trace.box_height / 2)),
        0, limit_y);
  } else {
    x = static_cast<int>(rng.UniformInt(0, limit_x));
    y = static_cast<int>(rng.UniformInt(0, limit_y));
  }

  Velocity v = DrawVelocity(config, rng);
  trace.positions.reserve(static_cast<std::size_t>(config.frames));
  trace.positions.emplace_back(x, y);
  for (int t = 1; t < config.frames; ++t) {
    if (rng.Bernoulli(config.turn_probability)) {
      v = DrawVelocity(config, rng);
    }
    BounceStep(limit_x, x, v.vx);
    BounceStep(limit_y, y, v.vy);
    trace.positions.emplace_back(x, y);
  }
  return trace;
}

bool ShapesOverlapAt(const ObjectTrace& a, std::pair<int, int> pos_a,
                     const ObjectTrace& b, std::pair<int, int> pos_b) {
  const int x0 = std::max(pos_a.first, pos_b.first);
  const int x1 =
      std::min(pos_a.first + a.box_width, pos_b.first + b.box_width);
  const int y0 = std::max(pos_a.second, pos_b.second);
  const int y1 =
      std::min(pos_a.second + a.box_height, pos_b.second + b.box_height);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (a.shape_mask.Get(x - pos_a.first, y - pos_a.second) &&
          b.shape_mask.Get(x - pos_b.first, y - pos_b.second)) {
        return true;
      }
    }
  }
  return false;
}

bool EverOverlaps(const ObjectTrace& candidate,
                  const std::vector<ObjectTrace>& placed) {
  for (const ObjectTrace& other : placed) {
    for (std::size_t t = 0; t < candidate.positions.size(); ++t) {
      if (ShapesOverlapAt(candidate, candidate.positions[t], other,
                          other.positions[t])) {
        return true;
      }
    }
  }
  return false;
}

std::vector<int> ResolveStuffBands(const SimConfig& config) {
  if (!config.stuff_band_classes.empty()) {
    for (int class_id : config.stuff_band_classes) {
      if (!config.class_table.IsStuff(class_id)) {
        throw InputError("stuff band class " + std::to_string(class_id) +
                         " is not a stuff class in the class table");
      }
    }
    return config.stuff_band_classes;
  }
  const auto& stuff = config.class_table.stuff_ids();
  const std::size_t count = std::min<std::size_t>(3, stuff.size());
  return std::vector<int>(stuff.begin(), stuff.begin() + count);
}

Embedding DrawUnitEmbedding(int length, SplitRng& rng) {
  Embedding e(static_cast<std::size_t>(length));
  double norm_sq;
  do {
    norm_sq = 0.0;
    for (double& value : e) {
      value = rng.Normal();
      norm_sq += value * value;
    }
  } while (norm_sq == 0.0);
  return NormalizeEmbedding(e);
}

}  // namespace

void SimConfig::Validate() const {
  if (width < 1 || height < 1) {
    throw InputError("frame dimensions must be positive");
  }
  if (frames < 1) {
    throw InputError("frame count must be at least 1");
  }
  if (min_objects < 1 || min_objects > max_objects) {
    throw InputError("object count range [" + std::to_string(min_objects) +
                     ", " + std::to_string(max_objects) + "] is invalid");
  }
  if (shape_kinds.empty()) {
    throw InputError("at least one shape kind is required");
  }
  if (min_size < 1 || min_size > max_size) {
    throw InputError("object size range [" + std::to_string(min_size) + ", " +
                     std::to_string(max_size) + "] is invalid");
  }
  if (max_size > width || max_size > height) {
    throw InputError("maximum object size " + std::to_string(max_size) +
                     " exceeds the " + std::to_string(width) + "x" +
                     std::to_string(height) + " frame");
  }
  if (min_speed < 0 || min_speed > max_speed) {
    throw InputError("speed range [" + std::to_string(min_speed) + ", " +
                     std::to_string(max_speed) + "] is invalid");
  }
  // A step never exceeds the free span, so one reflection always lands
  // back inside the frame.
  if (max_speed > width - max_size || max_speed > height - max_size) {
    throw InputError("maximum speed " + std::to_string(max_speed) +
                     " exceeds the free span left by the largest object");
  }
  RequireProbability(turn_probability, "turn probability");
  RequireProbability(occlusion_probability, "occlusion probability");
  if (!(max_pairwise_cosine > -1.0 && max_pairwise_cosine < 1.0)) {
    throw InputError("pairwise cosine bound must lie in (-1, 1)");
  }
  if (embedding_length < 1) {
    throw InputError("embedding length must be positive");
  }
  if (class_table.thing_ids().empty()) {
    throw InputError("class table has no thing classes to draw objects from");
  }
  if (class_table.stuff_ids().empty()) {
    throw InputError("class table has no stuff classes for the background");
  }
}

BitMask AmodalMask(const ObjectTrace& trace, int frame, int frame_width,
                   int frame_height) {
  if (frame < 0 || frame >= static_cast<int>(trace.positions.size())) {
    throw InputError("frame " + std::to_string(frame) +
                     " outside the trace's " +
                     std::to_string(trace.positions.size()) + " frames");
  }
  const auto [px, py] = trace.positions[static_cast<std::size_t>(frame)];
  BitMask mask(frame_width, frame_height);
  trace.shape_mask.ForEachForeground([&](int x, int y) {
    const int fx = x + px;
    const int fy = y + py;
    if (fx >= 0 && fx < frame_width && fy >= 0 && fy < frame_height) {
      mask.Set(fx, fy, true);
    }
  });
  return mask;
}

SimOutput GenerateSequence(const SimConfig& config) {
  config.Validate();
  const SplitRng root(config.seed);
  SplitRng layout_rng = root.Split(1);
  SplitRng embed_rng = root.Split(2);

  const int object_count = static_cast<int>(
      layout_rng.UniformInt(config.min_objects, config.max_objects));

  SimOutput out;
  out.rng_algorithm = SplitRng::kAlgorithmId;
  out.traces.reserve(static_cast<std::size_t>(object_count));
  for (int i = 0; i < object_count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      ObjectTrace trace = SampleTrajectory(config, out.traces, layout_rng);
      if (config.non_overlapping && EverOverlaps(trace, out.traces)) {
        continue;
      }
      trace.track_id = i + 1;
      out.traces.push_back(std::move(trace));
      placed = true;
    }
    if (!placed) {
      throw InputError(
          "could not place object " + std::to_string(i + 1) +
          " without overlap; the configuration is too crowded");
    }
  }

  const std::vector<int> bands = ResolveStuffBands(config);
  out.gt.class_table = config.class_table;
  out.gt.frames.reserve(static_cast<std::size_t>(config.frames));
  for (int t = 0; t < config.frames; ++t) {
    PanopticMap frame(config.width, config.height);
    for (int y = 0; y < config.height; ++y) {
      const auto band = static_cast<std::size_t>(
          static_cast<std::int64_t>(y) * static_cast<std::int64_t>(
                                             bands.size()) /
          config.height);
      const auto band_class = static_cast<std::uint16_t>(bands[band]);
      for (int x = 0; x < config.width; ++x) {
        frame.SetPixel(x, y, band_class, 0);
      }
    }
    // Painter's order: later objects draw over earlier ones.
    for (const ObjectTrace& trace : out.traces) {
      const auto [px, py] = trace.positions[static_cast<std::size_t>(t)];
      trace.shape_mask.ForEachForeground([&](int x, int y) {
        frame.SetPixel(x + px, y + py,
                       static_cast<std::uint16_t>(trace.class_id),
                       static_cast<std::uint16_t>(trace.track_id));
      });
    }
    out.gt.frames.push_back(std::move(frame));
  }

  out.gt_tracks = BuildTracks(out.gt);

  for (const ObjectTrace& trace : out.traces) {
    for (int t = 1; t < config.frames; ++t) {
      const auto [x0, y0] = trace.positions[static_cast<std::size_t>(t - 1)];
      const auto [x1, y1] = trace.positions[static_cast<std::size_t>(t)];
      out.offsets[{trace.track_id, t}] = {x1 - x0, y1 - y0};
    }
  }

  for (const ObjectTrace& trace : out.traces) {
    bool separated = false;
    for (int attempt = 0; attempt < kEmbeddingAttempts && !separated;
         ++attempt) {
      Embedding candidate =
          DrawUnitEmbedding(config.embedding_length, embed_rng);
      separated = true;
      for (const auto& [id, existing] : out.base_embeddings) {
        if (CosineSimilarity(candidate, existing) > config.max_pairwise_cosine) {
          separated = false;
          break;
        }
      }
      if (separated) {
        out.base_embeddings[trace.track_id] = std::move(candidate);
      }
    }
    if (!separated) {
      throw InputError(
          "could not draw base embeddings with pairwise cosine at most " +
          std::to_string(config.max_pairwise_cosine) + " for " +
          std::to_string(object_count) + " objects of length " +
          std::to_string(config.embedding_length));
    }
  }

  return out;
}

std::map<std::pair<int, int>, Embedding> SynthEmbeddings(const SimOutput& out,
                                                         double noise_sigma,
                                                         std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) {
    throw InputError("noise sigma must be nonnegative, got " +
                     std::to_string(noise_sigma));
  }
  const int frames = static_cast<int>(out.gt.frames.size());
  const SplitRng root(seed);
  std::map<std::pair<int, int>, Embedding> result;
  for (const auto& [track_id, base] : out.base_embeddings) {
    SplitRng rng = root.Split(static_cast<std::uint64_t>(track_id));
    for (int t = 0; t < frames; ++t) {
      if (noise_sigma == 0.0) {
        result[{track_id, t}] = base;
        continue;
      }
      Embedding e = base;
      for (double& value : e) {
        value += noise_sigma * rng.Normal();
      }
      result[{track_id, t}] = NormalizeEmbedding(e);
    }
  }
  return result;
}

std::vector<std::vector<tracker::Detection>> DetectionsFromOutput(
    const SimOutput& out,
    const std::map<std::pair<int, int>, Embedding>& embeddings) {
  const int frames = static_cast<int>(out.gt.frames.size());
  std::vector<std::vector<tracker::Detection>> result(
      static_cast<std::size_t>(frames));
  for (const Track& track : out.gt_tracks) {
    for (const auto& [frame, mask] : track.masks) {
      tracker::Detection detection;
      detection.mask = mask;
      detection.class_id = track.class_id;
      detection.score = 1.0;
      const auto embedding = embeddings.find({track.track_id, frame});
      if (embedding == embeddings.end()) {
        throw InputError("no embedding for track " +
                         std::to_string(track.track_id) + " at frame " +
                         std::to_string(frame));
      }
      detection.embedding = embedding->second;
      const auto offset = out.offsets.find({track.track_id, frame});
      if (offset != out.offsets.end()) {
        detection.offset = offset->second;
      }
      result[static_cast<std::size_t>(frame)].push_back(std::move(detection));
    }
  }
  return result;
}

}  // namespace panotrack::sim
