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

#include "panotrack/sim/perturb.h"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "panotrack/error.h"
#include "panotrack/mask.h"
#include "panotrack/sim/rng.h"
#include "panotrack/track.h"

namespace panotrack::sim {
namespace {

constexpr int kMaxInstanceId = 65535;

// For every pixel, the class of the nearest instance-free pixel
// (4-neighborhood breadth-first, row-major seeding, first reach wins).
// Those sources are stuff or ignore pixels in any valid map, so the fill
// never invents a thing class without an instance.
std::vector<std::uint16_t> NearestBackgroundClass(const PanopticMap& frame) {
  const int width = frame.width();
  const int height = frame.height();
  const std::int64_t n = frame.num_pixels();
  std::vector<std::uint16_t> fill(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(n), 0);
  std::deque<std::int64_t> queue;

  const auto instances = frame.instance_data();
  const auto classes = frame.class_data();
  for (std::int64_t p = 0; p < n; ++p) {
    if (instances[static_cast<std::size_t>(p)] == 0) {
      fill[static_cast<std::size_t>(p)] = classes[static_cast<std::size_t>(p)];
      visited[static_cast<std::size_t>(p)] = 1;
      queue.push_back(p);
    }
  }
  if (queue.empty()) {
    // Every pixel belongs to an instance; nothing background-like to
    // copy. Callers treat this as an input defect.
    throw InputError(
        "cannot fill vacated pixels: the frame has no background pixels");
  }
  while (!queue.empty()) {
    const std::int64_t p = queue.front();
    queue.pop_front();
    const int x = static_cast<int>(p % width);
    const int y = static_cast<int>(p / width);
    const int nx[4] = {x - 1, x + 1, x, x};
    const int ny[4] = {y, y, y - 1, y + 1};
    for (int i = 0; i < 4; ++i) {
      if (nx[i] < 0 || nx[i] >= width || ny[i] < 0 || ny[i] >= height) {
        continue;
      }
      const std::int64_t q =
          static_cast<std::int64_t>(ny[i]) * width + nx[i];
      if (!visited[static_cast<std::size_t>(q)]) {
        visited[static_cast<std::size_t>(q)] = 1;
        fill[static_cast<std::size_t>(q)] = fill[static_cast<std::size_t>(p)];
        queue.push_back(q);
      }
    }
  }
  return fill;
}

// Replaces pixels of `instance_id` outside `keep` with the precomputed
// background class, clearing their instance.
void ReleaseInstancePixels(PanopticMap& frame, int instance_id,
                           const BitMask* keep,
                           const std::vector<std::uint16_t>& fill) {
  const int width = frame.width();
  const int height = frame.height();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (frame.InstanceAt(x, y) != instance_id) continue;
      if (keep != nullptr && keep->Get(x, y)) continue;
      const std::int64_t p = static_cast<std::int64_t>(y) * width + x;
      frame.SetPixel(x, y, fill[static_cast<std::size_t>(p)], 0);
    }
  }
}

}  // namespace

Sequence PerturbIds(const Sequence& gt, int k, std::uint64_t seed) {
  if (k < 0) {
    throw InputError("cut count must be nonnegative, got " +
                     std::to_string(k));
  }
  Sequence result = gt;
  if (k == 0) return result;

  const std::vector<Track> tracks = BuildTracks(gt);
  // A cut is eligible at any frame of a track past its first.
  std::vector<std::pair<int, int>> eligible;
  int max_id = 0;
  for (const Track& track : tracks) {
    max_id = std::max(max_id, track.track_id);
    bool first = true;
    for (const auto& [frame, mask] : track.masks) {
      if (!first) eligible.emplace_back(track.track_id, frame);
      first = false;
    }
  }
  if (k > static_cast<int>(eligible.size())) {
    throw InputError("requested " + std::to_string(k) +
                     " id cuts but only " + std::to_string(eligible.size()) +
                     " cut points are eligible");
  }

  // Partial Fisher-Yates: the first k picks for one seed are a prefix of
  // the first k+1, which is what makes the k-sweep monotone.
  SplitRng rng = SplitRng(seed).Split(1);
  std::vector<std::size_t> order(eligible.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.UniformInt(
        i, static_cast<std::int64_t>(order.size()) - 1));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }

  std::map<int, std::vector<int>> cuts_of_track;
  for (int i = 0; i < k; ++i) {
    const auto [track_id, frame] = eligible[order[static_cast<std::size_t>(i)]];
    cuts_of_track[track_id].push_back(frame);
  }

  // (old id, frame) -> new id, walking cuts in ascending frame order.
  int next_id = max_id;
  std::map<std::pair<int, int>, int> remap;
  for (auto& [track_id, cuts] : cuts_of_track) {
    std::sort(cuts.begin(), cuts.end());
    const Track& track =
        *std::find_if(tracks.begin(), tracks.end(), [&](const Track& t) {
          return t.track_id == track_id;
        });
    std::size_t applied = 0;
    int current_id = track_id;
    for (const auto& [frame, mask] : track.masks) {
      while (applied < cuts.size() && cuts[applied] <= frame) {
        ++next_id;
        if (next_id > kMaxInstanceId) {
          throw InputError("id cuts exhausted the instance id range");
        }
        current_id = next_id;
        ++applied;
      }
      if (current_id != track_id) remap[{track_id, frame}] = current_id;
    }
  }

  for (std::size_t t = 0; t < result.frames.size(); ++t) {
    std::map<int, std::uint16_t> frame_remap;
    for (const auto& [key, new_id] : remap) {
      if (key.second == static_cast<int>(t)) {
        frame_remap[key.first] = static_cast<std::uint16_t>(new_id);
      }
    }
    if (frame_remap.empty()) continue;
    for (std::uint16_t& instance : result.frames[t].mutable_instance_data()) {
      const auto hit = frame_remap.find(instance);
      if (hit != frame_remap.end()) instance = hit->second;
    }
  }
  return result;
}

Sequence PerturbMasks(const Sequence& gt, int erosion, std::uint64_t seed) {
  (void)seed;
  if (erosion < 0) {
    throw InputError("erosion radius must be nonnegative, got " +
                     std::to_string(erosion));
  }
  Sequence result = gt;
  if (erosion == 0) return result;

  for (PanopticMap& frame : result.frames) {
    const std::vector<Segment> segments =
        ExtractSegments(frame, gt.class_table);
    std::vector<std::uint16_t> fill;
    for (const Segment& segment : segments) {
      if (segment.instance_id == 0) continue;
      if (fill.empty()) fill = NearestBackgroundClass(frame);
      const BitMask eroded = ErodeMask(segment.mask, erosion);
      ReleaseInstancePixels(frame, segment.instance_id, &eroded, fill);
    }
  }
  return result;
}

Sequence DropDetections(const Sequence& gt, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw InputError("drop rate must lie in [0, 1], got " +
                     std::to_string(rate));
  }
  Sequence result = gt;
  const std::vector<Track> tracks = BuildTracks(gt);
  SplitRng rng = SplitRng(seed).Split(1);

  // Draw in (track, frame) order so the outcome is a pure function of the
  // seed and the sequence's track structure.
  std::map<int, std::vector<int>> dropped_of_frame;
  for (const Track& track : tracks) {
    for (const auto& [frame, mask] : track.masks) {
      if (rng.Bernoulli(rate)) {
        dropped_of_frame[frame].push_back(track.track_id);
      }
    }
  }
  for (const auto& [frame, instance_ids] : dropped_of_frame) {
    PanopticMap& map = result.frames[static_cast<std::size_t>(frame)];
    const std::vector<std::uint16_t> fill = NearestBackgroundClass(map);
    for (const int instance_id : instance_ids) {
      ReleaseInstancePixels(map, instance_id, nullptr, fill);
    }
  }
  return result;
}

}  // namespace panotrack::sim
