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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "panotrack/sim/sim.h"
#include "panotrack/tracker/detection.h"
#include "panotrack/tracker/tracker.h"

namespace panotrack {
namespace {

struct TrackFixture {
  sim::SimOutput out;
  std::vector<std::vector<tracker::Detection>> detections;
  tracker::TrackerConfig config;
};

const TrackFixture& Fixture() {
  static const TrackFixture fixture = [] {
    sim::SimConfig config;
    config.width = 256;
    config.height = 128;
    config.frames = 20;
    config.min_objects = 6;
    config.max_objects = 8;
    config.min_size = 10;
    config.max_size = 24;
    config.embedding_length = 32;
    config.seed = 17;
    TrackFixture built;
    built.out = sim::GenerateSequence(config);
    built.detections = sim::DetectionsFromOutput(
        built.out, sim::SynthEmbeddings(built.out, 0.05, 1));
    built.config.min_area = 1;
    built.config.embedding_length = 32;
    return built;
  }();
  return fixture;
}

// One full pass over the sequence: resolve, match, commit, every frame.
void BM_TrackerSequence(benchmark::State& state) {
  const TrackFixture& fixture = Fixture();
  std::int64_t frames = 0;
  for (auto _ : state) {
    tracker::TrackerState tracker_state(fixture.config);
    for (std::size_t t = 0; t < fixture.detections.size(); ++t) {
      const PanopticMap& frame = fixture.out.gt.frames[t];
      benchmark::DoNotOptimize(tracker_state.Step(
          static_cast<int>(t), fixture.detections[t], frame.class_data(),
          frame.width(), frame.height(), fixture.out.gt.class_table));
    }
    frames += static_cast<std::int64_t>(fixture.detections.size());
  }
  state.SetItemsProcessed(frames);
}
BENCHMARK(BM_TrackerSequence);

}  // namespace
}  // namespace panotrack
