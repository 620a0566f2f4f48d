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

#ifndef PANOTRACK_CLI_COMMANDS_H_
#define PANOTRACK_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "panotrack/metrics/report.h"
#include "panotrack/sim/sim.h"
#include "panotrack/tracker/tracker.h"

namespace panotrack::cli {

// Optional JSON config file, schema "panotrack/config@1". Every section
// is optional; absent fields keep their defaults.
struct CliConfig {
  std::optional<std::string> class_table_path;
  tracker::TrackerConfig tracker;
  sim::SimConfig sim;
  // Noise scale for the per-frame embeddings the simulator emits.
  double sim_noise_sigma = 0.0;
  metrics::EvaluateOptions evaluate;
  std::optional<int> jobs;
};

// Empty path returns the defaults.
CliConfig LoadCliConfig(const std::string& path);

struct EvaluateCommand {
  std::string gt_dir;
  std::string pred_dir;
  std::string out_dir;  // empty: print the summary only
  std::string config_path;
  std::optional<int> jobs;
};

struct TrackCommand {
  std::string detections_path;
  std::string semantic_dir;
  std::string out_dir;
  std::string config_path;
};

struct SimulateCommand {
  std::string out_dir;
  std::string config_path;
  std::optional<std::uint64_t> seed;  // overrides the config's seed
};

// The commands behind the `panotrack` binary. Each returns a process exit
// code: 0 on success, 1 for input or format errors, 2 for internal
// invariant violations. With json_errors, failures additionally print one
// machine-readable JSON object to stderr.
int RunEvaluate(const EvaluateCommand& command, bool json_errors);
int RunTrack(const TrackCommand& command, bool json_errors);
int RunSimulate(const SimulateCommand& command, bool json_errors);

}  // namespace panotrack::cli

#endif  // PANOTRACK_CLI_COMMANDS_H_
