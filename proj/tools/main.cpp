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
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "panotrack/cli/commands.h"
#include "panotrack/version.h"

int main(int argc, char** argv) {
  CLI::App app{"Panoptic tracking evaluation, association and simulation"};
  app.set_version_flag("--version", std::string(panotrack::kVersion));
  app.require_subcommand(1);

  bool json_errors = false;
  app.add_flag("--json", json_errors,
               "Print failures as machine-readable JSON on stderr");

  panotrack::cli::EvaluateCommand evaluate;
  int evaluate_jobs = 0;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Score predicted sequences against ground truth");
  eval_cmd->add_option("--gt", evaluate.gt_dir,
                       "Ground-truth sequence or dataset directory")
      ->required();
  eval_cmd->add_option("--pred", evaluate.pred_dir,
                       "Predicted sequence or dataset directory")
      ->required();
  eval_cmd->add_option("--out", evaluate.out_dir,
                       "Directory for per-sequence and aggregate reports");
  eval_cmd->add_option("--config", evaluate.config_path, "Config JSON file");
  eval_cmd->add_option("--jobs", evaluate_jobs,
                       "Sequences evaluated in parallel");

  panotrack::cli::TrackCommand track;
  CLI::App* track_cmd = app.add_subcommand(
      "track", "Associate per-frame detections into tracked panoptic maps");
  track_cmd->add_option("--pred", track.detections_path,
                        "Detections JSON file")
      ->required();
  track_cmd->add_option("--gt", track.semantic_dir,
                        "Directory of per-frame semantic class PNGs")
      ->required();
  track_cmd->add_option("--out", track.out_dir, "Output sequence directory")
      ->required();
  track_cmd->add_option("--config", track.config_path, "Config JSON file");

  panotrack::cli::SimulateCommand simulate;
  std::uint64_t simulate_seed = 0;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Generate a synthetic ground-truth sequence");
  sim_cmd->add_option("--out", simulate.out_dir, "Output directory")
      ->required();
  sim_cmd->add_option("--config", simulate.config_path, "Config JSON file");
  CLI::Option* seed_option =
      sim_cmd->add_option("--seed", simulate_seed, "Generator seed");

  CLI11_PARSE(app, argc, argv);

  if (eval_cmd->parsed()) {
    if (eval_cmd->count("--jobs") > 0) evaluate.jobs = evaluate_jobs;
    return panotrack::cli::RunEvaluate(evaluate, json_errors);
  }
  if (track_cmd->parsed()) {
    return panotrack::cli::RunTrack(track, json_errors);
  }
  if (seed_option->count() > 0) simulate.seed = simulate_seed;
  return panotrack::cli::RunSimulate(simulate, json_errors);
}
