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

#include "panotrack/cli/commands.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "io/json_util.h"
#include "json.hpp"
#include "panotrack/error.h"
#include "panotrack/io/dataset.h"
#include "panotrack/io/detections.h"
#include "panotrack/io/png_io.h"
#include "panotrack/io/report_io.h"
#include "panotrack/version.h"

namespace panotrack::cli {
namespace {

namespace fs = std::filesystem;

constexpr char kConfigSchema[] = "panotrack/config@1";
constexpr char kManifestSchema[] = "panotrack/sim-manifest@1";

void EmitError(bool json_errors, int exit_code, const char* kind,
               const std::string& message) {
  if (json_errors) {
    nlohmann::json doc;
    doc["error"]["exit_code"] = exit_code;
    doc["error"]["kind"] = kind;
    doc["error"]["message"] = message;
    std::cerr << doc.dump() << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
}

int Guard(bool json_errors, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const InputError& error) {
    EmitError(json_errors, 1, "input", error.what());
    return 1;
  } catch (const InternalError& error) {
    EmitError(json_errors, 2, "internal", error.what());
    return 2;
  } catch (const std::exception& error) {
    EmitError(json_errors, 2, "internal", error.what());
    return 2;
  }
}

double ProbabilityField(const nlohmann::json& object, const char* key,
                        const std::string& where, double fallback) {
  if (!object.contains(key)) return fallback;
  return io::DoubleField(object, key, where);
}

int IntOr(const nlohmann::json& object, const char* key,
          const std::string& where, int fallback) {
  if (!object.contains(key)) return fallback;
  return static_cast<int>(io::IntField(object, key, where));
}

double DoubleOr(const nlohmann::json& object, const char* key,
                const std::string& where, double fallback) {
  if (!object.contains(key)) return fallback;
  return io::DoubleField(object, key, where);
}

bool BoolOr(const nlohmann::json& object, const char* key,
            const std::string& where, bool fallback) {
  if (!object.contains(key)) return fallback;
  const nlohmann::json& value = object[key];
  if (!value.is_boolean()) {
    throw InputError(where + "." + key + ": expected a boolean");
  }
  return value.get<bool>();
}

void ParseTrackerSection(const nlohmann::json& section,
                         tracker::TrackerConfig& config) {
  const std::string where = "config.tracker";
  config.iou_min = DoubleOr(section, "iou_min", where, config.iou_min);
  config.sim_min = DoubleOr(section, "sim_min", where, config.sim_min);
  config.max_age = IntOr(section, "max_age", where, config.max_age);
  config.embedding_length =
      IntOr(section, "embedding_length", where, config.embedding_length);
  config.history_length =
      IntOr(section, "history_length", where, config.history_length);
  config.min_area = IntOr(section, "min_area", where, config.min_area);
  config.Validate();
}

void ParseSimSection(const nlohmann::json& section, sim::SimConfig& config) {
  const std::string where = "config.sim";
  config.width = IntOr(section, "width", where, config.width);
  config.height = IntOr(section, "height", where, config.height);
  config.frames = IntOr(section, "frames", where, config.frames);
  config.min_objects = IntOr(section, "min_objects", where, config.min_objects);
  config.max_objects = IntOr(section, "max_objects", where, config.max_objects);
  config.min_size = IntOr(section, "min_size", where, config.min_size);
  config.max_size = IntOr(section, "max_size", where, config.max_size);
  config.min_speed = IntOr(section, "min_speed", where, config.min_speed);
  config.max_speed = IntOr(section, "max_speed", where, config.max_speed);
  config.turn_probability = ProbabilityField(section, "turn_probability",
                                             where, config.turn_probability);
  config.occlusion_probability = ProbabilityField(
      section, "occlusion_probability", where, config.occlusion_probability);
  config.non_overlapping =
      BoolOr(section, "non_overlapping", where, config.non_overlapping);
  config.max_pairwise_cosine = DoubleOr(section, "max_pairwise_cosine", where,
                                        config.max_pairwise_cosine);
  config.embedding_length =
      IntOr(section, "embedding_length", where, config.embedding_length);
  if (section.contains("seed")) {
    config.seed = static_cast<std::uint64_t>(
        io::IntField(section, "seed", where));
  }
  if (section.contains("shapes")) {
    const nlohmann::json& shapes = section["shapes"];
    if (!shapes.is_array() || shapes.empty()) {
      throw InputError(where + ".shapes: expected a non-empty array");
    }
    config.shape_kinds.clear();
    for (const nlohmann::json& shape : shapes) {
      if (shape == "rectangle") {
        config.shape_kinds.push_back(sim::ShapeKind::kRectangle);
      } else if (shape == "ellipse") {
        config.shape_kinds.push_back(sim::ShapeKind::kEllipse);
      } else {
        throw InputError(where +
                         ".shapes: expected \"rectangle\" or \"ellipse\"");
      }
    }
  }
  if (section.contains("stuff_bands")) {
    const nlohmann::json& bands = section["stuff_bands"];
    if (!bands.is_array()) {
      throw InputError(where + ".stuff_bands: expected an array of class ids");
    }
    config.stuff_band_classes.clear();
    for (const nlohmann::json& band : bands) {
      if (!band.is_number_integer()) {
        throw InputError(where + ".stuff_bands: expected integers");
      }
      config.stuff_band_classes.push_back(band.get<int>());
    }
  }
}

// The class table named by the config wins; otherwise a classes.json next
// to the data; otherwise the KITTI-STEP default.
ClassTable ResolveClassTable(const CliConfig& config,
                             const std::string& data_dir) {
  if (config.class_table_path.has_value()) {
    return io::ReadClassTable(*config.class_table_path);
  }
  if (!data_dir.empty()) {
    const fs::path candidate = fs::path(data_dir) / "classes.json";
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) {
      return io::ReadClassTable(candidate.string());
    }
  }
  return ClassTable::KittiStep();
}

// A directory is a single sequence when it directly contains frame files,
// and a dataset root (one subdirectory per sequence) otherwise.
bool IsSequenceDir(const std::string& dir) {
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      return true;
    }
  }
  return false;
}

std::vector<std::string> ListSequenceNames(const std::string& root) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

struct SequenceJob {
  std::string name;
  std::string gt_dir;
  std::string pred_dir;
};

struct SequenceScores {
  metrics::MetricReport report;
  // Aggregation weights, stated in the report: segments for pq, pixels
  // for sq and aq, tracks for tq.
  double pq_weight = 0.0;
  double sq_weight = 0.0;
  double aq_weight = 0.0;
  double tq_weight = 0.0;
};

SequenceScores EvaluateOne(const SequenceJob& job, const ClassTable& table,
                           const metrics::EvaluateOptions& options) {
  io::SequenceData gt;
  io::SequenceData pred;
  try {
    gt = io::ReadSequenceDir(job.gt_dir, table);
    pred = io::ReadSequenceDir(job.pred_dir, table);
  } catch (const InputError& error) {
    throw InputError("sequence \"" + job.name + "\": " + error.what());
  }

  SequenceScores scores;
  scores.report = metrics::EvaluateSequence(gt.sequence, pred.sequence,
                                            options);
  for (const auto& stats : scores.report.pq_stats.classes) {
    scores.pq_weight +=
        static_cast<double>(stats.tp) + 0.5 * static_cast<double>(stats.fp) +
        0.5 * static_cast<double>(stats.fn);
  }
  for (const auto& stats : scores.report.sq_stats.classes) {
    scores.sq_weight += static_cast<double>(stats.gt_pixels);
  }
  for (const Track& track : gt.tracks) {
    scores.aq_weight += static_cast<double>(track.TubeArea());
  }
  scores.tq_weight = static_cast<double>(gt.tracks.size());
  return scores;
}

// Weighted mean; `fallback` when no sequence carries weight.
double WeightedMean(const std::vector<SequenceScores>& scores,
                    double SequenceScores::*weight,
                    double (*value)(const SequenceScores&), double fallback) {
  double total_weight = 0.0;
  double total = 0.0;
  for (const SequenceScores& s : scores) {
    total_weight += s.*weight;
    total += s.*weight * value(s);
  }
  if (total_weight == 0.0) return fallback;
  return total / total_weight;
}

nlohmann::json MetricsJson(double pq, double sq, double aq, double tq,
                           double stq, double pat) {
  nlohmann::json metrics;
  metrics["pq"] = pq;
  metrics["sq"] = sq;
  metrics["aq"] = aq;
  metrics["tq"] = tq;
  metrics["stq"] = stq;
  metrics["pat"] = pat;
  return metrics;
}

void RunJobs(int jobs, int count, const std::function<void(int)>& work) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const int workers = std::min(jobs, count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          work(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& thread : pool) thread.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string ConfigEcho(const std::string& config_path) {
  if (config_path.empty()) return {};
  return io::LoadJsonFile(config_path).dump();
}

}  // namespace

CliConfig LoadCliConfig(const std::string& path) {
  CliConfig config;
  if (path.empty()) return config;

  const nlohmann::json doc = io::LoadJsonFile(path);
  io::RequireSchema(doc, kConfigSchema, "config");
  if (doc.contains("class_table")) {
    config.class_table_path = io::StringField(doc, "class_table", "config");
  }
  if (doc.contains("tracker")) {
    ParseTrackerSection(doc["tracker"], config.tracker);
  }
  if (doc.contains("sim")) {
    ParseSimSection(doc["sim"], config.sim);
    config.sim_noise_sigma =
        DoubleOr(doc["sim"], "noise_sigma", "config.sim", 0.0);
  }
  if (doc.contains("association")) {
    config.evaluate.association.require_same_class = BoolOr(
        doc["association"], "require_same_class", "config.association", false);
  }
  if (doc.contains("jobs")) {
    config.jobs = IntOr(doc, "jobs", "config", 1);
    if (*config.jobs < 1) {
      throw InputError("config.jobs: must be at least 1");
    }
  }
  return config;
}

int RunEvaluate(const EvaluateCommand& command, bool json_errors) {
  return Guard(json_errors, [&] {
    const CliConfig config = LoadCliConfig(command.config_path);
    const ClassTable table = ResolveClassTable(config, command.gt_dir);

    std::error_code ec;
    if (!fs::is_directory(command.gt_dir, ec)) {
      throw InputError(command.gt_dir + " is not a readable directory");
    }
    if (!fs::is_directory(command.pred_dir, ec)) {
      throw InputError(command.pred_dir + " is not a readable directory");
    }

    std::vector<SequenceJob> sequence_jobs;
    if (IsSequenceDir(command.gt_dir)) {
      sequence_jobs.push_back({fs::path(command.gt_dir).filename().string(),
                               command.gt_dir, command.pred_dir});
    } else {
      for (const std::string& name : ListSequenceNames(command.gt_dir)) {
        const fs::path pred_dir = fs::path(command.pred_dir) / name;
        if (!fs::is_directory(pred_dir, ec)) {
          throw InputError("prediction is missing sequence \"" + name + "\"");
        }
        sequence_jobs.push_back({name,
                                 (fs::path(command.gt_dir) / name).string(),
                                 pred_dir.string()});
      }
      if (sequence_jobs.empty()) {
        throw InputError("no sequences found in " + command.gt_dir);
      }
    }

    const int jobs = command.jobs.value_or(config.jobs.value_or(1));
    if (jobs < 1) {
      throw InputError("jobs must be at least 1");
    }
    std::vector<SequenceScores> scores(sequence_jobs.size());
    RunJobs(jobs, static_cast<int>(sequence_jobs.size()), [&](int i) {
      scores[static_cast<std::size_t>(i)] =
          EvaluateOne(sequence_jobs[static_cast<std::size_t>(i)], table,
                      config.evaluate);
    });

    const double pq = WeightedMean(
        scores, &SequenceScores::pq_weight,
        [](const SequenceScores& s) { return s.report.pq; }, 0.0);
    const double sq = WeightedMean(
        scores, &SequenceScores::sq_weight,
        [](const SequenceScores& s) { return s.report.sq; }, 0.0);
    const double aq = WeightedMean(
        scores, &SequenceScores::aq_weight,
        [](const SequenceScores& s) { return s.report.aq; }, 1.0);
    const double tq = WeightedMean(
        scores, &SequenceScores::tq_weight,
        [](const SequenceScores& s) { return s.report.tq; }, 1.0);
    const double stq = metrics::ComputeStq(aq, sq);
    const double pat = metrics::ComputePat(pq, tq);

    const std::string config_echo = ConfigEcho(command.config_path);
    if (!command.out_dir.empty()) {
      fs::create_directories(command.out_dir, ec);
      if (ec) {
        throw InputError("cannot create directory " + command.out_dir + ": " +
                         ec.message());
      }
      io::ReportMetadata metadata;
      metadata.tool_version = kVersion;
      metadata.config_json = config_echo;
      for (std::size_t i = 0; i < sequence_jobs.size(); ++i) {
        const fs::path path = fs::path(command.out_dir) /
                              (sequence_jobs[i].name + ".report.json");
        io::WriteReport(scores[i].report, metadata, path.string());
      }

      nlohmann::json aggregate;
      aggregate["schema"] = "panotrack/aggregate@1";
      aggregate["metrics"] = MetricsJson(pq, sq, aq, tq, stq, pat);
      aggregate["weighting"] = {{"pq", "segments"},
                                {"sq", "pixels"},
                                {"aq", "pixels"},
                                {"tq", "tracks"}};
      nlohmann::json sequences = nlohmann::json::array();
      for (std::size_t i = 0; i < sequence_jobs.size(); ++i) {
        const metrics::MetricReport& r = scores[i].report;
        nlohmann::json item;
        item["name"] = sequence_jobs[i].name;
        item["metrics"] = MetricsJson(r.pq, r.sq, r.aq, r.tq, r.stq, r.pat);
        item["weights"] = {{"pq", scores[i].pq_weight},
                           {"sq", scores[i].sq_weight},
                           {"aq", scores[i].aq_weight},
                           {"tq", scores[i].tq_weight}};
        sequences.push_back(std::move(item));
      }
      aggregate["sequences"] = std::move(sequences);
      aggregate["tool_version"] = kVersion;
      if (config_echo.empty()) {
        aggregate["config"] = nlohmann::json::object();
      } else {
        aggregate["config"] = nlohmann::json::parse(config_echo);
      }
      const fs::path aggregate_path =
          fs::path(command.out_dir) / "aggregate.report.json";
      io::WriteTextFile(aggregate_path.string(), aggregate.dump(2) + "\n");
    }

    std::printf("sequences: %zu\n", sequence_jobs.size());
    std::printf("PQ  %.6f\nSQ  %.6f\nAQ  %.6f\nTQ  %.6f\n", pq, sq, aq, tq);
    std::printf("STQ %.6f\nPAT %.6f\n", stq, pat);
  });
}

int RunTrack(const TrackCommand& command, bool json_errors) {
  return Guard(json_errors, [&] {
    const CliConfig config = LoadCliConfig(command.config_path);
    const ClassTable table = ResolveClassTable(config, command.semantic_dir);
    const io::DetectionsFile detections =
        io::ReadDetections(command.detections_path);

    std::error_code ec;
    if (!fs::is_directory(command.semantic_dir, ec)) {
      throw InputError(command.semantic_dir + " is not a readable directory");
    }
    std::vector<fs::path> semantic_paths;
    for (const auto& entry : fs::directory_iterator(command.semantic_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".png") {
        semantic_paths.push_back(entry.path());
      }
    }
    std::sort(semantic_paths.begin(), semantic_paths.end());
    if (semantic_paths.size() != detections.frames.size()) {
      throw InputError("detections file has " +
                       std::to_string(detections.frames.size()) +
                       " frames but " + command.semantic_dir + " has " +
                       std::to_string(semantic_paths.size()) +
                       " semantic maps");
    }

    tracker::TrackerConfig tracker_config = config.tracker;
    if (detections.embedding_length > 0) {
      // The file's declared length defines what arrives per record; the
      // config value steers only simulation output.
      tracker_config.embedding_length = detections.embedding_length;
    }

    tracker::TrackerState state(tracker_config);
    Sequence output;
    output.class_table = table;
    output.frames.reserve(detections.frames.size());
    for (std::size_t t = 0; t < detections.frames.size(); ++t) {
      const io::SemanticMap semantic =
          io::ReadSemanticPng(semantic_paths[t].string(), table);
      if (semantic.width != detections.width ||
          semantic.height != detections.height) {
        throw InputError(semantic_paths[t].filename().string() + " is " +
                         std::to_string(semantic.width) + "x" +
                         std::to_string(semantic.height) +
                         " but the detections file declares " +
                         std::to_string(detections.width) + "x" +
                         std::to_string(detections.height));
      }
      output.frames.push_back(state.Step(
          static_cast<int>(t), detections.frames[t], semantic.classes,
          semantic.width, semantic.height, table));
    }

    io::WriteSequenceDir(output, command.out_dir);
    io::WriteClassTable(
        table, (fs::path(command.out_dir) / "classes.json").string());
    std::printf("tracked %zu frames into %s\n", output.frames.size(),
                command.out_dir.c_str());
  });
}

int RunSimulate(const SimulateCommand& command, bool json_errors) {
  return Guard(json_errors, [&] {
    CliConfig config = LoadCliConfig(command.config_path);
    if (command.seed.has_value()) {
      config.sim.seed = *command.seed;
    }
    if (config.class_table_path.has_value()) {
      config.sim.class_table = io::ReadClassTable(*config.class_table_path);
    }

    const sim::SimOutput out = sim::GenerateSequence(config.sim);
    const auto embeddings =
        sim::SynthEmbeddings(out, config.sim_noise_sigma, config.sim.seed);

    const fs::path root(command.out_dir);
    std::error_code ec;
    fs::create_directories(root / "gt", ec);
    if (ec) {
      throw InputError("cannot create directory " + (root / "gt").string() +
                       ": " + ec.message());
    }
    io::WriteSequenceDir(out.gt, (root / "gt").string());
    io::WriteClassTable(config.sim.class_table,
                        (root / "gt" / "classes.json").string());

    // The class channel alone, as the track command's semantic input.
    Sequence semantic;
    semantic.class_table = config.sim.class_table;
    semantic.frames.reserve(out.gt.frames.size());
    for (const PanopticMap& frame : out.gt.frames) {
      PanopticMap classes_only(frame.width(), frame.height());
      std::copy(frame.class_data().begin(), frame.class_data().end(),
                classes_only.mutable_class_data().begin());
      semantic.frames.push_back(std::move(classes_only));
    }
    io::WriteSequenceDir(semantic, (root / "semantic").string());
    io::WriteClassTable(config.sim.class_table,
                        (root / "semantic" / "classes.json").string());

    io::DetectionsFile detections;
    detections.width = config.sim.width;
    detections.height = config.sim.height;
    detections.embedding_length = config.sim.embedding_length;
    detections.frames = sim::DetectionsFromOutput(out, embeddings);
    io::WriteDetections(detections, (root / "detections.json").string());

    nlohmann::json manifest;
    manifest["schema"] = kManifestSchema;
    manifest["seed"] = config.sim.seed;
    manifest["rng"] = out.rng_algorithm;
    manifest["frames"] = static_cast<int>(out.gt.frames.size());
    manifest["tracks"] = static_cast<int>(out.gt_tracks.size());
    manifest["noise_sigma"] = config.sim_noise_sigma;
    manifest["tool_version"] = kVersion;
    const std::string config_echo = ConfigEcho(command.config_path);
    if (config_echo.empty()) {
      manifest["config"] = nlohmann::json::object();
    } else {
      manifest["config"] = nlohmann::json::parse(config_echo);
    }
    io::WriteTextFile((root / "manifest.json").string(),
                      manifest.dump(2) + "\n");

    std::printf("simulated %zu frames, %zu tracks into %s\n",
                out.gt.frames.size(), out.gt_tracks.size(),
                command.out_dir.c_str());
  });
}

}  // namespace panotrack::cli
