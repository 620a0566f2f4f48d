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

#include "panotrack/io/report_io.h"

#include <string>

#include "io/json_util.h"
#include "json.hpp"
#include "panotrack/error.h"

namespace panotrack::io {

std::string RenderReport(const metrics::MetricReport& report,
                         const ReportMetadata& metadata) {
  nlohmann::json doc;
  doc["schema"] = "panotrack/report@1";

  nlohmann::json metrics;
  metrics["pq"] = report.pq;
  metrics["sq"] = report.sq;
  metrics["aq"] = report.aq;
  metrics["tq"] = report.tq;
  metrics["stq"] = report.stq;
  metrics["pat"] = report.pat;
  doc["metrics"] = std::move(metrics);
  doc["tracking_vacuous"] = report.tracking_vacuous;

  nlohmann::json counts;
  counts["frames"] = report.frame_count;
  counts["gt_tracks"] = report.gt_track_count;
  counts["pred_tracks"] = report.pred_track_count;
  doc["counts"] = std::move(counts);

  nlohmann::json pq_classes = nlohmann::json::array();
  for (const auto& stats : report.pq_stats.classes) {
    nlohmann::json item;
    item["class_id"] = stats.class_id;
    item["tp"] = stats.tp;
    item["fp"] = stats.fp;
    item["fn"] = stats.fn;
    item["iou_sum"] = stats.iou_sum;
    item["pq"] = stats.Pq();
    item["rq"] = stats.Rq();
    pq_classes.push_back(std::move(item));
  }
  doc["pq_classes"] = std::move(pq_classes);

  nlohmann::json sq_classes = nlohmann::json::array();
  for (const auto& stats : report.sq_stats.classes) {
    nlohmann::json item;
    item["class_id"] = stats.class_id;
    item["intersection"] = stats.intersection;
    item["gt_pixels"] = stats.gt_pixels;
    item["pred_pixels"] = stats.pred_pixels;
    item["iou"] = stats.Iou();
    sq_classes.push_back(std::move(item));
  }
  doc["sq_classes"] = std::move(sq_classes);

  nlohmann::json tracks = nlohmann::json::array();
  for (const auto& score : report.track_scores) {
    nlohmann::json item;
    item["track_id"] = score.track_id;
    item["as"] = score.as_score;
    item["ids"] = score.ids;
    item["n_ids"] = score.n_ids;
    item["tq"] = score.tq_g;
    tracks.push_back(std::move(item));
  }
  doc["tracks"] = std::move(tracks);

  doc["tool_version"] = metadata.tool_version;
  if (metadata.config_json.empty()) {
    doc["config"] = nlohmann::json::object();
  } else {
    try {
      doc["config"] = nlohmann::json::parse(metadata.config_json);
    } catch (const nlohmann::json::parse_error& error) {
      throw InputError(std::string("config echo is not valid JSON: ") +
                       error.what());
    }
  }
  return doc.dump(2) + "\n";
}

void WriteReport(const metrics::MetricReport& report,
                 const ReportMetadata& metadata, const std::string& path) {
  WriteTextFile(path, RenderReport(report, metadata));
}

}  // namespace panotrack::io
