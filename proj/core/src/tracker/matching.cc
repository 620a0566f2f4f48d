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

#include "panotrack/tracker/matching.h"

#include <cstdint>

#include "panotrack/error.h"
#include "panotrack/tracker/assignment.h"

namespace panotrack::tracker {
namespace {

// Shared shape: detections are rows, track candidates are columns;
// score maximization becomes cost minimization by negation.
template <typename Candidate, typename ScoreFn>
std::vector<std::optional<int>> MatchDetections(
    std::span<const Detection> detections,
    std::span<const Candidate> candidates, ScoreFn score) {
  const int rows = static_cast<int>(detections.size());
  const int cols = static_cast<int>(candidates.size());
  std::vector<double> cost(static_cast<std::size_t>(rows) * cols, 0.0);
  std::vector<std::uint8_t> allowed(static_cast<std::size_t>(rows) * cols, 0);
  for (int d = 0; d < rows; ++d) {
    for (int t = 0; t < cols; ++t) {
      const std::optional<double> s = score(detections[d], candidates[t]);
      if (!s.has_value()) continue;
      const std::size_t cell = static_cast<std::size_t>(d) * cols + t;
      cost[cell] = -*s;
      allowed[cell] = 1;
    }
  }
  const std::vector<int> matched_col =
      SolveAssignment(rows, cols, cost, allowed);
  std::vector<std::optional<int>> result(rows);
  for (int d = 0; d < rows; ++d) {
    if (matched_col[d] >= 0) result[d] = candidates[matched_col[d]].track_id;
  }
  return result;
}

}  // namespace

std::vector<std::optional<int>> MatchByMotion(
    std::span<const PropagatedTrack> propagated,
    std::span<const Detection> current, double iou_min) {
  if (!(iou_min > 0.0 && iou_min <= 1.0)) {
    throw InputError("iou_min must lie in (0, 1]");
  }
  return MatchDetections(
      current, propagated,
      [iou_min](const Detection& detection,
                const PropagatedTrack& track) -> std::optional<double> {
        if (detection.class_id != track.class_id) return std::nullopt;
        const double iou = MaskIou(track.mask, detection.mask);
        if (iou < iou_min) return std::nullopt;
        return iou;
      });
}

std::vector<std::optional<int>> MatchByAppearance(
    std::span<const Detection> unmatched,
    std::span<const AppearanceCandidate> candidates, double sim_min) {
  if (!(sim_min > -1.0 && sim_min < 1.0)) {
    throw InputError("sim_min must lie in (-1, 1)");
  }
  return MatchDetections(
      unmatched, candidates,
      [sim_min](const Detection& detection,
                const AppearanceCandidate& track) -> std::optional<double> {
        if (detection.class_id != track.class_id) return std::nullopt;
        if (EmbeddingNorm(detection.embedding) == 0.0 ||
            EmbeddingNorm(track.embedding) == 0.0) {
          return std::nullopt;
        }
        const double similarity =
            CosineSimilarity(detection.embedding, track.embedding);
        if (similarity < sim_min) return std::nullopt;
        return similarity;
      });
}

}  // namespace panotrack::tracker
