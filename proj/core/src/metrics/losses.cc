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

#include "panotrack/metrics/losses.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "panotrack/error.h"
#include "panotrack/numeric.h"

namespace panotrack::metrics {

namespace {

constexpr double kLogClamp = 1e-12;

double ClampedNegLog(double p) { return -std::log(std::max(p, kLogClamp)); }

}  // namespace

int ProbMap::ChannelOf(int class_id) const {
  for (std::size_t c = 0; c < class_ids.size(); ++c) {
    if (class_ids[c] == class_id) return static_cast<int>(c);
  }
  return -1;
}

void ProbMap::Validate() const {
  if (width < 1 || height < 1) {
    throw InputError("probability map dimensions must be >= 1");
  }
  if (class_ids.empty()) {
    throw InputError("probability map needs at least one class channel");
  }
  const std::size_t channels = class_ids.size();
  if (values.size() != static_cast<std::size_t>(num_pixels()) * channels) {
    throw InputError("probability map value count mismatch");
  }
  for (std::int64_t p = 0; p < num_pixels(); ++p) {
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const double v = values[p * channels + c];
      if (v < 0.0) {
        throw InputError("negative probability at pixel " + std::to_string(p));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw InputError("probabilities at pixel " + std::to_string(p) +
                       " sum to " + std::to_string(sum));
    }
  }
}

double SemanticBootstrapLoss(const ProbMap& prob,
                             std::span<const std::uint16_t> gt_classes) {
  prob.Validate();
  if (static_cast<std::int64_t>(gt_classes.size()) != prob.num_pixels()) {
    throw InputError("ground-truth class map size mismatch");
  }
  const std::size_t channels = prob.class_ids.size();
  const std::int64_t n = prob.num_pixels();

  std::vector<std::pair<double, std::int64_t>> pixel_losses;
  pixel_losses.reserve(n);
  for (std::int64_t p = 0; p < n; ++p) {
    const int channel = prob.ChannelOf(gt_classes[p]);
    if (channel < 0) {
      throw InputError("ground-truth class " +
                       std::to_string(gt_classes[p]) +
                       " has no probability channel");
    }
    pixel_losses.emplace_back(ClampedNegLog(prob.values[p * channels + channel]),
                              p);
  }

  // Exact worst quartile, ties at the boundary resolved by pixel index.
  // Summing in this fixed order keeps the result independent of any input
  // pixel permutation.
  std::sort(pixel_losses.begin(), pixel_losses.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  const std::int64_t k = std::max<std::int64_t>(1, n / 4);
  const double weight = 4.0 / static_cast<double>(n);
  double loss = 0.0;
  for (std::int64_t i = 0; i < k; ++i) {
    loss += weight * pixel_losses[i].first;
  }
  return loss;
}

double MotionLoss(const std::map<std::pair<int, int>, ProbMask>& propagated,
                  const std::map<std::pair<int, int>, BitMask>& gt) {
  if (propagated.size() != gt.size()) {
    throw InputError("motion loss: propagated and ground-truth mask sets "
                     "have different sizes");
  }
  double loss = 0.0;
  auto gt_it = gt.begin();
  for (const auto& [key, soft_mask] : propagated) {
    if (gt_it->first != key) {
      throw InputError("motion loss: mismatched (instance, frame) keys (" +
                       std::to_string(key.first) + ", " +
                       std::to_string(key.second) + ")");
    }
    loss += 1.0 - SoftIou(soft_mask, gt_it->second);
    ++gt_it;
  }
  return loss;
}

double AppearanceMatchingLoss(
    std::span<const std::pair<Embedding, Embedding>> pairs,
    std::span<const int> same_track, int track_count, double temperature) {
  if (pairs.size() != same_track.size()) {
    throw InputError("appearance loss: pair and label lists differ in size");
  }
  if (track_count < 1) {
    throw InputError("appearance loss needs at least one track");
  }
  if (!(temperature > 0.0)) {
    throw InputError("appearance loss temperature must be positive");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (same_track[i] != 0 && same_track[i] != 1) {
      throw InputError("appearance loss labels must be 0 or 1");
    }
    const double delta = CosineSimilarity(pairs[i].first, pairs[i].second);
    const double same_probability = Sigmoid(delta / temperature);
    loss += same_track[i] == 1
                ? ClampedNegLog(same_probability)
                : ClampedNegLog(1.0 - same_probability);
  }
  return loss;
}

}  // namespace panotrack::metrics
