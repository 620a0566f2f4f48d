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

#include "panotrack/tracker/fusion.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "panotrack/error.h"
#include "panotrack/numeric.h"

namespace panotrack::tracker {

void LogitsMap::Validate() const {
  if (width < 1 || height < 1) {
    throw InputError("logits map dimensions must be >= 1");
  }
  if (values.size() != static_cast<std::size_t>(num_pixels())) {
    throw InputError("logits map value count mismatch");
  }
  for (const double v : values) {
    if (!std::isfinite(v)) {
      throw InputError("logits map contains a non-finite value");
    }
  }
}

LogitsMap FuseLogits(const LogitsMap& a, const LogitsMap& b) {
  a.Validate();
  b.Validate();
  if (a.width != b.width || a.height != b.height) {
    throw InputError("cannot fuse logit maps of different dimensions");
  }
  LogitsMap fused;
  fused.width = a.width;
  fused.height = a.height;
  fused.values.resize(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    fused.values[i] = (Sigmoid(a.values[i]) + Sigmoid(b.values[i])) *
                      (a.values[i] + b.values[i]);
  }
  return fused;
}

void SemanticLogits::Validate(const ClassTable& table) const {
  if (width < 1 || height < 1) {
    throw InputError("semantic logits dimensions must be >= 1");
  }
  if (class_ids.empty()) {
    throw InputError("semantic logits need at least one class channel");
  }
  for (const int class_id : class_ids) {
    if (!table.Contains(class_id)) {
      throw InputError("semantic logits channel for unknown class " +
                       std::to_string(class_id));
    }
  }
  if (values.size() !=
      static_cast<std::size_t>(num_pixels()) * class_ids.size()) {
    throw InputError("semantic logits value count mismatch");
  }
  for (const double v : values) {
    if (!std::isfinite(v)) {
      throw InputError("semantic logits contain a non-finite value");
    }
  }
}

std::vector<double> CombineFeatures(const std::vector<double>& f_a,
                                    const std::vector<double>& f_p,
                                    double w_a, double w_p) {
  if (f_a.size() != f_p.size()) {
    throw InputError("cannot combine feature vectors of different lengths");
  }
  std::vector<double> combined(f_a.size());
  for (std::size_t i = 0; i < f_a.size(); ++i) {
    combined[i] = w_a * f_a[i] + w_p * f_p[i];
  }
  return combined;
}

namespace {

// Shared claim machinery: given per-detection claim masks, commit pixels
// in descending score order (index breaks ties), dropping detections
// whose surviving claim is too small and releasing their pixels.
struct ClaimOutcome {
  // Per pixel: committed detection index, or -1.
  std::vector<int> owner;
  std::vector<int> instance_of_detection;
};

ClaimOutcome ClaimPixels(std::span<const Detection> detections,
                         const std::vector<BitMask>& claims, int width,
                         int height, const ResolveConfig& config) {
  const std::int64_t n = static_cast<std::int64_t>(width) * height;
  ClaimOutcome outcome;
  outcome.owner.assign(n, -1);
  outcome.instance_of_detection.assign(detections.size(), -1);

  std::vector<int> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return detections[lhs].score > detections[rhs].score;
  });

  int next_instance = 1;
  for (const int d : order) {
    std::vector<std::int64_t> taken;
    claims[d].ForEachForeground([&](int x, int y) {
      const std::int64_t p = static_cast<std::int64_t>(y) * width + x;
      if (outcome.owner[p] == -1) taken.push_back(p);
    });
    if (static_cast<int>(taken.size()) < config.min_area) continue;
    for (const std::int64_t p : taken) outcome.owner[p] = d;
    outcome.instance_of_detection[d] = next_instance++;
  }
  return outcome;
}

void ValidateDetectionsForResolve(std::span<const Detection> detections,
                                  const ClassTable& table, int width,
                                  int height) {
  for (std::size_t d = 0; d < detections.size(); ++d) {
    ValidateDetection(detections[d]);
    if (!table.IsThing(detections[d].class_id)) {
      throw InputError("detection " + std::to_string(d) +
                       " has non-thing class " +
                       std::to_string(detections[d].class_id));
    }
    if (detections[d].mask.width() != width ||
        detections[d].mask.height() != height) {
      throw InputError("detection " + std::to_string(d) +
                       " mask dimensions do not match the frame");
    }
  }
}

BitMask ClaimMask(const Detection& detection, const SemanticLogits* semantic,
                  int channel) {
  if (detection.mask_logits.has_value() && semantic != nullptr &&
      channel >= 0) {
    // The fused evidence decides the claim; positive means foreground.
    LogitsMap class_logits;
    class_logits.width = semantic->width;
    class_logits.height = semantic->height;
    const std::size_t channels = semantic->class_ids.size();
    class_logits.values.resize(semantic->num_pixels());
    for (std::int64_t p = 0; p < semantic->num_pixels(); ++p) {
      class_logits.values[p] = semantic->values[p * channels + channel];
    }
    const LogitsMap fused = FuseLogits(class_logits, *detection.mask_logits);
    BitMask mask(fused.width, fused.height);
    for (std::int64_t p = 0; p < fused.num_pixels(); ++p) {
      if (fused.values[p] > 0.0) {
        mask.Set(static_cast<int>(p % fused.width),
                 static_cast<int>(p / fused.width), true);
      }
    }
    return mask;
  }
  return detection.mask;
}

}  // namespace

ResolveResult ResolvePanoptic(const SemanticLogits& semantic,
                              std::span<const Detection> detections,
                              const ClassTable& table,
                              const ResolveConfig& config) {
  semantic.Validate(table);
  ValidateDetectionsForResolve(detections, table, semantic.width,
                               semantic.height);

  std::vector<BitMask> claims;
  claims.reserve(detections.size());
  for (const Detection& detection : detections) {
    int channel = -1;
    for (std::size_t c = 0; c < semantic.class_ids.size(); ++c) {
      if (semantic.class_ids[c] == detection.class_id) {
        channel = static_cast<int>(c);
        break;
      }
    }
    claims.push_back(ClaimMask(detection, &semantic, channel));
  }

  const ClaimOutcome outcome = ClaimPixels(detections, claims, semantic.width,
                                           semantic.height, config);

  // Stuff channels for the unclaimed-pixel argmax; ties toward the
  // lower channel index.
  std::vector<std::size_t> stuff_channels;
  for (std::size_t c = 0; c < semantic.class_ids.size(); ++c) {
    if (table.IsStuff(semantic.class_ids[c])) stuff_channels.push_back(c);
  }
  if (stuff_channels.empty()) {
    throw InputError("semantic logits carry no stuff channel to label "
                     "unclaimed pixels");
  }

  ResolveResult result{PanopticMap(semantic.width, semantic.height),
                       outcome.instance_of_detection};
  const std::size_t channels = semantic.class_ids.size();
  for (std::int64_t p = 0; p < semantic.num_pixels(); ++p) {
    const int x = static_cast<int>(p % semantic.width);
    const int y = static_cast<int>(p / semantic.width);
    const int d = outcome.owner[p];
    if (d >= 0) {
      result.map.SetPixel(
          x, y, static_cast<std::uint16_t>(detections[d].class_id),
          static_cast<std::uint16_t>(outcome.instance_of_detection[d]));
      continue;
    }
    std::size_t best = stuff_channels[0];
    for (const std::size_t c : stuff_channels) {
      if (semantic.values[p * channels + c] >
          semantic.values[p * channels + best]) {
        best = c;
      }
    }
    result.map.SetPixel(
        x, y, static_cast<std::uint16_t>(semantic.class_ids[best]), 0);
  }
  return result;
}

ResolveResult ResolvePanopticFromClassMap(
    std::span<const std::uint16_t> semantic_classes, int width, int height,
    std::span<const Detection> detections, const ClassTable& table,
    const ResolveConfig& config) {
  if (width < 1 || height < 1) {
    throw InputError("semantic class map dimensions must be >= 1");
  }
  if (semantic_classes.size() !=
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InputError("semantic class map size mismatch");
  }
  ValidateDetectionsForResolve(detections, table, width, height);

  std::vector<BitMask> claims;
  claims.reserve(detections.size());
  for (const Detection& detection : detections) {
    claims.push_back(ClaimMask(detection, nullptr, -1));
  }
  const ClaimOutcome outcome =
      ClaimPixels(detections, claims, width, height, config);

  // Fallback class for unclaimed pixels whose semantic class is a thing:
  // without an owning instance the pixel cannot stay a thing.
  int fallback = -1;
  if (table.ignore_id().has_value()) {
    fallback = *table.ignore_id();
  } else if (!table.stuff_ids().empty()) {
    fallback = table.stuff_ids().front();
  } else {
    throw InputError("class table has neither an ignore class nor a stuff "
                     "class for unclaimed thing pixels");
  }

  ResolveResult result{PanopticMap(width, height),
                       outcome.instance_of_detection};
  for (std::int64_t p = 0;
       p < static_cast<std::int64_t>(width) * height; ++p) {
    const int x = static_cast<int>(p % width);
    const int y = static_cast<int>(p / width);
    const int d = outcome.owner[p];
    if (d >= 0) {
      result.map.SetPixel(
          x, y, static_cast<std::uint16_t>(detections[d].class_id),
          static_cast<std::uint16_t>(outcome.instance_of_detection[d]));
      continue;
    }
    const int semantic_class = semantic_classes[p];
    if (!table.Contains(semantic_class)) {
      throw InputError("semantic class map contains unknown class " +
                       std::to_string(semantic_class));
    }
    const int class_id =
        table.IsThing(semantic_class) ? fallback : semantic_class;
    result.map.SetPixel(x, y, static_cast<std::uint16_t>(class_id), 0);
  }
  return result;
}

}  // namespace panotrack::tracker
