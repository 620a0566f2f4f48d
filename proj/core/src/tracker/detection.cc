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

#include "panotrack/tracker/detection.h"

#include <cmath>

#include "panotrack/error.h"

namespace panotrack::tracker {

void ValidateDetection(const Detection& detection) {
  if (detection.mask.Empty()) {
    throw InputError("detection mask is empty");
  }
  if (!(detection.score >= 0.0 && detection.score <= 1.0)) {
    throw InputError("detection score must lie in [0, 1]");
  }
  for (const double v : detection.embedding) {
    if (!std::isfinite(v)) {
      throw InputError("detection embedding contains a non-finite value");
    }
  }
  if (detection.mask_logits.has_value()) {
    detection.mask_logits->Validate();
    if (detection.mask_logits->width != detection.mask.width() ||
        detection.mask_logits->height != detection.mask.height()) {
      throw InputError("detection mask and logits dimensions differ");
    }
  }
  if (detection.propagated_mask.has_value() !=
      detection.propagated_from.has_value()) {
    throw InputError(
        "propagated mask and its source track id must come together");
  }
  if (detection.propagated_mask.has_value() &&
      (detection.propagated_mask->width() != detection.mask.width() ||
       detection.propagated_mask->height() != detection.mask.height())) {
    throw InputError("propagated mask dimensions differ from the detection");
  }
}

}  // namespace panotrack::tracker
