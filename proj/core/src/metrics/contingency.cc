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

#include "metrics/contingency.h"

#include "panotrack/error.h"

namespace panotrack::metrics::internal {

FrameContingency BuildContingency(const PanopticMap& gt,
                                  const PanopticMap& pred) {
  if (gt.width() != pred.width() || gt.height() != pred.height()) {
    throw InputError("ground truth and prediction frame dimensions differ");
  }
  FrameContingency cells;
  const auto gt_class = gt.class_data();
  const auto gt_inst = gt.instance_data();
  const auto pred_class = pred.class_data();
  const auto pred_inst = pred.instance_data();
  const std::int64_t n = gt.num_pixels();

  std::uint64_t run_cell = PackCell(PackSide(gt_class[0], gt_inst[0]),
                                    PackSide(pred_class[0], pred_inst[0]));
  std::int64_t run_start = 0;
  for (std::int64_t p = 1; p < n; ++p) {
    const std::uint64_t cell = PackCell(PackSide(gt_class[p], gt_inst[p]),
                                        PackSide(pred_class[p], pred_inst[p]));
    if (cell != run_cell) {
      cells[run_cell] += p - run_start;
      run_cell = cell;
      run_start = p;
    }
  }
  cells[run_cell] += n - run_start;
  return cells;
}

}  // namespace panotrack::metrics::internal
