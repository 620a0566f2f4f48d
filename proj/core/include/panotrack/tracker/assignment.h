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

#ifndef PANOTRACK_TRACKER_ASSIGNMENT_H_
#define PANOTRACK_TRACKER_ASSIGNMENT_H_

#include <cstdint>
#include <span>
#include <vector>

namespace panotrack::tracker {

// One-to-one matching over the allowed cells of a rectangular cost
// matrix: among all matchings of maximum cardinality, one of minimum
// total cost. Exact ties are broken toward the assignment sequence that
// is lexicographically smallest by (row, column).
//
// cost and allowed are row-major with rows * cols entries; allowed[i]
// zero marks a forbidden pair. Costs on allowed cells must be finite and
// may be negative. Returns, per row, the matched column or -1.
std::vector<int> SolveAssignment(int rows, int cols,
                                 std::span<const double> cost,
                                 std::span<const std::uint8_t> allowed);

}  // namespace panotrack::tracker

#endif  // PANOTRACK_TRACKER_ASSIGNMENT_H_
