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

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "panotrack/error.h"
#include "panotrack/tracker/assignment.h"

namespace panotrack::tracker {
namespace {

// Exhaustive reference: every subset matching, ranked by cardinality
// (more is better), then total cost, then the assignment vector with
// unmatched ranked after every real column.
struct BruteBest {
  int cardinality = -1;
  double cost = 0.0;
  std::vector<int> cols;
};

std::vector<int> LexKey(const std::vector<int>& cols, int num_cols) {
  std::vector<int> key = cols;
  for (int& c : key) {
    if (c < 0) c = num_cols;
  }
  return key;
}

void Enumerate(int row, int rows, int cols, const std::vector<double>& cost,
               const std::vector<std::uint8_t>& allowed,
               std::vector<bool>& used, std::vector<int>& current,
               double running, int matched, BruteBest& best) {
  if (row == rows) {
    const std::vector<int> key = LexKey(current, cols);
    const bool better =
        matched > best.cardinality ||
        (matched == best.cardinality &&
         (running < best.cost ||
          (running == best.cost &&
           (best.cols.empty() || key < LexKey(best.cols, cols)))));
    if (better) best = {matched, running, current};
    return;
  }
  current[row] = -1;
  Enumerate(row + 1, rows, cols, cost, allowed, used, current, running,
            matched, best);
  for (int c = 0; c < cols; ++c) {
    if (!allowed[row * cols + c] || used[c]) continue;
    used[c] = true;
    current[row] = c;
    Enumerate(row + 1, rows, cols, cost, allowed, used, current,
              running + cost[row * cols + c], matched + 1, best);
    current[row] = -1;
    used[c] = false;
  }
}

std::vector<int> BruteForce(int rows, int cols, const std::vector<double>& cost,
                            const std::vector<std::uint8_t>& allowed) {
  BruteBest best;
  std::vector<bool> used(cols, false);
  std::vector<int> current(rows, -1);
  Enumerate(0, rows, cols, cost, allowed, used, current, 0.0, 0, best);
  return best.cols;
}

TEST_CASE("assignment of the empty problem") {
  CHECK(SolveAssignment(0, 0, {}, {}).empty());
  const std::vector<double> cost = {1.0, 2.0};
  const std::vector<std::uint8_t> allowed = {1, 1};
  CHECK(SolveAssignment(1, 2, cost, allowed) == std::vector<int>{0});
}

TEST_CASE("assignment picks the cheap diagonal") {
  const std::vector<double> cost = {1.0, 2.0, 2.0, 1.0};
  const std::vector<std::uint8_t> allowed = {1, 1, 1, 1};
  CHECK(SolveAssignment(2, 2, cost, allowed) == std::vector<int>{0, 1});
}

TEST_CASE("assignment prefers the off-diagonal when it is cheaper") {
  const std::vector<double> cost = {1.0, 2.0, 1.0, 3.0};
  const std::vector<std::uint8_t> allowed = {1, 1, 1, 1};
  // {0,1} costs 4, {1,0} costs 3.
  CHECK(SolveAssignment(2, 2, cost, allowed) == std::vector<int>{1, 0});
}

TEST_CASE("assignment breaks exact ties toward low indices") {
  const std::vector<double> cost = {0.0, 0.0, 0.0, 0.0};
  const std::vector<std::uint8_t> allowed = {1, 1, 1, 1};
  CHECK(SolveAssignment(2, 2, cost, allowed) == std::vector<int>{0, 1});
}

TEST_CASE("assignment leaves forbidden rows unmatched") {
  const std::vector<double> cost = {5.0, 5.0, 5.0, 5.0};
  const std::vector<std::uint8_t> allowed = {0, 0, 0, 0};
  CHECK(SolveAssignment(2, 2, cost, allowed) ==
        std::vector<int>{-1, -1});
}

TEST_CASE("assignment favors cardinality over cost") {
  // Row 1 can only take column 0. Yielding it costs row 0 the expensive
  // column, but two matches beat one cheap match.
  const std::vector<double> cost = {0.0, 100.0, 5.0, 0.0};
  const std::vector<std::uint8_t> allowed = {1, 1, 1, 0};
  CHECK(SolveAssignment(2, 2, cost, allowed) == std::vector<int>{1, 0});
}

TEST_CASE("assignment handles negative costs") {
  const std::vector<double> cost = {-5.0, 0.0, 0.0, -5.0};
  const std::vector<std::uint8_t> allowed = {1, 1, 1, 1};
  CHECK(SolveAssignment(2, 2, cost, allowed) == std::vector<int>{0, 1});
}

TEST_CASE("assignment validates its inputs") {
  const std::vector<double> cost = {1.0};
  const std::vector<std::uint8_t> allowed = {1};
  CHECK_THROWS_AS(SolveAssignment(-1, 1, cost, allowed), InputError);
  CHECK_THROWS_AS(SolveAssignment(1, 2, cost, allowed), InputError);

  const std::vector<double> inf_cost = {
      std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(SolveAssignment(1, 1, inf_cost, allowed), InputError);
  // Non-finite entries are fine on forbidden cells.
  const std::vector<std::uint8_t> forbidden = {0};
  CHECK(SolveAssignment(1, 1, inf_cost, forbidden) == std::vector<int>{-1});
}

TEST_CASE("assignment matches exhaustive search on random problems") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % 5);
    std::vector<double> cost(rows * cols);
    std::vector<std::uint8_t> allowed(rows * cols);
    for (int i = 0; i < rows * cols; ++i) {
      // Small integers force plenty of exact ties; a few negatives keep
      // the solver honest about signs.
      cost[i] = static_cast<double>(static_cast<int>(rng() % 5)) - 1.0;
      allowed[i] = rng() % 10 < 7 ? 1 : 0;
    }
    const std::vector<int> expected = BruteForce(rows, cols, cost, allowed);
    const std::vector<int> actual = SolveAssignment(rows, cols, cost, allowed);
    CHECK(actual == expected);
  }
}

}  // namespace
}  // namespace panotrack::tracker
