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

#include "panotrack/tracker/assignment.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "panotrack/error.h"

namespace panotrack::tracker {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Shortest augmenting path assignment on a dense square matrix with
// finite entries (Jonker-Volgenant style, O(n^3)). Column n is the
// virtual start of each augmentation. Scans run in ascending index order
// with strict improvement, so equal alternatives resolve toward lower
// indices and the result is deterministic.
struct SquareSolution {
  std::vector<int> col_of_row;
  std::vector<double> row_potential;
  std::vector<double> col_potential;
};

SquareSolution SolveSquare(const std::vector<double>& a, int n) {
  SquareSolution solution;
  solution.col_of_row.assign(n, -1);
  solution.row_potential.assign(n + 1, 0.0);
  solution.col_potential.assign(n + 1, 0.0);
  if (n == 0) return solution;

  std::vector<double>& u = solution.row_potential;
  std::vector<double>& v = solution.col_potential;
  std::vector<int> row_of_col(n + 1, -1);
  std::vector<int> previous_col(n + 1, 0);
  std::vector<double> min_reduced(n + 1);
  std::vector<char> visited(n + 1);

  for (int i = 0; i < n; ++i) {
    row_of_col[n] = i;
    int j0 = n;
    std::fill(min_reduced.begin(), min_reduced.end(), kInfinity);
    std::fill(visited.begin(), visited.end(), 0);
    do {
      visited[j0] = 1;
      const int i0 = row_of_col[j0];
      double delta = kInfinity;
      int j1 = -1;
      for (int j = 0; j < n; ++j) {
        if (visited[j]) continue;
        const double reduced = a[static_cast<std::size_t>(i0) * n + j] -
                               u[i0] - v[j];
        if (reduced < min_reduced[j]) {
          min_reduced[j] = reduced;
          previous_col[j] = j0;
        }
        if (min_reduced[j] < delta) {
          delta = min_reduced[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (visited[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_reduced[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != -1);
    do {
      const int j1 = previous_col[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != n);
  }

  for (int j = 0; j < n; ++j) {
    if (row_of_col[j] >= 0) solution.col_of_row[row_of_col[j]] = j;
  }
  return solution;
}

// A matching restricted to subsets of the original rows and columns.
struct SubProblem {
  std::vector<int> rows;
  std::vector<int> cols;
};

struct SubSolution {
  // Index into SubProblem::cols per SubProblem::rows entry, or -1.
  std::vector<int> matched_col_index;
  int cardinality = 0;
  double total_cost = 0.0;
  // Reduced square form, for tie detection on the top-level solve.
  std::vector<double> square;
  int square_n = 0;
  double forbidden_value = 0.0;
  SquareSolution square_solution;
};

SubSolution SolveSub(const SubProblem& sub, int full_cols,
                     std::span<const double> cost,
                     std::span<const std::uint8_t> allowed) {
  SubSolution out;
  const int r_count = static_cast<int>(sub.rows.size());
  const int c_count = static_cast<int>(sub.cols.size());
  out.matched_col_index.assign(r_count, -1);
  if (r_count == 0 || c_count == 0) return out;

  double min_cost = kInfinity;
  double max_cost = -kInfinity;
  for (const int r : sub.rows) {
    for (const int c : sub.cols) {
      const std::size_t cell = static_cast<std::size_t>(r) * full_cols + c;
      if (!allowed[cell]) continue;
      min_cost = std::min(min_cost, cost[cell]);
      max_cost = std::max(max_cost, cost[cell]);
    }
  }
  if (min_cost == kInfinity) return out;  // nothing allowed

  // Forbidden and padding cells get a cost that exceeds any difference a
  // full set of real cells could produce, so the solver first maximizes
  // the number of real cells used, then minimizes their total cost.
  const int n = std::max(r_count, c_count);
  const double span = max_cost - min_cost;
  const double big = (span + 1.0) * (n + 1);
  out.square.assign(static_cast<std::size_t>(n) * n, big);
  out.square_n = n;
  out.forbidden_value = big;
  for (int i = 0; i < r_count; ++i) {
    for (int j = 0; j < c_count; ++j) {
      const std::size_t cell =
          static_cast<std::size_t>(sub.rows[i]) * full_cols + sub.cols[j];
      if (allowed[cell]) {
        out.square[static_cast<std::size_t>(i) * n + j] =
            cost[cell] - min_cost;
      }
    }
  }

  out.square_solution = SolveSquare(out.square, n);
  for (int i = 0; i < r_count; ++i) {
    const int j = out.square_solution.col_of_row[i];
    if (j < 0 || j >= c_count) continue;
    const std::size_t cell =
        static_cast<std::size_t>(sub.rows[i]) * full_cols + sub.cols[j];
    if (!allowed[cell]) continue;  // landed on a padding cell
    out.matched_col_index[i] = j;
    out.cardinality += 1;
    out.total_cost += cost[cell];
  }
  return out;
}

// True when a non-matched allowed cell has (near-)zero reduced cost, i.e.
// an alternative optimal matching may exist.
bool MayHaveTies(const SubProblem& sub, const SubSolution& solution,
                 int full_cols, std::span<const std::uint8_t> allowed) {
  if (solution.square_n == 0) return false;
  const int n = solution.square_n;
  const double tolerance = 1e-9 * (1.0 + solution.forbidden_value);
  for (int i = 0; i < static_cast<int>(sub.rows.size()); ++i) {
    for (int j = 0; j < static_cast<int>(sub.cols.size()); ++j) {
      if (solution.square_solution.col_of_row[i] == j) continue;
      const std::size_t cell =
          static_cast<std::size_t>(sub.rows[i]) * full_cols + sub.cols[j];
      if (!allowed[cell]) continue;
      const double reduced = solution.square[static_cast<std::size_t>(i) * n +
                                             j] -
                             solution.square_solution.row_potential[i] -
                             solution.square_solution.col_potential[j];
      if (reduced <= tolerance) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> SolveAssignment(int rows, int cols,
                                 std::span<const double> cost,
                                 std::span<const std::uint8_t> allowed) {
  if (rows < 0 || cols < 0) {
    throw InputError("assignment matrix dimensions must be non-negative");
  }
  const std::size_t cells = static_cast<std::size_t>(rows) * cols;
  if (cost.size() != cells || allowed.size() != cells) {
    throw InputError("assignment matrix buffers do not match rows * cols");
  }
  for (std::size_t i = 0; i < cells; ++i) {
    if (allowed[i] && !std::isfinite(cost[i])) {
      throw InputError("assignment costs on allowed pairs must be finite");
    }
  }

  SubProblem full;
  full.rows.resize(rows);
  full.cols.resize(cols);
  for (int r = 0; r < rows; ++r) full.rows[r] = r;
  for (int c = 0; c < cols; ++c) full.cols[c] = c;
  const SubSolution base = SolveSub(full, cols, cost, allowed);

  std::vector<int> result(rows, -1);
  const auto base_as_result = [&] {
    for (int r = 0; r < rows; ++r) {
      const int j = base.matched_col_index[r];
      if (j >= 0) result[r] = full.cols[j];
    }
    return result;
  };
  if (!MayHaveTies(full, base, cols, allowed)) {
    return base_as_result();
  }

  // Alternative optima exist. Rebuild the matching greedily: fix, row by
  // row, the smallest column that still permits the optimal cardinality
  // and total cost, which yields the lexicographically smallest optimal
  // assignment sequence.
  const int target_cardinality = base.cardinality;
  const double target_cost = base.total_cost;
  const double tolerance = 1e-9 * (1.0 + std::abs(target_cost));

  SubProblem active = full;
  double fixed_cost = 0.0;
  int fixed_count = 0;
  for (int r = 0; r < rows; ++r) {
    int chosen = -1;
    SubProblem without_row = active;
    without_row.rows.erase(std::find(without_row.rows.begin(),
                                     without_row.rows.end(), r));
    for (std::size_t ci = 0; ci < active.cols.size(); ++ci) {
      const int c = active.cols[ci];
      if (!allowed[static_cast<std::size_t>(r) * cols + c]) continue;
      SubProblem rest = without_row;
      rest.cols.erase(rest.cols.begin() + ci);
      const SubSolution sub = SolveSub(rest, cols, cost, allowed);
      const double total =
          fixed_cost + cost[static_cast<std::size_t>(r) * cols + c] +
          sub.total_cost;
      if (fixed_count + 1 + sub.cardinality == target_cardinality &&
          std::abs(total - target_cost) <= tolerance) {
        chosen = c;
        break;
      }
    }
    if (chosen >= 0) {
      result[r] = chosen;
      fixed_cost += cost[static_cast<std::size_t>(r) * cols + chosen];
      fixed_count += 1;
      active.rows.erase(std::find(active.rows.begin(), active.rows.end(), r));
      active.cols.erase(
          std::find(active.cols.begin(), active.cols.end(), chosen));
      continue;
    }
    // Row r stays unmatched; confirm the remainder still reaches the
    // optimum, falling back to the base solution if accumulated rounding
    // broke the equality checks.
    const SubSolution sub = SolveSub(without_row, cols, cost, allowed);
    if (fixed_count + sub.cardinality != target_cardinality ||
        std::abs(fixed_cost + sub.total_cost - target_cost) > tolerance) {
      return base_as_result();
    }
    active.rows = without_row.rows;
  }
  return result;
}

}  // namespace panotrack::tracker
