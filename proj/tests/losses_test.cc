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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "panotrack/error.h"
#include "panotrack/metrics/losses.h"
#include "test_util.h"

namespace panotrack::metrics {
namespace {

// Every pixel gets probability 1 on its own gt class.
ProbMap PerfectProbMap(int width, int height,
                       const std::vector<std::uint16_t>& gt,
                       std::vector<int> class_ids) {
  ProbMap prob{width, height, std::move(class_ids), {}};
  prob.values.assign(static_cast<std::size_t>(prob.num_pixels()) *
                         prob.class_ids.size(),
                     0.0);
  for (std::int64_t p = 0; p < prob.num_pixels(); ++p) {
    prob.values[p * prob.class_ids.size() + prob.ChannelOf(gt[p])] = 1.0;
  }
  return prob;
}

TEST_CASE("bootstrap loss is zero on a confident correct prediction") {
  const std::vector<std::uint16_t> gt = {0, 1, 1, 0};
  ProbMap prob = PerfectProbMap(2, 2, gt, {0, 1});
  CHECK(SemanticBootstrapLoss(prob, gt) == 0.0);
}

TEST_CASE("bootstrap loss on a uniform prediction is log of the classes") {
  // 16 pixels, so the worst quartile is exactly 4 pixels; every pixel
  // costs log 4, and 4 * (4/16) * log 4 = log 4.
  const int n = 16;
  ProbMap prob{4, 4, {0, 1, 2, 3}, std::vector<double>(n * 4, 0.25)};
  std::vector<std::uint16_t> gt(n, 2);
  CHECK(SemanticBootstrapLoss(prob, gt) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("bootstrap loss selects the worst pixels only") {
  const std::vector<std::uint16_t> gt(16, 0);
  ProbMap prob = PerfectProbMap(4, 4, gt, {0, 1});
  // One bad pixel among 16: it joins three zero-loss pixels in the
  // quartile, so the loss is (4/16) * -log(0.1).
  prob.values[2 * 2 + 0] = 0.1;
  prob.values[2 * 2 + 1] = 0.9;
  CHECK(SemanticBootstrapLoss(prob, gt) ==
        doctest::Approx(0.25 * -std::log(0.1)).epsilon(1e-12));
}

TEST_CASE("bootstrap loss keeps at least one pixel") {
  ProbMap prob{1, 1, {0, 1}, {0.5, 0.5}};
  const std::vector<std::uint16_t> gt = {1};
  CHECK(SemanticBootstrapLoss(prob, gt) ==
        doctest::Approx(4.0 * -std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("bootstrap loss clamps vanishing probabilities") {
  ProbMap prob{1, 1, {0, 1}, {1.0, 0.0}};
  const std::vector<std::uint16_t> gt = {1};
  CHECK(SemanticBootstrapLoss(prob, gt) ==
        doctest::Approx(4.0 * -std::log(1e-12)).epsilon(1e-12));
}

TEST_CASE("bootstrap loss is invariant to pixel order") {
  std::mt19937 rng(17);
  const int n = 24;
  std::vector<double> trues(n);
  for (double& v : trues) {
    v = 0.05 + 0.9 * (static_cast<double>(rng() % 1000) / 1000.0);
  }

  auto build = [&](const std::vector<int>& order) {
    ProbMap prob{6, 4, {0, 1}, std::vector<double>(n * 2)};
    for (int i = 0; i < n; ++i) {
      prob.values[i * 2 + 0] = trues[order[i]];
      prob.values[i * 2 + 1] = 1.0 - trues[order[i]];
    }
    return prob;
  };

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  const std::vector<std::uint16_t> gt(n, 0);
  const double base = SemanticBootstrapLoss(build(order), gt);
  for (int shuffle = 0; shuffle < 5; ++shuffle) {
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(SemanticBootstrapLoss(build(order), gt) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("bootstrap loss validates its inputs") {
  ProbMap bad_sum{1, 1, {0}, {0.5}};
  CHECK_THROWS_AS(
      SemanticBootstrapLoss(bad_sum, std::vector<std::uint16_t>{0}),
      InputError);
  ProbMap negative{1, 1, {0, 1}, {1.5, -0.5}};
  CHECK_THROWS_AS(
      SemanticBootstrapLoss(negative, std::vector<std::uint16_t>{0}),
      InputError);
  ProbMap ok{1, 1, {0, 1}, {0.5, 0.5}};
  // A gt class with no channel.
  CHECK_THROWS_AS(SemanticBootstrapLoss(ok, std::vector<std::uint16_t>{7}),
                  InputError);
  // Size mismatch.
  CHECK_THROWS_AS(
      SemanticBootstrapLoss(ok, std::vector<std::uint16_t>{0, 0}),
      InputError);
}

TEST_CASE("motion loss sums soft iou complements") {
  BitMask target = test::MakeMask({"#."});
  std::map<std::pair<int, int>, BitMask> gt;
  std::map<std::pair<int, int>, ProbMask> propagated;

  SUBCASE("perfect propagation costs nothing") {
    gt[{1, 0}] = target;
    propagated[{1, 0}] = ProbMask::FromBitMask(target);
    CHECK(MotionLoss(propagated, gt) == 0.0);
  }

  SUBCASE("half-confidence costs one half") {
    gt[{1, 0}] = target;
    propagated[{1, 0}] = ProbMask{2, 1, {0.5, 0.0}};
    CHECK(MotionLoss(propagated, gt) == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("d tracks over t frames all disjoint cost d * t") {
    ProbMask wrong{2, 1, {0.0, 0.7}};
    for (int track = 1; track <= 2; ++track) {
      for (int frame = 0; frame < 3; ++frame) {
        gt[{track, frame}] = target;
        propagated[{track, frame}] = wrong;
      }
    }
    CHECK(MotionLoss(propagated, gt) == doctest::Approx(6.0).epsilon(1e-12));
  }

  SUBCASE("key sets must agree") {
    gt[{1, 0}] = target;
    propagated[{1, 1}] = ProbMask::FromBitMask(target);
    CHECK_THROWS_AS(MotionLoss(propagated, gt), InputError);
    propagated[{1, 0}] = ProbMask::FromBitMask(target);
    CHECK_THROWS_AS(MotionLoss(propagated, gt), InputError);
  }
}

TEST_CASE("appearance loss at the decision boundary") {
  // Orthogonal embeddings: delta = 0, sigmoid(0) = 1/2 whatever the
  // temperature. One positive plus one negative pair cost 2 log 2.
  const Embedding a = {1.0, 0.0};
  const Embedding b = {0.0, 1.0};
  const std::vector<std::pair<Embedding, Embedding>> pairs = {{a, b}, {a, b}};
  const std::vector<int> labels = {1, 0};
  CHECK(AppearanceMatchingLoss(pairs, labels, 2, 1.0) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("appearance loss rewards aligned positives") {
  const Embedding a = {1.0, 0.0};
  const std::vector<std::pair<Embedding, Embedding>> pairs = {{a, a}};
  const std::vector<int> labels = {1};
  // delta = 1 at the default temperature 0.1: -log(sigmoid(10)).
  const double loss = AppearanceMatchingLoss(pairs, labels, 1);
  CHECK(loss > 0.0);
  CHECK(loss < 1e-4);
}

TEST_CASE("appearance loss clamps saturated mistakes") {
  const Embedding a = {1.0, 0.0};
  const Embedding opposite = {-1.0, 0.0};
  const std::vector<std::pair<Embedding, Embedding>> pairs = {{a, opposite}};
  const std::vector<int> labels = {1};
  const double loss = AppearanceMatchingLoss(pairs, labels, 1, 0.001);
  CHECK(loss == doctest::Approx(-std::log(1e-12)).epsilon(1e-9));
}

TEST_CASE("appearance loss validates its inputs") {
  const Embedding a = {1.0, 0.0};
  const std::vector<std::pair<Embedding, Embedding>> pairs = {{a, a}};
  CHECK_THROWS_AS(AppearanceMatchingLoss(pairs, std::vector<int>{2}, 1),
                  InputError);
  CHECK_THROWS_AS(AppearanceMatchingLoss(pairs, std::vector<int>{1}, 0),
                  InputError);
  CHECK_THROWS_AS(AppearanceMatchingLoss(pairs, std::vector<int>{1}, 1, 0.0),
                  InputError);
  CHECK_THROWS_AS(AppearanceMatchingLoss(pairs, std::vector<int>{1, 0}, 1),
                  InputError);
}

}  // namespace
}  // namespace panotrack::metrics
