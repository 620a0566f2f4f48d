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

#include "panotrack/mask.h"

#include <algorithm>
#include <bit>
#include <string>

#include "panotrack/error.h"

namespace panotrack {
namespace {

void RequireSameDims(int aw, int ah, int bw, int bh) {
  if (aw != bw || ah != bh) {
    throw InputError("mask dimension mismatch: " + std::to_string(aw) + "x" +
                     std::to_string(ah) + " vs " + std::to_string(bw) + "x" +
                     std::to_string(bh));
  }
}

}  // namespace

BitMask::BitMask(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw InputError("mask dimensions must be >= 1, got " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
  words_.assign((num_pixels() + 63) / 64, 0);
}

BitMask BitMask::FromPixels(int width, int height,
                            std::span<const std::uint8_t> pixels) {
  BitMask mask(width, height);
  if (static_cast<std::int64_t>(pixels.size()) != mask.num_pixels()) {
    throw InputError("mask pixel buffer size mismatch");
  }
  for (std::int64_t p = 0; p < mask.num_pixels(); ++p) {
    if (pixels[p] != 0) {
      mask.words_[p >> 6] |= std::uint64_t{1} << (p & 63);
    }
  }
  return mask;
}

std::int64_t BitMask::Index(int x, int y) const {
  PT_CHECK(x >= 0 && x < width_ && y >= 0 && y < height_);
  return static_cast<std::int64_t>(y) * width_ + x;
}

std::int64_t BitMask::Area() const {
  std::int64_t area = 0;
  for (const std::uint64_t word : words_) {
    area += std::popcount(word);
  }
  return area;
}

bool BitMask::Empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

ProbMask ProbMask::FromBitMask(const BitMask& mask) {
  ProbMask prob;
  prob.width = mask.width();
  prob.height = mask.height();
  prob.values.assign(mask.num_pixels(), 0.0);
  mask.ForEachForeground([&](int x, int y) {
    prob.values[static_cast<std::int64_t>(y) * prob.width + x] = 1.0;
  });
  return prob;
}

std::int64_t IntersectionArea(const BitMask& a, const BitMask& b) {
  RequireSameDims(a.width(), a.height(), b.width(), b.height());
  std::int64_t area = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    area += std::popcount(wa[i] & wb[i]);
  }
  return area;
}

std::int64_t UnionArea(const BitMask& a, const BitMask& b) {
  RequireSameDims(a.width(), a.height(), b.width(), b.height());
  std::int64_t area = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    area += std::popcount(wa[i] | wb[i]);
  }
  return area;
}

double MaskIou(const BitMask& a, const BitMask& b) {
  const std::int64_t inter = IntersectionArea(a, b);
  const std::int64_t uni = a.Area() + b.Area() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double SoftIou(const ProbMask& a, const ProbMask& b) {
  RequireSameDims(a.width, a.height, b.width, b.height);
  double min_sum = 0.0;
  double max_sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double va = a.values[i];
    const double vb = b.values[i];
    if (va < 0.0 || va > 1.0 || vb < 0.0 || vb > 1.0) {
      throw InputError("soft iou: mask value outside [0, 1] at pixel " +
                       std::to_string(i));
    }
    min_sum += std::min(va, vb);
    max_sum += std::max(va, vb);
  }
  if (max_sum == 0.0) return 0.0;
  return min_sum / max_sum;
}

double SoftIou(const ProbMask& a, const BitMask& b) {
  return SoftIou(a, ProbMask::FromBitMask(b));
}

BitMask TranslateMask(const BitMask& mask, int dx, int dy) {
  BitMask out(mask.width(), mask.height());
  mask.ForEachForeground([&](int x, int y) {
    const int nx = x + dx;
    const int ny = y + dy;
    if (nx >= 0 && nx < out.width() && ny >= 0 && ny < out.height()) {
      out.Set(nx, ny, true);
    }
  });
  return out;
}

BitMask ErodeMask(const BitMask& mask, int radius) {
  if (radius < 0) {
    throw InputError("erosion radius must be >= 0");
  }
  BitMask current = mask;
  for (int pass = 0; pass < radius; ++pass) {
    if (current.Empty()) break;
    BitMask next(current.width(), current.height());
    current.ForEachForeground([&](int x, int y) {
      for (int ny = y - 1; ny <= y + 1; ++ny) {
        for (int nx = x - 1; nx <= x + 1; ++nx) {
          if (nx < 0 || nx >= current.width() || ny < 0 ||
              ny >= current.height() || !current.Get(nx, ny)) {
            return;
          }
        }
      }
      next.Set(x, y, true);
    });
    current = std::move(next);
  }
  return current;
}

}  // namespace panotrack
