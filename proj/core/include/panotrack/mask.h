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

#ifndef PANOTRACK_MASK_H_
#define PANOTRACK_MASK_H_

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace panotrack {

// Binary instance mask stored as packed 64-bit words in row-major pixel
// order. Trailing bits past width*height are kept zero so whole masks
// compare and combine word-wise.
class BitMask {
 public:
  BitMask() = default;
  // All-background mask. Throws InputError unless width, height >= 1.
  BitMask(int width, int height);

  // Nonzero bytes become foreground. pixels.size() must be width*height.
  static BitMask FromPixels(int width, int height,
                            std::span<const std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::int64_t num_pixels() const {
    return static_cast<std::int64_t>(width_) * height_;
  }

  bool Get(int x, int y) const {
    const std::int64_t p = Index(x, y);
    return (words_[p >> 6] >> (p & 63)) & 1u;
  }
  void Set(int x, int y, bool value) {
    const std::int64_t p = Index(x, y);
    const std::uint64_t bit = std::uint64_t{1} << (p & 63);
    if (value) {
      words_[p >> 6] |= bit;
    } else {
      words_[p >> 6] &= ~bit;
    }
  }

  // Foreground pixel count.
  std::int64_t Area() const;
  bool Empty() const;

  std::span<const std::uint64_t> words() const { return words_; }

  // Calls fn(x, y) for every foreground pixel in row-major order.
  template <typename Fn>
  void ForEachForeground(Fn&& fn) const;

  bool operator==(const BitMask&) const = default;

 private:
  std::int64_t Index(int x, int y) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint64_t> words_;
};

// Real-valued mask with per-pixel values in [0, 1], row-major.
struct ProbMask {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  static ProbMask FromBitMask(const BitMask& mask);
};

// |a ∩ b| in pixels. Throws InputError on dimension mismatch.
std::int64_t IntersectionArea(const BitMask& a, const BitMask& b);
// |a ∪ b| in pixels.
std::int64_t UnionArea(const BitMask& a, const BitMask& b);

// |a ∩ b| / |a ∪ b|. Defined as 0 when both masks are empty.
double MaskIou(const BitMask& a, const BitMask& b);

// Σ min(a,b) / Σ max(a,b) over pixels. Equals MaskIou bit-exactly on
// {0,1}-valued inputs; 0 when both masks are all zero. Throws InputError on
// dimension mismatch or values outside [0, 1].
double SoftIou(const ProbMask& a, const ProbMask& b);
double SoftIou(const ProbMask& a, const BitMask& b);

// Shifts the foreground by (dx, dy); pixels leaving the frame are dropped.
BitMask TranslateMask(const BitMask& mask, int dx, int dy);

// `radius` passes of morphological erosion with the full 3x3 structuring
// element. Out-of-frame neighbors count as background.
BitMask ErodeMask(const BitMask& mask, int radius);

template <typename Fn>
void BitMask::ForEachForeground(Fn&& fn) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const int offset = std::countr_zero(bits);
      const std::int64_t p = static_cast<std::int64_t>(w) * 64 + offset;
      fn(static_cast<int>(p % width_), static_cast<int>(p / width_));
      bits &= bits - 1;
    }
  }
}

}  // namespace panotrack

#endif  // PANOTRACK_MASK_H_
