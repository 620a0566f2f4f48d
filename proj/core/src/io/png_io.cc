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

#include "panotrack/io/png_io.h"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "panotrack/error.h"

namespace panotrack::io {
namespace {

struct FileCloser {
  std::FILE* file = nullptr;
  ~FileCloser() {
    if (file != nullptr) std::fclose(file);
  }
};

struct PngReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadState() {
    if (png != nullptr) png_destroy_read_struct(&png, &info, nullptr);
  }
};

struct PngWriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteState() {
    if (png != nullptr) png_destroy_write_struct(&png, &info);
  }
};

// libpng reports errors by longjmp back into the frame that called
// setjmp; from there we rethrow as a located InputError. Warnings are
// swallowed: a decodable file is either valid or rejected below.
void ThrowingError(png_structp png, png_const_charp message) {
  (void)message;
  longjmp(png_jmpbuf(png), 1);
}

void IgnoreWarning(png_structp, png_const_charp) {}

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> pixels;  // row-major, 3 bytes per pixel
};

RgbImage ReadRgbPng(const std::string& path) {
  FileCloser file;
  file.file = std::fopen(path.c_str(), "rb");
  if (file.file == nullptr) {
    throw InputError("cannot open " + path + " for reading");
  }

  unsigned char signature[8];
  if (std::fread(signature, 1, 8, file.file) != 8 ||
      png_sig_cmp(signature, 0, 8) != 0) {
    throw InputError(path + " is not a PNG file");
  }

  PngReadState state;
  state.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                     ThrowingError, IgnoreWarning);
  if (state.png == nullptr) {
    throw InternalError("png_create_read_struct failed");
  }
  state.info = png_create_info_struct(state.png);
  if (state.info == nullptr) {
    throw InternalError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(state.png))) {
    throw InputError("corrupt PNG data in " + path);
  }

  png_init_io(state.png, file.file);
  png_set_sig_bytes(state.png, 8);
  png_read_info(state.png, state.info);

  const png_uint_32 width = png_get_image_width(state.png, state.info);
  const png_uint_32 height = png_get_image_height(state.png, state.info);
  const int bit_depth = png_get_bit_depth(state.png, state.info);
  const int color_type = png_get_color_type(state.png, state.info);
  if (bit_depth != 8) {
    throw InputError(path + ": expected bit depth 8, got " +
                     std::to_string(bit_depth));
  }
  if (color_type != PNG_COLOR_TYPE_RGB) {
    throw InputError(path + ": expected a 3-channel RGB image");
  }
  if (width == 0 || height == 0 ||
      width > static_cast<png_uint_32>(std::numeric_limits<int>::max()) ||
      height > static_cast<png_uint_32>(std::numeric_limits<int>::max())) {
    throw InputError(path + ": unsupported image dimensions");
  }

  RgbImage image;
  image.width = static_cast<int>(width);
  image.height = static_cast<int>(height);
  image.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  for (png_uint_32 y = 0; y < height; ++y) {
    png_read_row(state.png,
                 image.pixels.data() +
                     static_cast<std::size_t>(y) * width * 3,
                 nullptr);
  }
  png_read_end(state.png, nullptr);
  return image;
}

}  // namespace

PanopticMap ReadPanopticPng(const std::string& path, const ClassTable& table) {
  const RgbImage image = ReadRgbPng(path);
  PanopticMap map(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::size_t p =
          (static_cast<std::size_t>(y) * image.width + x) * 3;
      map.SetPixel(x, y, image.pixels[p],
                   static_cast<std::uint16_t>(image.pixels[p + 1] * 256 +
                                              image.pixels[p + 2]));
    }
  }
  ValidatePanopticMap(map, table);
  return map;
}

SemanticMap ReadSemanticPng(const std::string& path, const ClassTable& table) {
  const RgbImage image = ReadRgbPng(path);
  SemanticMap map;
  map.width = image.width;
  map.height = image.height;
  map.classes.resize(static_cast<std::size_t>(image.width) * image.height);
  for (std::size_t i = 0; i < map.classes.size(); ++i) {
    const std::size_t p = i * 3;
    if (image.pixels[p + 1] != 0 || image.pixels[p + 2] != 0) {
      throw InputError(path + ": pixel " + std::to_string(i) +
                       " carries instance bits; semantic maps must have "
                       "G = B = 0");
    }
    const std::uint16_t class_id = image.pixels[p];
    if (!table.Contains(class_id)) {
      throw InputError(path + ": unknown class id " +
                       std::to_string(class_id) + " at pixel " +
                       std::to_string(i));
    }
    map.classes[i] = class_id;
  }
  return map;
}

void WritePanopticPng(const PanopticMap& map, const std::string& path) {
  const auto classes = map.class_data();
  for (std::size_t p = 0; p < classes.size(); ++p) {
    if (classes[p] > 255) {
      throw InputError("class id " + std::to_string(classes[p]) +
                       " at pixel " + std::to_string(p) +
                       " does not fit the 8-bit class channel");
    }
  }

  FileCloser file;
  file.file = std::fopen(path.c_str(), "wb");
  if (file.file == nullptr) {
    throw InputError("cannot open " + path + " for writing");
  }

  PngWriteState state;
  state.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                      ThrowingError, IgnoreWarning);
  if (state.png == nullptr) {
    throw InternalError("png_create_write_struct failed");
  }
  state.info = png_create_info_struct(state.png);
  if (state.info == nullptr) {
    throw InternalError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(state.png))) {
    throw InputError("failed to write PNG data to " + path);
  }

  png_init_io(state.png, file.file);
  png_set_IHDR(state.png, state.info, static_cast<png_uint_32>(map.width()),
               static_cast<png_uint_32>(map.height()), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(state.png, state.info);

  std::vector<png_byte> row(static_cast<std::size_t>(map.width()) * 3);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const std::uint16_t class_id = map.ClassAt(x, y);
      const std::uint16_t instance_id = map.InstanceAt(x, y);
      row[static_cast<std::size_t>(x) * 3] = static_cast<png_byte>(class_id);
      row[static_cast<std::size_t>(x) * 3 + 1] =
          static_cast<png_byte>(instance_id / 256);
      row[static_cast<std::size_t>(x) * 3 + 2] =
          static_cast<png_byte>(instance_id % 256);
    }
    png_write_row(state.png, row.data());
  }
  png_write_end(state.png, nullptr);
}

}  // namespace panotrack::io
