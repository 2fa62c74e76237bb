// Copyright 2026 The Panoground Authors. All Rights Reserved.
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

#include "panoground/png_io.h"

#include <png.h>

#include <cstdio>
#include <memory>

#include "panoground/errors.h"

namespace panoground {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr OpenOrThrow(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path);
  return f;
}

[[noreturn]] void OnPngError(png_structp png, png_const_charp message) {
  auto* path = static_cast<const std::string*>(png_get_error_ptr(png));
  throw IoError("png error in " + *path + ": " + message);
}

void OnPngWarning(png_structp, png_const_charp) {}

class ReadSession {
 public:
  explicit ReadSession(const std::string& path)
      : path_(path), file_(OpenOrThrow(path, "rb")) {
    png_byte sig[8];
    if (std::fread(sig, 1, 8, file_.get()) != 8 || png_sig_cmp(sig, 0, 8)) {
      throw IoError(path + " is not a PNG file");
    }
    png_ = png_create_read_struct(PNG_LIBPNG_VER_STRING,
                                  const_cast<std::string*>(&path_), OnPngError,
                                  OnPngWarning);
    info_ = png_create_info_struct(png_);
    png_init_io(png_, file_.get());
    png_set_sig_bytes(png_, 8);
    png_read_info(png_, info_);
  }
  ~ReadSession() { png_destroy_read_struct(&png_, &info_, nullptr); }
  ReadSession(const ReadSession&) = delete;
  ReadSession& operator=(const ReadSession&) = delete;

  png_structp png() { return png_; }
  png_infop info() { return info_; }

 private:
  std::string path_;
  FilePtr file_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

}  // namespace

RgbImage ReadPng(const std::string& path) {
  ReadSession s(path);
  png_structp png = s.png();
  png_infop info = s.info();
  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);

  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  if (png_get_rowbytes(png, info) != size_t(width) * 3) {
    throw IoError("unsupported PNG layout in " + path);
  }

  RgbImage image(width, height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = image.at(0, y);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  return image;
}

std::pair<int, int> ReadPngSize(const std::string& path) {
  ReadSession s(path);
  return {static_cast<int>(png_get_image_width(s.png(), s.info())),
          static_cast<int>(png_get_image_height(s.png(), s.info()))};
}

void WritePng(const std::string& path, const RgbImage& image) {
  FilePtr file = OpenOrThrow(path, "wb");
  std::string path_copy = path;
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, &path_copy, OnPngError, OnPngWarning);
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_write_struct(png, info); }
  } guard{&png, &info};

  png_init_io(png, file.get());
  png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < image.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(image.at(0, y)));
  }
  png_write_end(png, nullptr);
}

}  // namespace panoground
