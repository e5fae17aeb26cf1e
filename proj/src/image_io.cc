/* Copyright 2026 The silrender Authors.

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.*/

#include "silrender/image_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

#include "silrender/io.h"

#ifdef SILRENDER_HAVE_PNG
#include <png.h>
#endif

namespace silrender {
namespace {

std::uint8_t ToByte(double unit) {
  return static_cast<std::uint8_t>(
      std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
}

double Normalized(const SilhouetteImage& image, double v) {
  return (v - image.p0) / (image.p1 - image.p0);
}

#ifdef SILRENDER_HAVE_PNG
void AppendBytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

void FlushNothing(png_structp) {}
#endif

// channels: 1 (gray) or 3 (RGB); pixels row-major.
std::string EncodePng(const std::vector<std::uint8_t>& pixels, int height,
                      int width, int channels) {
#ifdef SILRENDER_HAVE_PNG
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: cannot create info struct");
  }
  std::string out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png: encoding failed");
  }
  png_set_write_fn(png, &out, AppendBytes, FlushNothing);
  png_set_IHDR(png, info, width, height, 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < height; ++r) {
    png_write_row(png, const_cast<png_bytep>(pixels.data() +
                                             static_cast<std::size_t>(r) *
                                                 width * channels));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
#else
  (void)pixels;
  (void)height;
  (void)width;
  (void)channels;
  throw std::runtime_error("built without PNG support");
#endif
}

}  // namespace

std::string EncodePgm(const SilhouetteImage& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.reserve(out.size() + image.size());
  for (double v : image.data) {
    out.push_back(static_cast<char>(ToByte(Normalized(image, v))));
  }
  return out;
}

void WritePgm(const SilhouetteImage& image, const std::filesystem::path& path) {
  WriteFileAtomic(path, EncodePgm(image));
}

std::string EncodeRawFloat32(std::span<const double> values) {
  std::string out(values.size() * 4, '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(static_cast<float>(values[i]));
    if constexpr (std::endian::native == std::endian::big) {
      bits = ((bits & 0xffu) << 24) | ((bits & 0xff00u) << 8) |
             ((bits >> 8) & 0xff00u) | (bits >> 24);
    }
    std::memcpy(out.data() + 4 * i, &bits, 4);
  }
  return out;
}

void WriteRawFloat32(std::span<const double> values,
                     const std::filesystem::path& path) {
  WriteFileAtomic(path, EncodeRawFloat32(values));
}

std::vector<float> ReadRawFloat32(const std::filesystem::path& path,
                                  std::size_t expected_count) {
  const std::string bytes = ReadFile(path);
  if (bytes.size() != 4 * expected_count) {
    throw std::runtime_error(path.string() + ": expected " +
                             std::to_string(4 * expected_count) +
                             " bytes, found " + std::to_string(bytes.size()));
  }
  std::vector<float> out(expected_count);
  for (std::size_t i = 0; i < expected_count; ++i) {
    std::uint32_t bits;
    std::memcpy(&bits, bytes.data() + 4 * i, 4);
    if constexpr (std::endian::native == std::endian::big) {
      bits = ((bits & 0xffu) << 24) | ((bits & 0xff00u) << 8) |
             ((bits >> 8) & 0xff00u) | (bits >> 24);
    }
    out[i] = std::bit_cast<float>(bits);
  }
  return out;
}

bool PngSupported() {
#ifdef SILRENDER_HAVE_PNG
  return true;
#else
  return false;
#endif
}

void WriteSilhouettePng(const SilhouetteImage& image,
                        const std::filesystem::path& path) {
  std::vector<std::uint8_t> px(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    px[i] = ToByte(Normalized(image, image.data[i]));
  }
  WriteFileAtomic(path, EncodePng(px, image.height, image.width, 1));
}

void WriteGradientPng(std::span<const double> values, int height, int width,
                      const std::filesystem::path& path) {
  if (values.size() != static_cast<std::size_t>(height) * width) {
    throw std::invalid_argument("gradient image size mismatch");
  }
  double range = 0.0;
  for (double v : values) range = std::max(range, std::abs(v));
  std::vector<std::uint8_t> px(3 * values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double s = range > 0.0 ? values[i] / range : 0.0;
    const std::uint8_t fade = ToByte(1.0 - std::abs(s));
    std::uint8_t* p = &px[3 * i];
    if (s >= 0.0) {
      p[0] = 255;
      p[1] = fade;
      p[2] = fade;
    } else {
      p[0] = fade;
      p[1] = fade;
      p[2] = 255;
    }
  }
  WriteFileAtomic(path, EncodePng(px, height, width, 3));
}

void WriteOverlayPng(const SilhouetteImage& target,
                     const SilhouetteImage& render,
                     const std::filesystem::path& path) {
  if (target.height != render.height || target.width != render.width) {
    throw std::invalid_argument("overlay size mismatch");
  }
  std::vector<std::uint8_t> px(3 * target.size(), 0);
  for (std::size_t i = 0; i < target.size(); ++i) {
    px[3 * i] = ToByte(Normalized(target, target.data[i]));
    px[3 * i + 1] = ToByte(Normalized(render, render.data[i]));
  }
  WriteFileAtomic(path, EncodePng(px, target.height, target.width, 3));
}

}  // namespace silrender
