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

// Image and trace serialization. Every writer is atomic.

#ifndef SILRENDER_IMAGE_IO_H_
#define SILRENDER_IMAGE_IO_H_

#include <filesystem>
#include <span>
#include <string>

#include "silrender/raster_forward.h"

namespace silrender {

// Binary PGM (P5, maxval 255); values are mapped from [p0, p1] to [0, 255]
// and rounded.
std::string EncodePgm(const SilhouetteImage& image);
void WritePgm(const SilhouetteImage& image, const std::filesystem::path& path);

// Little-endian float32, row-major, no header.
std::string EncodeRawFloat32(std::span<const double> values);
void WriteRawFloat32(std::span<const double> values,
                     const std::filesystem::path& path);
std::vector<float> ReadRawFloat32(const std::filesystem::path& path,
                                  std::size_t expected_count);

bool PngSupported();

// Grayscale PNG of the silhouette. Throws std::runtime_error when PNG
// support was not compiled in.
void WriteSilhouettePng(const SilhouetteImage& image,
                        const std::filesystem::path& path);

// Signed values on a symmetric blue (negative) to white to red (positive)
// scale; an all-zero image is white.
void WriteGradientPng(std::span<const double> values, int height, int width,
                      const std::filesystem::path& path);

// Target in the red channel, render in the green channel.
void WriteOverlayPng(const SilhouetteImage& target,
                     const SilhouetteImage& render,
                     const std::filesystem::path& path);

}  // namespace silrender

#endif  // SILRENDER_IMAGE_IO_H_
