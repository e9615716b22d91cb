// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace vafr {

// Plain interleaved 8-bit raster, 1/3/4 channels, row-major, origin at
// the top-left, pixel centers at integer + 0.5.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h, int ch);

    std::uint8_t *pixel(int x, int y) {
        return pixels.data() + (static_cast<size_t>(y) * width + x) * channels;
    }
    const std::uint8_t *pixel(int x, int y) const {
        return pixels.data() + (static_cast<size_t>(y) * width + x) * channels;
    }
};

// Format picked from the extension: .png or .ppm (binary P6; .pgm P5
// reads as single channel).  IoError on anything unreadable.
Image load_image(const std::string &path);
void save_image(const Image &img, const std::string &path);

// Bilinear fetch at (x, y) in pixel units with border clamp.  Missing
// channels read as opaque alpha / replicated gray.
std::array<float, 4> sample_bilinear(const Image &img, double x, double y);

}  // namespace vafr
