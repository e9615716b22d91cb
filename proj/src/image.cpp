// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include <png.h>

#include "vafr/error.hpp"

namespace vafr {

using detail::msg;

Image::Image(int w, int h, int ch) : width(w), height(h), channels(ch) {
    if (w < 1 || h < 1 || (ch != 1 && ch != 3 && ch != 4))
        throw ValidationError(msg("bad image shape ", w, "x", h, "x", ch));
    pixels.assign(static_cast<size_t>(w) * h * ch, 0);
}

namespace {

struct FileCloser {
    void operator()(std::FILE *f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool has_suffix(const std::string &s, const char *suffix) {
    const size_t n = std::string(suffix).size();
    if (s.size() < n) return false;
    std::string tail = s.substr(s.size() - n);
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return tail == suffix;
}

Image load_png(const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError(msg("cannot open ", path));
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(msg("failed to decode ", path));
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    // Normalize to 8-bit gray/RGB/RGBA.
    png_set_expand(png);
    if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    int ch = static_cast<int>(png_get_channels(png, info));
    if (ch == 2) {  // gray + alpha: widen to RGBA
        png_set_gray_to_rgb(png);
        png_read_update_info(png, info);
        ch = static_cast<int>(png_get_channels(png, info));
    }
    if (ch != 1 && ch != 3 && ch != 4) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(msg(path, ": unsupported channel count ", ch));
    }
    Image img(w, h, ch);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) rows[y] = img.pixel(0, y);
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void save_png(const Image &img, const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError(msg("cannot write ", path));
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(msg("failed to encode ", path));
    }
    png_init_io(png, fp.get());
    const int type = img.channels == 1   ? PNG_COLOR_TYPE_GRAY
                     : img.channels == 3 ? PNG_COLOR_TYPE_RGB
                                         : PNG_COLOR_TYPE_RGBA;
    png_set_IHDR(png, info, img.width, img.height, 8, type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = const_cast<png_bytep>(img.pixel(0, y));
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

int read_pnm_int(std::FILE *f) {
    int c = std::fgetc(f);
    while (c == '#' || std::isspace(c)) {
        if (c == '#')
            while (c != '\n' && c != EOF) c = std::fgetc(f);
        c = std::fgetc(f);
    }
    int value = 0;
    bool any = false;
    while (std::isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = std::fgetc(f);
    }
    if (!any) throw IoError("malformed PNM header");
    return value;
}

Image load_pnm(const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError(msg("cannot open ", path));
    const int p = std::fgetc(fp.get());
    const int kind = std::fgetc(fp.get());
    if (p != 'P' || (kind != '5' && kind != '6'))
        throw IoError(msg(path, ": only binary P5/P6 PNM supported"));
    const int w = read_pnm_int(fp.get());
    const int h = read_pnm_int(fp.get());
    const int maxval = read_pnm_int(fp.get());
    if (maxval != 255) throw IoError(msg(path, ": only maxval 255 supported"));
    Image img(w, h, kind == '6' ? 3 : 1);
    if (std::fread(img.pixels.data(), 1, img.pixels.size(), fp.get()) != img.pixels.size())
        throw IoError(msg(path, ": truncated pixel data"));
    return img;
}

void save_pnm(const Image &img, const std::string &path) {
    if (img.channels == 4)
        throw IoError("PNM cannot store an alpha channel; use .png");
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError(msg("cannot write ", path));
    std::fprintf(fp.get(), "P%c\n%d %d\n255\n", img.channels == 3 ? '6' : '5', img.width,
                 img.height);
    if (std::fwrite(img.pixels.data(), 1, img.pixels.size(), fp.get()) != img.pixels.size())
        throw IoError(msg("short write to ", path));
}

}  // namespace

Image load_image(const std::string &path) {
    if (has_suffix(path, ".png")) return load_png(path);
    if (has_suffix(path, ".ppm") || has_suffix(path, ".pgm")) return load_pnm(path);
    throw IoError(msg(path, ": unknown image format (expected .png, .ppm or .pgm)"));
}

void save_image(const Image &img, const std::string &path) {
    if (img.width == 0) throw ValidationError("refusing to save an empty image");
    if (has_suffix(path, ".png")) return save_png(img, path);
    if (has_suffix(path, ".ppm") || has_suffix(path, ".pgm")) return save_pnm(img, path);
    throw IoError(msg(path, ": unknown image format (expected .png, .ppm or .pgm)"));
}

std::array<float, 4> sample_bilinear(const Image &img, double x, double y) {
    const double fx = x - 0.5;
    const double fy = y - 0.5;
    int x0 = static_cast<int>(std::floor(fx));
    int y0 = static_cast<int>(std::floor(fy));
    const float tx = static_cast<float>(fx - x0);
    const float ty = static_cast<float>(fy - y0);
    const int x1 = std::clamp(x0 + 1, 0, img.width - 1);
    const int y1 = std::clamp(y0 + 1, 0, img.height - 1);
    x0 = std::clamp(x0, 0, img.width - 1);
    y0 = std::clamp(y0, 0, img.height - 1);

    auto fetch = [&](int px, int py, int c) -> float {
        const std::uint8_t *p = img.pixel(px, py);
        if (c < img.channels) return p[c];
        if (c == 3) return 255.0f;  // implied opaque alpha
        return p[0];                // gray replicated to RGB
    };
    std::array<float, 4> out;
    for (int c = 0; c < 4; ++c) {
        const float top = fetch(x0, y0, c) + tx * (fetch(x1, y0, c) - fetch(x0, y0, c));
        const float bot = fetch(x0, y1, c) + tx * (fetch(x1, y1, c) - fetch(x0, y1, c));
        out[c] = top + ty * (bot - top);
    }
    return out;
}

}  // namespace vafr
