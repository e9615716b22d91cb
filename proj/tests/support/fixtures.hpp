// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

// Deterministic test images and image metrics shared by the unit and
// acceptance suites.  Everything is seeded or closed-form; no binary
// fixtures are checked in.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "vafr/angles.hpp"
#include "vafr/image.hpp"
#include "vafr/raycast.hpp"

namespace vafr::testing {

// Two spheres over a ground quad, one point light from the upper
// right.  The big sphere subtends ~19.5 deg around the optical axis,
// so it fully covers the foveal region of every camera used in tests.
inline Scene simple_scene() {
    Scene scene;
    scene.background = {0.05, 0.07, 0.10};
    Sphere big;
    big.center = {0, 0, -6};
    big.radius = 2.0;
    big.material.albedo = {0.80, 0.30, 0.20};
    big.material.specular = {0.35, 0.35, 0.35};
    big.material.shininess = 64.0;
    scene.spheres.push_back(big);
    Sphere small;
    small.center = {2.5, 1.5, -4};
    small.radius = 0.5;
    small.material.albedo = {0.20, 0.60, 0.90};
    scene.spheres.push_back(small);
    const Vec3 g0{-50, -2.5, 40}, g1{50, -2.5, 40}, g2{50, -2.5, -60}, g3{-50, -2.5, -60};
    Material ground;
    ground.albedo = {0.55, 0.55, 0.50};
    scene.triangles.push_back({g0, g1, g2, ground});
    scene.triangles.push_back({g0, g2, g3, ground});
    scene.point_lights.push_back({{4, 5, -2}, {1.0, 1.0, 1.0}});
    return scene;
}

inline Camera simple_camera(int width = 1920, int height = 1080) {
    return Camera({0, 0, 0}, {0, 0, -1}, {0, 1, 0}, 1.0, 1.0, width, height);
}

inline Image constant_image(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    Image img(w, h, 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            auto *p = img.pixel(x, y);
            p[0] = r;
            p[1] = g;
            p[2] = b;
        }
    return img;
}

inline Image gradient_image(int w, int h) {
    Image img(w, h, 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            auto *p = img.pixel(x, y);
            p[0] = static_cast<std::uint8_t>(std::lround(255.0 * x / (w - 1)));
            p[1] = static_cast<std::uint8_t>(std::lround(255.0 * y / (h - 1)));
            p[2] = 128;
        }
    return img;
}

inline Image noise_image(int w, int h, std::uint32_t seed) {
    Image img(w, h, 3);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(0, 255);
    for (auto &p : img.pixels) p = static_cast<std::uint8_t>(d(rng));
    return img;
}

// Smooth "photograph" stand-in: low-frequency sinusoids plus a few
// gaussian blobs, closed form per pixel.
inline Image synthetic_photo(int w, int h) {
    Image img(w, h, 3);
    const double blobs[][4] = {
        // cx, cy (fractions), sigma (px), gain
        {0.50, 0.50, 0.06, 90.0},
        {0.30, 0.62, 0.10, -70.0},
        {0.72, 0.35, 0.08, 60.0},
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double nx = static_cast<double>(x) / w;
            const double ny = static_cast<double>(y) / h;
            double base = 120.0 + 60.0 * std::sin(2.0 * kPi * (2.0 * nx + 0.7 * ny)) +
                          35.0 * std::sin(2.0 * kPi * (0.6 * nx - 1.8 * ny));
            double tint = 25.0 * std::sin(2.0 * kPi * (1.1 * nx * ny + 0.3));
            for (const auto &bl : blobs) {
                const double dx = (nx - bl[0]) * w, dy = (ny - bl[1]) * h;
                const double s = bl[2] * h;
                base += bl[3] * std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
            }
            auto *p = img.pixel(x, y);
            auto q = [](double v) {
                return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            };
            p[0] = q(base + tint);
            p[1] = q(base);
            p[2] = q(base - tint + 10.0);
        }
    return img;
}

// PSNR in dB over pixels within `radius` of (cx, cy); all channels.
inline double psnr_disk(const Image &a, const Image &b, double cx, double cy, double radius) {
    double se = 0.0;
    std::int64_t n = 0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
            if (dx * dx + dy * dy > radius * radius) continue;
            for (int c = 0; c < 3; ++c) {
                const double d = static_cast<double>(a.pixel(x, y)[c]) - b.pixel(x, y)[c];
                se += d * d;
            }
            ++n;
        }
    if (n == 0) return 0.0;
    const double mse = se / (3.0 * n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

// Mean absolute difference over the same disk.
inline double mae_disk(const Image &a, const Image &b, double cx, double cy, double radius) {
    double sum = 0.0;
    std::int64_t n = 0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
            if (dx * dx + dy * dy > radius * radius) continue;
            for (int c = 0; c < 3; ++c)
                sum += std::abs(static_cast<double>(a.pixel(x, y)[c]) - b.pixel(x, y)[c]);
            n += 3;
        }
    return n ? sum / n : 0.0;
}

// Mean squared 4-neighbour Laplacian of the gray channel over an
// annulus centred on (cx, cy): a proxy for how much high-frequency
// detail survives at that eccentricity band.
inline double laplacian_energy_ring(const Image &img, double cx, double cy, double r0,
                                    double r1) {
    auto gray = [&](int x, int y) {
        const auto *p = img.pixel(x, y);
        return 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    };
    double sum = 0.0;
    std::int64_t n = 0;
    for (int y = 1; y + 1 < img.height; ++y)
        for (int x = 1; x + 1 < img.width; ++x) {
            const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
            const double r2 = dx * dx + dy * dy;
            if (r2 < r0 * r0 || r2 >= r1 * r1) continue;
            const double lap = gray(x - 1, y) + gray(x + 1, y) + gray(x, y - 1) +
                               gray(x, y + 1) - 4.0 * gray(x, y);
            sum += lap * lap;
            ++n;
        }
    return n ? sum / n : 0.0;
}

}  // namespace vafr::testing
