// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "vafr/mapping.hpp"

namespace vafr {

// Valid-region bookkeeping for a constant-size log-polar buffer.  The
// buffer is a full lp_width x lp_height rectangle, but only rows
// [0, column_height(u)) of column u fall inside the semi-elliptical
// shading region; the rest is never shaded or sampled.
class LpGeometry {
  public:
    explicit LpGeometry(const MappingContext &ctx);

    int width() const { return width_; }
    int height() const { return height_; }
    // Ring height at the column center, rounded half to even.
    int column_height(int u) const { return heights_[u]; }
    std::span<const int> column_heights() const { return heights_; }
    // Eccentricity at the column center (clamped to u_max for the
    // final partial column), degrees.
    double column_ecc(int u) const { return eccs_[u]; }
    std::uint64_t valid_count() const { return valid_; }
    double fill_ratio() const;
    bool is_valid(int u, int v) const {
        return u >= 0 && u < width_ && v >= 0 && v < heights_[u];
    }

    // {"lp_width", "lp_height", "valid_count", "fill_ratio",
    //  "rays_per_eye"} -- rays_per_eye equals valid_count: the shading
    // cost is one ray per valid texel regardless of display size.
    nlohmann::json stats_json() const;

  private:
    int width_ = 0, height_ = 0;
    std::vector<int> heights_;
    std::vector<double> eccs_;
    std::uint64_t valid_ = 0;
};

// Payload plane: RGBA, column-major so a column (one ring) is
// contiguous.  T is uint8_t for the image pipeline, float for the
// ray-casting pipeline.
template <typename T>
class LpPixels {
  public:
    LpPixels() = default;
    explicit LpPixels(const LpGeometry &g) : width_(g.width()), height_(g.height()) {
        data_.assign(static_cast<size_t>(width_) * height_ * 4, T{});
    }

    int width() const { return width_; }
    int height() const { return height_; }
    T *texel(int u, int v) { return data_.data() + (static_cast<size_t>(u) * height_ + v) * 4; }
    const T *texel(int u, int v) const {
        return data_.data() + (static_cast<size_t>(u) * height_ + v) * 4;
    }
    std::span<T> raw() { return data_; }
    std::span<const T> raw() const { return data_; }
    void clear() { std::fill(data_.begin(), data_.end(), T{}); }

  private:
    int width_ = 0, height_ = 0;
    std::vector<T> data_;
};

}  // namespace vafr
