// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "vafr/image.hpp"
#include "vafr/lpbuffer.hpp"
#include "vafr/mapping.hpp"

namespace vafr {

// What to emit for display pixels at or beyond e_max from gaze.
enum class OutsidePolicy {
    ClampRing,          // stretch the outermost ring
    SolidColor,         // flat fill
    PassthroughSource,  // copy the original pixel (needs a source image)
};

enum class LpFilter {
    None,
    Fxaa,  // luminance-adaptive 3x3 blend in log-polar space
};

struct FoveationParams {
    LpFilter filter = LpFilter::None;
    OutsidePolicy outside = OutsidePolicy::ClampRing;
    std::array<std::uint8_t, 4> outside_color{0, 0, 0, 255};
    int threads = 0;  // 0: hardware concurrency
};

// Resamples a display image into the valid region of the log-polar
// plane.  Texel (u, v) reads the source bilinearly at the inverse-map
// of its center.  src dimensions must match the context display.
void to_lp(const Image &src, const MappingContext &ctx, const LpGeometry &geom,
           LpPixels<std::uint8_t> &dst, int threads = 0);

// FXAA-flavored filter applied inside the valid region: texels whose
// 3x3 luma contrast crosses the edge threshold are half-blended toward
// their steepest axis neighbor (edge straddle), then pulled toward the
// 3x3 mean for sub-texel features, capped at 3/4.  Every output is a
// convex combination of the 3x3 neighborhood, with vertical (angular)
// wrap inside each column and horizontal clamp at column boundaries.
// T is uint8_t (values 0..255) or float (values 0..1).
template <typename T>
void lp_antialias(const LpGeometry &geom, const LpPixels<T> &src, LpPixels<T> &dst,
                  int threads = 0);

// Bilinear fetch from the log-polar plane at continuous (u, v): u is
// clamped to the column range, v wraps modulo each column's height.
template <typename T>
std::array<float, 4> sample_lp(const LpGeometry &geom, const LpPixels<T> &lp, double u, double v);

// Expands the log-polar plane back to a full display image (RGB).
// For the float payload, values are clamped to [0, 1] and quantized
// once, here.  source backs OutsidePolicy::PassthroughSource.
template <typename T>
Image from_lp(const LpPixels<T> &lp, const LpGeometry &geom, const MappingContext &ctx,
              const FoveationParams &params = {}, const Image *source = nullptr);

// to_lp -> optional lp_antialias -> from_lp in one call.
Image foveate(const Image &src, const MappingContext &ctx, const FoveationParams &params = {});

// Same pipeline with the geometry and both LP planes allocated once
// and reused across frames.
class Foveator {
  public:
    explicit Foveator(MappingContext ctx);
    const MappingContext &context() const { return ctx_; }
    const LpGeometry &geometry() const { return geom_; }
    Image operator()(const Image &src, const FoveationParams &params = {});
    // LP plane as shaded by the last call (after filtering).
    const LpPixels<std::uint8_t> &lp() const { return *last_; }

  private:
    MappingContext ctx_;
    LpGeometry geom_;
    LpPixels<std::uint8_t> front_, back_;
    const LpPixels<std::uint8_t> *last_ = &front_;
};

// Valid texels as RGB, invalid region flooded magenta.
Image lp_debug_image(const LpGeometry &geom, const LpPixels<std::uint8_t> &lp);

}  // namespace vafr
