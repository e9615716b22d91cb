// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/foveate.hpp"

#include <algorithm>
#include <cmath>

#include "vafr/angles.hpp"
#include "vafr/error.hpp"
#include "vafr/parallel.hpp"

namespace vafr {

using detail::msg;

namespace {

// Payload value range: bytes live in 0..255, floats in 0..1.
template <typename T>
constexpr float kScale = 1.0f;
template <>
constexpr float kScale<std::uint8_t> = 255.0f;

template <typename T>
T pack(float value) {
    if constexpr (std::is_same_v<T, std::uint8_t>)
        return static_cast<std::uint8_t>(std::lround(std::clamp(value, 0.0f, 255.0f)));
    else
        return value;
}

void check_geom(const MappingContext &ctx, const LpGeometry &geom) {
    if (geom.width() != ctx.lp_width() || geom.height() != ctx.lp_height())
        throw ValidationError(msg("geometry ", geom.width(), "x", geom.height(),
                                  " does not match context buffer ", ctx.lp_width(), "x",
                                  ctx.lp_height()));
}

}  // namespace

void to_lp(const Image &src, const MappingContext &ctx, const LpGeometry &geom,
           LpPixels<std::uint8_t> &dst, int threads) {
    if (src.width != ctx.display_width() || src.height != ctx.display_height())
        throw ValidationError(msg("image ", src.width, "x", src.height,
                                  " does not match context display ", ctx.display_width(), "x",
                                  ctx.display_height()));
    check_geom(ctx, geom);
    if (dst.width() != geom.width() || dst.height() != geom.height())
        dst = LpPixels<std::uint8_t>(geom);

    const double gx = ctx.gaze_x(), gy = ctx.gaze_y();
    parallel_for(0, geom.width(), threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int u = static_cast<int>(lo); u < hi; ++u) {
            const double e = geom.column_ecc(u);
            const double l = ctx.shading_height(e);
            const double r = tan_deg(e) / ctx.cr();
            const int h = geom.column_height(u);
            for (int v = 0; v < h; ++v) {
                const double theta = 360.0 * (v + 0.5) / l;
                const double x = gx + r * cos_deg(theta);
                const double y = gy + r * sin_deg(theta);
                const auto s = sample_bilinear(src, x, y);
                std::uint8_t *t = dst.texel(u, v);
                for (int c = 0; c < 4; ++c) t[c] = pack<std::uint8_t>(s[c]);
            }
        }
    });
}

namespace {

template <typename T>
float luma(const T *texel) {
    return (0.299f * texel[0] + 0.587f * texel[1] + 0.114f * texel[2]) / kScale<T>;
}

}  // namespace

template <typename T>
void lp_antialias(const LpGeometry &geom, const LpPixels<T> &src, LpPixels<T> &dst,
                  int threads) {
    if (src.width() != geom.width() || src.height() != geom.height())
        throw ValidationError("lp_antialias: plane does not match geometry");
    if (&src == &dst) throw ValidationError("lp_antialias: cannot filter in place");
    if (dst.width() != geom.width() || dst.height() != geom.height()) dst = LpPixels<T>(geom);

    constexpr float kEdgeMin = 1.0f / 24.0f;   // absolute contrast floor
    constexpr float kEdgeRel = 1.0f / 8.0f;    // fraction of peak luma
    constexpr float kSubpixTrim = 1.0f / 4.0f;
    constexpr float kSubpixCap = 3.0f / 4.0f;

    const int w = geom.width();
    parallel_for(0, w, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int u = static_cast<int>(lo); u < hi; ++u) {
            const int h = geom.column_height(u);
            for (int v = 0; v < h; ++v) {
                // 3x3 neighborhood: angular wrap vertically, clamp into
                // the neighbor column's valid rows horizontally.
                const T *m = src.texel(u, v);
                const T *taps[3][3];
                for (int dc = -1; dc <= 1; ++dc) {
                    const int cu = std::clamp(u + dc, 0, w - 1);
                    const int hn = geom.column_height(cu);
                    if (hn == 0) {  // empty rim column: reuse center
                        taps[dc + 1][0] = taps[dc + 1][1] = taps[dc + 1][2] = m;
                        continue;
                    }
                    const int row = std::min(v, hn - 1);
                    taps[dc + 1][0] = src.texel(cu, (row - 1 + hn) % hn);
                    taps[dc + 1][1] = src.texel(cu, row);
                    taps[dc + 1][2] = src.texel(cu, (row + 1) % hn);
                }
                const float lm = luma(m);
                const float ln = luma(taps[1][0]);
                const float ls = luma(taps[1][2]);
                const float lw = luma(taps[0][1]);
                const float le = luma(taps[2][1]);
                const float lmax = std::max({lm, ln, ls, lw, le});
                const float lmin = std::min({lm, ln, ls, lw, le});
                const float range = lmax - lmin;
                T *out = dst.texel(u, v);
                if (range < std::max(kEdgeMin, lmax * kEdgeRel)) {
                    for (int c = 0; c < 4; ++c) out[c] = m[c];
                    continue;
                }
                // Straddle tap: half-blend toward the steepest of the
                // four axis neighbors, weighted by its share of the
                // local contrast.
                const float grads[4] = {std::fabs(ln - lm), std::fabs(ls - lm),
                                        std::fabs(lw - lm), std::fabs(le - lm)};
                const T *pair[4] = {taps[1][0], taps[1][2], taps[0][1], taps[2][1]};
                int steepest = 0;
                for (int i = 1; i < 4; ++i)
                    if (grads[i] > grads[steepest]) steepest = i;
                const float edge_blend = 0.5f * std::min(1.0f, grads[steepest] / range);
                // Subpixel tap: pull single-texel features toward the
                // 3x3 mean, capped.
                const float llp = 0.25f * (ln + ls + lw + le);
                float subpix = std::max(0.0f, std::fabs(llp - lm) / range - kSubpixTrim) /
                               (1.0f - kSubpixTrim);
                subpix = std::min(subpix, kSubpixCap);
                for (int c = 0; c < 4; ++c) {
                    float avg = 0.0f;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) avg += taps[i][j][c];
                    avg /= 9.0f;
                    const float edged = m[c] + edge_blend * (pair[steepest][c] - m[c]);
                    out[c] = pack<T>(edged + subpix * (avg - edged));
                }
            }
        }
    });
}

template void lp_antialias<std::uint8_t>(const LpGeometry &, const LpPixels<std::uint8_t> &,
                                         LpPixels<std::uint8_t> &, int);
template void lp_antialias<float>(const LpGeometry &, const LpPixels<float> &, LpPixels<float> &,
                                  int);

template <typename T>
std::array<float, 4> sample_lp(const LpGeometry &geom, const LpPixels<T> &lp, double u,
                               double v) {
    const int w = geom.width();
    const double fu = u - 0.5;
    int c0 = static_cast<int>(std::floor(fu));
    float tu = static_cast<float>(fu - c0);
    int c1 = c0 + 1;
    if (c0 < 0) {
        c0 = c1 = 0;
        tu = 0.0f;
    } else if (c1 > w - 1) {
        c0 = c1 = w - 1;
        tu = 0.0f;
    }

    auto column = [&](int cu, std::array<float, 4> &out) -> bool {
        const int h = geom.column_height(cu);
        if (h == 0) return false;
        double vv = std::fmod(v, static_cast<double>(h));
        if (vv < 0) vv += h;
        const double fv = vv - 0.5;
        int r0 = static_cast<int>(std::floor(fv));
        const float tv = static_cast<float>(fv - r0);
        const int r1 = (r0 + 1) % h;
        r0 = (r0 + h) % h;
        const T *a = lp.texel(cu, r0);
        const T *b = lp.texel(cu, r1);
        for (int c = 0; c < 4; ++c) out[c] = a[c] + tv * (b[c] - a[c]);
        return true;
    };

    std::array<float, 4> s0{}, s1{};
    const bool ok0 = column(c0, s0);
    const bool ok1 = c1 == c0 ? ok0 : column(c1, s1);
    if (c1 == c0 || !ok1) return ok0 ? s0 : std::array<float, 4>{};
    if (!ok0) return s1;
    std::array<float, 4> out;
    for (int c = 0; c < 4; ++c) out[c] = s0[c] + tu * (s1[c] - s0[c]);
    return out;
}

template std::array<float, 4> sample_lp<std::uint8_t>(const LpGeometry &,
                                                      const LpPixels<std::uint8_t> &, double,
                                                      double);
template std::array<float, 4> sample_lp<float>(const LpGeometry &, const LpPixels<float> &,
                                               double, double);

template <typename T>
Image from_lp(const LpPixels<T> &lp, const LpGeometry &geom, const MappingContext &ctx,
              const FoveationParams &params, const Image *source) {
    check_geom(ctx, geom);
    if (lp.width() != geom.width() || lp.height() != geom.height())
        throw ValidationError("from_lp: plane does not match geometry");
    if (params.outside == OutsidePolicy::PassthroughSource) {
        if (!source)
            throw ValidationError("from_lp: passthrough policy needs a source image");
        if (source->width != ctx.display_width() || source->height != ctx.display_height())
            throw ValidationError("from_lp: source size does not match the display");
    }

    const int W = ctx.display_width(), H = ctx.display_height();
    Image out(W, H, 3);
    const float to_byte = 255.0f / kScale<T>;
    const int rim = geom.width() - 1;
    const int rim_h = geom.column_height(rim);

    parallel_for(0, H, params.threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int y = static_cast<int>(lo); y < hi; ++y) {
            std::uint8_t *row = out.pixel(0, y);
            for (int x = 0; x < W; ++x) {
                const double px = x + 0.5, py = y + 0.5;
                std::array<float, 4> s{};
                if (auto p = ctx.forward(px, py)) {
                    s = sample_lp(geom, lp, p->u, p->v);
                } else {
                    switch (params.outside) {
                        case OutsidePolicy::ClampRing: {
                            double theta = rad2deg(
                                std::atan2(py - ctx.gaze_y(), px - ctx.gaze_x()));
                            if (theta < 0) theta += 360.0;
                            s = sample_lp(geom, lp, rim + 0.5, theta / 360.0 * rim_h);
                            break;
                        }
                        case OutsidePolicy::SolidColor:
                            for (int c = 0; c < 3; ++c)
                                row[x * 3 + c] = params.outside_color[c];
                            continue;
                        case OutsidePolicy::PassthroughSource: {
                            const std::uint8_t *sp = source->pixel(x, y);
                            for (int c = 0; c < 3; ++c)
                                row[x * 3 + c] = sp[std::min(c, source->channels - 1)];
                            continue;
                        }
                    }
                }
                for (int c = 0; c < 3; ++c)
                    row[x * 3 + c] = pack<std::uint8_t>(s[c] * to_byte);
            }
        }
    });
    return out;
}

template Image from_lp<std::uint8_t>(const LpPixels<std::uint8_t> &, const LpGeometry &,
                                     const MappingContext &, const FoveationParams &,
                                     const Image *);
template Image from_lp<float>(const LpPixels<float> &, const LpGeometry &,
                              const MappingContext &, const FoveationParams &, const Image *);

Image foveate(const Image &src, const MappingContext &ctx, const FoveationParams &params) {
    Foveator f(ctx);
    return f(src, params);
}

Foveator::Foveator(MappingContext ctx)
    : ctx_(std::move(ctx)), geom_(ctx_), front_(geom_), back_(geom_) {}

Image Foveator::operator()(const Image &src, const FoveationParams &params) {
    to_lp(src, ctx_, geom_, front_, params.threads);
    last_ = &front_;
    if (params.filter == LpFilter::Fxaa) {
        lp_antialias(geom_, front_, back_, params.threads);
        last_ = &back_;
    }
    return from_lp(*last_, geom_, ctx_, params, &src);
}

Image lp_debug_image(const LpGeometry &geom, const LpPixels<std::uint8_t> &lp) {
    if (lp.width() != geom.width() || lp.height() != geom.height())
        throw ValidationError("lp_debug_image: plane does not match geometry");
    Image out(geom.width(), geom.height(), 3);
    for (int u = 0; u < geom.width(); ++u) {
        const int h = geom.column_height(u);
        for (int v = 0; v < geom.height(); ++v) {
            std::uint8_t *p = out.pixel(u, v);
            if (v < h) {
                const std::uint8_t *t = lp.texel(u, v);
                p[0] = t[0];
                p[1] = t[1];
                p[2] = t[2];
            } else {
                p[0] = 255;
                p[1] = 0;
                p[2] = 255;
            }
        }
    }
    return out;
}

}  // namespace vafr
