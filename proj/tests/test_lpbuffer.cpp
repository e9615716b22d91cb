// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/lpbuffer.hpp"

#include <doctest.h>

#include "vafr/error.hpp"

using namespace vafr;

namespace {

MappingContext ctx_1080(DeltaSpec delta = DeltaSpec::constant(1.0)) {
    return MappingContext(AcuityModel::default_model(), 1.0 / 1080.0, 1920, 1080, 960, 540,
                          std::move(delta));
}

}  // namespace

TEST_SUITE_BEGIN("lpbuffer");

// [DERIVED] Per-column ring heights for the default model, frozen from
// an independent reimplementation (tests/oracles/buffer_geometry_oracle.py).
TEST_CASE("geometry of the default model") {
    LpGeometry g(ctx_1080());
    CHECK(g.width() == 901);
    CHECK(g.height() == 1638);
    const int head[] = {3, 9, 16, 22, 28, 34};
    for (int u = 0; u < 6; ++u) CHECK(g.column_height(u) == head[u]);
    CHECK(g.column_height(900) == 1247);
    CHECK(g.column_height(899) == 1250);
    CHECK(g.valid_count() == 1062877u);
    CHECK(g.fill_ratio() == doctest::Approx(0.7201854133041702).epsilon(1e-12));
}

TEST_CASE("column heights are unimodal for the default model") {
    LpGeometry g(ctx_1080());
    int peak = 0;
    for (int u = 1; u < g.width(); ++u)
        if (g.column_height(u) > g.column_height(peak)) peak = u;
    for (int u = 1; u <= peak; ++u) CHECK(g.column_height(u) >= g.column_height(u - 1));
    for (int u = peak + 1; u < g.width(); ++u)
        CHECK(g.column_height(u) <= g.column_height(u - 1));
    CHECK(g.column_height(peak) == 1638);
}

TEST_CASE("column eccentricities are monotone and end at the rim") {
    LpGeometry g(ctx_1080());
    CHECK(g.column_ecc(0) > 0.0);
    for (int u = 1; u < g.width(); ++u) CHECK(g.column_ecc(u) > g.column_ecc(u - 1));
    CHECK(g.column_ecc(900) == 60.0);  // final partial column clamps to u_max
}

TEST_CASE("halving Delta roughly halves the footprint") {
    LpGeometry g(ctx_1080(DeltaSpec::constant(0.5)));
    CHECK(g.width() == 901);
    CHECK(g.height() == 819);
    CHECK(g.valid_count() == 531432u);
}

TEST_CASE("validity predicate tracks the column profile") {
    LpGeometry g(ctx_1080());
    CHECK(g.is_valid(0, 0));
    CHECK(g.is_valid(0, 2));
    CHECK_FALSE(g.is_valid(0, 3));
    CHECK(g.is_valid(900, 1246));
    CHECK_FALSE(g.is_valid(900, 1247));
    CHECK_FALSE(g.is_valid(-1, 0));
    CHECK_FALSE(g.is_valid(901, 0));
    CHECK_FALSE(g.is_valid(5, -1));
}

TEST_CASE("geometry is identical across displays and gazes") {
    LpGeometry a(ctx_1080());
    LpGeometry b(MappingContext(AcuityModel::default_model(), 1.0 / 4320.0, 7680, 4320, 0, 0));
    REQUIRE(a.width() == b.width());
    REQUIRE(a.height() == b.height());
    CHECK(a.valid_count() == b.valid_count());
    for (int u = 0; u < a.width(); ++u) CHECK(a.column_height(u) == b.column_height(u));
}

TEST_CASE("stats json") {
    LpGeometry g(ctx_1080());
    auto j = g.stats_json();
    CHECK(j["lp_width"] == 901);
    CHECK(j["lp_height"] == 1638);
    CHECK(j["valid_count"] == 1062877u);
    CHECK(j["rays_per_eye"] == 1062877u);
    CHECK(j["fill_ratio"].get<double>() == doctest::Approx(0.72019).epsilon(1e-4));
}

TEST_CASE("payload planes address column-major texels") {
    LpGeometry g(ctx_1080());
    LpPixels<std::uint8_t> img(g);
    CHECK(img.width() == 901);
    CHECK(img.raw().size() == 901u * 1638u * 4u);
    auto *t = img.texel(10, 20);
    t[0] = 1;
    t[3] = 255;
    CHECK(img.texel(10, 20)[0] == 1);
    CHECK(img.texel(10, 20)[3] == 255);
    CHECK(img.texel(10, 19)[3] == 0);
    CHECK(img.texel(11, 0)[0] == 0);

    LpPixels<float> shade(g);
    shade.texel(900, 1246)[2] = 0.25f;
    CHECK(shade.texel(900, 1246)[2] == 0.25f);
    shade.clear();
    CHECK(shade.texel(900, 1246)[2] == 0.0f);
}

TEST_SUITE_END();
