// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/raycast.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "support/fixtures.hpp"
#include "vafr/angles.hpp"
#include "vafr/error.hpp"

using namespace vafr;
using vafr::testing::simple_camera;
using vafr::testing::simple_scene;

TEST_SUITE_BEGIN("raycast");

TEST_CASE("camera basis is orthonormal") {
    auto cam = Camera({1, 2, 3}, {0.3, -0.2, -1.0}, {0.1, 1.0, 0.05}, 1.0, 1.0, 640, 480);
    CHECK(cam.forward().length() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cam.up().length() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cam.right().length() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(cam.forward().dot(cam.up())) < 1e-9);
    CHECK(std::fabs(cam.forward().dot(cam.right())) < 1e-9);
    CHECK(std::fabs(cam.up().dot(cam.right())) < 1e-9);
    CHECK_THROWS_AS(Camera({0, 0, 0}, {0, 0, -1}, {0, 0, 1}, 1, 1, 64, 64), ValidationError);
    CHECK_THROWS_AS(Camera({0, 0, 0}, {0, 0, -1}, {0, 1, 0}, 1, 1, 0, 64), ValidationError);
}

TEST_CASE("ray angles follow the pixel pitch") {
    auto cam = simple_camera();  // cr = 1/1080
    CHECK(cam.cr() == doctest::Approx(1.0 / 1080.0).epsilon(1e-15));
    // Center ray is the forward axis.
    auto r0 = cam.generate_ray(960.0, 540.0);
    CHECK(r0.dir.x == doctest::Approx(0.0));
    CHECK(r0.dir.y == doctest::Approx(0.0));
    CHECK(r0.dir.z == doctest::Approx(-1.0));
    // 540 px to the right: atan(540/1080) off axis.
    auto r1 = cam.generate_ray(960.0 + 540.0, 540.0);
    const double angle = rad2deg(std::acos(r1.dir.dot(r0.dir)));
    CHECK(angle == doctest::Approx(26.56505117707799).epsilon(1e-9));
    // Image y grows downward, camera up is +y.
    auto r2 = cam.generate_ray(960.0, 440.0);
    CHECK(r2.dir.y > 0.0);
    // Resolution change rescales cr.
    CHECK(cam.with_resolution(960, 540).cr() == doctest::Approx(2.0 / 1080.0).epsilon(1e-15));
}

TEST_CASE("sphere intersection from the axis") {
    Scene scene;
    Sphere sp;
    sp.center = {0, 0, -6};
    sp.radius = 2.0;
    scene.spheres.push_back(sp);
    auto hit = intersect(scene, {{0, 0, 0}, {0, 0, -1}}, 1e-9, 1e30);
    REQUIRE(hit.has_value());
    CHECK(hit->t == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(hit->normal.z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(intersect(scene, {{0, 0, 0}, {0, 1, 0}}, 1e-9, 1e30).has_value());
    // From inside, the far wall is hit.
    auto inside = intersect(scene, {{0, 0, -6}, {0, 0, -1}}, 1e-9, 1e30);
    REQUIRE(inside.has_value());
    CHECK(inside->t == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("triangle intersection is double sided") {
    Scene scene;
    scene.triangles.push_back({{-1, 0, -3}, {1, 0, -3}, {0, 2, -3}, Material{}});
    auto front = intersect(scene, {{0, 0.5, 0}, {0, 0, -1}}, 1e-9, 1e30);
    REQUIRE(front.has_value());
    CHECK(front->t == doctest::Approx(3.0).epsilon(1e-12));
    auto back = intersect(scene, {{0, 0.5, -6}, {0, 0, 1}}, 1e-9, 1e30);
    REQUIRE(back.has_value());
    CHECK(back->t == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_FALSE(intersect(scene, {{5, 5, 0}, {0, 0, -1}}, 1e-9, 1e30).has_value());
}

TEST_CASE("lambert term matches the analytic normal-dot-light") {
    Scene scene;
    Sphere sp;
    sp.center = {0, 0, -5};
    sp.radius = 1.0;
    sp.material.albedo = {0.6, 0.5, 0.4};
    sp.material.specular = {0, 0, 0};
    scene.spheres.push_back(sp);
    scene.point_lights.push_back({{3, 4, 2}, {1.0, 0.9, 0.8}});
    auto cam = simple_camera(640, 640);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> jitter(-100.0, 100.0);
    int checked = 0;
    while (checked < 100) {
        const Ray ray = cam.generate_ray(320.0 + jitter(rng), 320.0 + jitter(rng));
        auto hit = intersect(scene, ray, 1e-9, 1e30);
        if (!hit) continue;
        const Vec3 n = hit->normal;
        const Vec3 to_light = (scene.point_lights[0].position - hit->point).normalized();
        const double ndl = std::max(0.0, n.dot(to_light));
        const Color c = trace(scene, ray);
        for (int ch = 0; ch < 3; ++ch)
            CHECK(c[ch] == doctest::Approx(sp.material.albedo[ch] *
                                           scene.point_lights[0].intensity[ch] * ndl)
                               .epsilon(1e-5));
        ++checked;
    }
}

TEST_CASE("blinn-phong adds a bounded highlight") {
    Scene scene;
    Sphere sp;
    sp.center = {0, 0, -5};
    sp.radius = 1.0;
    sp.material.albedo = {0.1, 0.1, 0.1};
    sp.material.specular = {0.8, 0.8, 0.8};
    sp.material.shininess = 16.0;
    scene.spheres.push_back(sp);
    scene.point_lights.push_back({{0, 0, 0}, {1, 1, 1}});  // light at the eye
    auto cam = simple_camera(640, 640);
    const Ray ray = cam.generate_ray(320.0, 320.0);
    auto hit = intersect(scene, ray, 1e-9, 1e30);
    REQUIRE(hit.has_value());
    // Head-on: n == l == h, so the highlight reaches its peak value.
    const Color c = trace(scene, ray);
    CHECK(c[0] == doctest::Approx(0.1 + 0.8).epsilon(1e-9));
}

TEST_CASE("hard shadows cut the light entirely") {
    Scene scene;
    Sphere blocker;
    blocker.center = {0, 2, -5};
    blocker.radius = 0.5;
    scene.spheres.push_back(blocker);
    const Vec3 g0{-10, 0, 0}, g1{10, 0, 0}, g2{10, 0, -10}, g3{-10, 0, -10};
    scene.triangles.push_back({g0, g1, g2, Material{}});
    scene.triangles.push_back({g0, g2, g3, Material{}});
    scene.point_lights.push_back({{0, 6, -5}, {1, 1, 1}});

    // Straight down the shadow axis: the ground point below the
    // blocker gets nothing, a point off to the side is lit.
    const Ray shadowed{{0, 3, 0}, Vec3{0, -3, -5}.normalized()};
    const Color dark = trace(scene, shadowed);
    CHECK(dark[0] == 0.0);
    const Ray lit{{4, 3, 0}, Vec3{0, -3, -5}.normalized()};
    const Color bright = trace(scene, lit);
    CHECK(bright[0] > 0.1);
}

TEST_CASE("directional light and background") {
    Scene scene;
    scene.background = {0.2, 0.3, 0.4};
    Sphere sp;
    sp.center = {0, 0, -5};
    sp.radius = 1.0;
    sp.material.albedo = {1, 1, 1};
    sp.material.specular = {0, 0, 0};
    scene.spheres.push_back(sp);
    scene.directional_lights.push_back({{0, 0, -1}, {0.5, 0.5, 0.5}});  // travelling -z
    auto cam = simple_camera(64, 64);
    // Head-on surface point: n = +z, light arrives along -z, n.l = 1.
    const Color c = trace(scene, cam.generate_ray(32.0, 32.0));
    CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-9));
    // A miss returns the background.
    const Color bg = trace(scene, {{0, 0, 0}, {0, 1, 0}});
    CHECK(bg[0] == doctest::Approx(0.2));
    CHECK(bg[2] == doctest::Approx(0.4));
}

TEST_CASE("scene json roundtrip and errors") {
    Scene scene = simple_scene();
    Scene back = Scene::from_json(scene.to_json());
    CHECK(back.spheres.size() == 2);
    CHECK(back.triangles.size() == 2);
    CHECK(back.point_lights.size() == 1);
    CHECK(back.spheres[0].material.albedo[0] == doctest::Approx(0.80));
    CHECK(back.background[1] == doctest::Approx(0.07));

    CHECK_THROWS_AS(Scene::from_json({{"spheres", {{{"radius", 1.0}}}}}), ValidationError);
    CHECK_THROWS_AS(Scene::load("/nonexistent/scene.json"), IoError);

    auto cam = simple_camera();
    Camera cam2 = Camera::from_json(cam.to_json());
    CHECK(cam2.cr() == cam.cr());
    CHECK(cam2.width() == 1920);
}

TEST_CASE("ground truth renderer shoots one ray per pixel") {
    Scene scene = simple_scene();
    auto cam = simple_camera(160, 90);
    RenderStats stats;
    Image img = render_gt(scene, cam, 1, &stats);
    CHECK(stats.primary_rays == 160u * 90u);
    REQUIRE(img.width == 160);
    // Center of the frame is the big sphere, warm colored.
    CHECK(img.pixel(80, 45)[0] > img.pixel(80, 45)[2]);
    // Determinism across thread counts.
    Image img4 = render_gt(scene, cam, 4, nullptr);
    CHECK(img.pixels == img4.pixels);
}

TEST_CASE("foveated render costs one ray per valid texel") {
    Scene scene = simple_scene();
    const int W = 480, H = 270;
    auto cam = simple_camera(W, H);
    MappingContext ctx(AcuityModel::default_model(), cam.cr(), W, H, W / 2.0, H / 2.0);
    RenderStats stats;
    Image img = render_vafr(scene, cam, ctx, {}, &stats);
    LpGeometry geom(ctx);
    CHECK(stats.primary_rays == geom.valid_count());
    REQUIRE(img.width == W);
    REQUIRE(img.height == H);

    // Center pixels agree with ground truth within a few quanta.
    Image gt = render_gt(scene, cam, 0, nullptr);
    for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx)
            for (int c = 0; c < 3; ++c) {
                const int a = img.pixel(W / 2 + dx, H / 2 + dy)[c];
                const int b = gt.pixel(W / 2 + dx, H / 2 + dy)[c];
                CHECK(std::abs(a - b) <= 3);
            }
}

TEST_CASE("foveated render is deterministic across thread counts") {
    Scene scene = simple_scene();
    const int W = 320, H = 180;
    auto cam = simple_camera(W, H);
    MappingContext ctx(AcuityModel::default_model(), cam.cr(), W, H, W / 2.0, H / 2.0);
    FoveationParams p1, p4;
    p1.filter = p4.filter = LpFilter::Fxaa;
    p1.threads = 1;
    p4.threads = 4;
    Image a = render_vafr(scene, cam, ctx, p1);
    Image b = render_vafr(scene, cam, ctx, p4);
    CHECK(a.pixels == b.pixels);
}

TEST_CASE("foveated render validates camera consistency") {
    Scene scene = simple_scene();
    auto cam = simple_camera(640, 360);
    MappingContext ctx(AcuityModel::default_model(), 1.0 / 360.0, 640, 360, 320, 180);
    CHECK_NOTHROW(render_vafr(scene, cam.with_resolution(640, 360), ctx));
    CHECK_THROWS_AS(render_vafr(scene, cam.with_resolution(320, 180), ctx), ValidationError);
    auto zoomed = Camera({0, 0, 0}, {0, 0, -1}, {0, 1, 0}, 1.0, 2.0, 640, 360);
    CHECK_THROWS_AS(render_vafr(scene, zoomed, ctx), ValidationError);
}

TEST_SUITE_END();
