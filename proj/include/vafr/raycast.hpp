// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vafr/foveate.hpp"
#include "vafr/image.hpp"
#include "vafr/lpbuffer.hpp"
#include "vafr/mapping.hpp"

namespace vafr {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3 &o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double length() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const;
};

using Color = std::array<double, 3>;

struct Material {
    Color albedo{0.8, 0.8, 0.8};
    Color specular{0.0, 0.0, 0.0};
    double shininess = 32.0;
};

struct Sphere {
    Vec3 center;
    double radius = 1.0;
    Material material;
};

struct Triangle {
    Vec3 a, b, c;
    Material material;
};

struct PointLight {
    Vec3 position;
    Color intensity{1.0, 1.0, 1.0};  // no distance falloff
};

struct DirectionalLight {
    Vec3 direction;  // direction the light travels
    Color intensity{1.0, 1.0, 1.0};
};

struct Ray {
    Vec3 origin;
    Vec3 dir;  // unit length
};

struct Scene {
    std::vector<Sphere> spheres;
    std::vector<Triangle> triangles;
    std::vector<PointLight> point_lights;
    std::vector<DirectionalLight> directional_lights;
    Color background{0.0, 0.0, 0.0};

    static Scene from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;
    // IoError if unreadable, ValidationError if malformed.
    static Scene load(const std::string &path);
};

// Pinhole camera.  Pixel (px, py) in image coordinates (origin
// top-left, y down) maps to direction
//   forward + (px - W/2) * cr * right + (H/2 - py) * cr * up
// so a pixel at radius r from the center subtends atan(cr * r).
class Camera {
  public:
    Camera(Vec3 position, Vec3 forward, Vec3 up, double film_height, double focal_length,
           int width, int height);

    Ray generate_ray(double px, double py) const;

    double cr() const { return cr_; }
    int width() const { return width_; }
    int height() const { return height_; }
    const Vec3 &position() const { return position_; }
    const Vec3 &forward() const { return forward_; }
    const Vec3 &up() const { return up_; }
    const Vec3 &right() const { return right_; }
    double film_height() const { return film_height_; }
    double focal_length() const { return focal_length_; }

    Camera with_resolution(int width, int height) const;
    static Camera from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;

  private:
    Vec3 position_, forward_, up_, right_;
    double film_height_ = 1.0, focal_length_ = 1.0;
    int width_ = 0, height_ = 0;
    double cr_ = 0.0;
};

struct HitInfo {
    double t = 0;
    Vec3 point, normal;
    const Material *material = nullptr;
};

std::optional<HitInfo> intersect(const Scene &scene, const Ray &ray, double t_min, double t_max);

// Lambert + Blinn-Phong with hard shadows, no bounces, no ambient.
// Point and directional lights add intensity * albedo * max(0, n.l);
// there is no distance falloff.
Color shade(const Scene &scene, const Ray &ray, const HitInfo &hit);

// shade() on the nearest hit, scene background on a miss.
Color trace(const Scene &scene, const Ray &ray);

struct RenderStats {
    std::uint64_t primary_rays = 0;
    double shade_ms = 0.0;
    double filter_ms = 0.0;
    double expand_ms = 0.0;
};

// One ray through every pixel center.
Image render_gt(const Scene &scene, const Camera &cam, int threads = 0,
                RenderStats *stats = nullptr);

// One ray per valid log-polar texel, written to the float payload.
void render_lp(const Scene &scene, const Camera &cam, const MappingContext &ctx,
               const LpGeometry &geom, LpPixels<float> &dst, int threads = 0,
               std::uint64_t *ray_count = nullptr);

// render_lp -> optional lp_antialias -> from_lp, quantized once at the
// end.  Camera resolution and cr must match the context.  lp_out, when
// given, receives the shaded (post-filter) plane.
Image render_vafr(const Scene &scene, const Camera &cam, const MappingContext &ctx,
                  const FoveationParams &params = {}, RenderStats *stats = nullptr,
                  LpPixels<float> *lp_out = nullptr);

}  // namespace vafr
