// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/raycast.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "vafr/angles.hpp"
#include "vafr/error.hpp"
#include "vafr/parallel.hpp"

namespace vafr {

using detail::msg;

Vec3 Vec3::normalized() const {
    const double len = length();
    if (!(len > 0))
        throw ValidationError("cannot normalize a zero vector");
    return {x / len, y / len, z / len};
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 vec3_from_json(const nlohmann::json &j, const char *what) {
    if (!j.is_array() || j.size() != 3)
        throw ValidationError(msg(what, " must be [x, y, z]"));
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Color color_from_json(const nlohmann::json &j, const char *what) {
    if (!j.is_array() || j.size() != 3)
        throw ValidationError(msg(what, " must be [r, g, b]"));
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Material material_from_json(const nlohmann::json &j) {
    Material m;
    if (j.contains("albedo")) m.albedo = color_from_json(j["albedo"], "albedo");
    if (j.contains("specular")) m.specular = color_from_json(j["specular"], "specular");
    if (j.contains("shininess")) m.shininess = j["shininess"].get<double>();
    if (!(m.shininess > 0))
        throw ValidationError(msg("shininess must be positive, got ", m.shininess));
    return m;
}

nlohmann::json material_to_json(const Material &m) {
    return {{"albedo", m.albedo}, {"specular", m.specular}, {"shininess", m.shininess}};
}

bool hit_sphere(const Sphere &s, const Ray &ray, double t_min, double t_max, double &t_out) {
    const Vec3 oc = ray.origin - s.center;
    const double b = oc.dot(ray.dir);
    const double c = oc.dot(oc) - s.radius * s.radius;
    const double disc = b * b - c;
    if (disc < 0) return false;
    const double sq = std::sqrt(disc);
    double t = -b - sq;
    if (t < t_min) t = -b + sq;
    if (t < t_min || t > t_max) return false;
    t_out = t;
    return true;
}

// Moller-Trumbore, double sided.
bool hit_triangle(const Triangle &tri, const Ray &ray, double t_min, double t_max,
                  double &t_out) {
    const Vec3 e1 = tri.b - tri.a;
    const Vec3 e2 = tri.c - tri.a;
    const Vec3 p = ray.dir.cross(e2);
    const double det = e1.dot(p);
    if (std::fabs(det) < 1e-12) return false;
    const double inv = 1.0 / det;
    const Vec3 tv = ray.origin - tri.a;
    const double u = tv.dot(p) * inv;
    if (u < 0.0 || u > 1.0) return false;
    const Vec3 q = tv.cross(e1);
    const double v = ray.dir.dot(q) * inv;
    if (v < 0.0 || u + v > 1.0) return false;
    const double t = e2.dot(q) * inv;
    if (t < t_min || t > t_max) return false;
    t_out = t;
    return true;
}

bool occluded(const Scene &scene, const Ray &ray, double t_min, double t_max) {
    double t;
    for (const auto &s : scene.spheres)
        if (hit_sphere(s, ray, t_min, t_max, t)) return true;
    for (const auto &tri : scene.triangles)
        if (hit_triangle(tri, ray, t_min, t_max, t)) return true;
    return false;
}

}  // namespace

std::optional<HitInfo> intersect(const Scene &scene, const Ray &ray, double t_min,
                                 double t_max) {
    HitInfo hit;
    bool found = false;
    double best = t_max;
    for (const auto &s : scene.spheres) {
        double t;
        if (hit_sphere(s, ray, t_min, best, t)) {
            best = t;
            found = true;
            hit.t = t;
            hit.point = ray.origin + ray.dir * t;
            hit.normal = (hit.point - s.center) * (1.0 / s.radius);
            hit.material = &s.material;
        }
    }
    for (const auto &tri : scene.triangles) {
        double t;
        if (hit_triangle(tri, ray, t_min, best, t)) {
            best = t;
            found = true;
            hit.t = t;
            hit.point = ray.origin + ray.dir * t;
            hit.normal = (tri.b - tri.a).cross(tri.c - tri.a).normalized();
            hit.material = &tri.material;
        }
    }
    if (!found) return std::nullopt;
    return hit;
}

Color shade(const Scene &scene, const Ray &ray, const HitInfo &hit) {
    Vec3 n = hit.normal;
    if (n.dot(ray.dir) > 0) n = -n;  // double-sided shading
    const Vec3 view = -ray.dir;
    const Material &mat = *hit.material;
    const double eps = 1e-6 * (1.0 + std::fabs(hit.point.x) + std::fabs(hit.point.y) +
                               std::fabs(hit.point.z));
    const Vec3 origin = hit.point + n * eps;

    Color out{0, 0, 0};
    auto add_light = [&](const Vec3 &ldir, double dist, const Color &intensity) {
        const double ndl = n.dot(ldir);
        if (ndl <= 0) return;
        if (occluded(scene, Ray{origin, ldir}, 0.0, dist)) return;
        const Vec3 half = (ldir + view).normalized();
        const double spec = std::pow(std::max(0.0, n.dot(half)), mat.shininess);
        for (int c = 0; c < 3; ++c)
            out[c] += intensity[c] * (mat.albedo[c] * ndl + mat.specular[c] * spec);
    };
    for (const auto &light : scene.point_lights) {
        const Vec3 to_light = light.position - hit.point;
        const double dist = to_light.length();
        if (dist <= 0) continue;
        add_light(to_light * (1.0 / dist), dist - 2.0 * eps, light.intensity);
    }
    for (const auto &light : scene.directional_lights)
        add_light(-light.direction.normalized(), kInf, light.intensity);
    return out;
}

Color trace(const Scene &scene, const Ray &ray) {
    if (auto hit = intersect(scene, ray, 1e-9, kInf)) return shade(scene, ray, *hit);
    return scene.background;
}

Scene Scene::from_json(const nlohmann::json &j) {
    try {
        Scene scene;
        if (j.contains("background"))
            scene.background = color_from_json(j["background"], "background");
        for (const auto &s : j.value("spheres", nlohmann::json::array())) {
            Sphere sp;
            sp.center = vec3_from_json(s.at("center"), "sphere center");
            sp.radius = s.at("radius").get<double>();
            if (!(sp.radius > 0))
                throw ValidationError(msg("sphere radius must be positive, got ", sp.radius));
            if (s.contains("material")) sp.material = material_from_json(s["material"]);
            scene.spheres.push_back(sp);
        }
        for (const auto &t : j.value("triangles", nlohmann::json::array())) {
            const auto &v = t.at("vertices");
            if (!v.is_array() || v.size() != 3)
                throw ValidationError("triangle vertices must be [[..], [..], [..]]");
            Triangle tri;
            tri.a = vec3_from_json(v[0], "triangle vertex");
            tri.b = vec3_from_json(v[1], "triangle vertex");
            tri.c = vec3_from_json(v[2], "triangle vertex");
            if (t.contains("material")) tri.material = material_from_json(t["material"]);
            scene.triangles.push_back(tri);
        }
        for (const auto &l : j.value("point_lights", nlohmann::json::array())) {
            PointLight p;
            p.position = vec3_from_json(l.at("position"), "light position");
            if (l.contains("intensity"))
                p.intensity = color_from_json(l["intensity"], "light intensity");
            scene.point_lights.push_back(p);
        }
        for (const auto &l : j.value("directional_lights", nlohmann::json::array())) {
            DirectionalLight d;
            d.direction = vec3_from_json(l.at("direction"), "light direction").normalized();
            if (l.contains("intensity"))
                d.intensity = color_from_json(l["intensity"], "light intensity");
            scene.directional_lights.push_back(d);
        }
        return scene;
    } catch (const nlohmann::json::exception &err) {
        throw ValidationError(msg("scene JSON: ", err.what()));
    }
}

nlohmann::json Scene::to_json() const {
    nlohmann::json j;
    j["background"] = background;
    j["spheres"] = nlohmann::json::array();
    for (const auto &s : spheres)
        j["spheres"].push_back({{"center", {s.center.x, s.center.y, s.center.z}},
                                {"radius", s.radius},
                                {"material", material_to_json(s.material)}});
    j["triangles"] = nlohmann::json::array();
    for (const auto &t : triangles)
        j["triangles"].push_back(
            {{"vertices",
              {{t.a.x, t.a.y, t.a.z}, {t.b.x, t.b.y, t.b.z}, {t.c.x, t.c.y, t.c.z}}},
             {"material", material_to_json(t.material)}});
    j["point_lights"] = nlohmann::json::array();
    for (const auto &l : point_lights)
        j["point_lights"].push_back({{"position", {l.position.x, l.position.y, l.position.z}},
                                     {"intensity", l.intensity}});
    j["directional_lights"] = nlohmann::json::array();
    for (const auto &l : directional_lights)
        j["directional_lights"].push_back(
            {{"direction", {l.direction.x, l.direction.y, l.direction.z}},
             {"intensity", l.intensity}});
    return j;
}

Scene Scene::load(const std::string &path) {
    std::FILE *f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError(msg("cannot open ", path));
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError(msg(path, ": malformed JSON"));
    return from_json(j);
}

Camera::Camera(Vec3 position, Vec3 forward, Vec3 up, double film_height, double focal_length,
               int width, int height)
    : position_(position), film_height_(film_height), focal_length_(focal_length),
      width_(width), height_(height) {
    if (width_ < 1 || height_ < 1)
        throw ValidationError(msg("camera resolution must be positive, got ", width_, "x",
                                  height_));
    forward_ = forward.normalized();
    const Vec3 r = forward_.cross(up);
    if (!(r.length() > 1e-9))
        throw ValidationError("camera up is parallel to forward");
    right_ = r.normalized();
    up_ = right_.cross(forward_);  // orthonormal by construction
    cr_ = compute_cr(film_height_, focal_length_, height_);
}

Ray Camera::generate_ray(double px, double py) const {
    const Vec3 dir = forward_ + right_ * ((px - width_ / 2.0) * cr_) +
                     up_ * ((height_ / 2.0 - py) * cr_);
    return {position_, dir.normalized()};
}

Camera Camera::with_resolution(int width, int height) const {
    return Camera(position_, forward_, up_, film_height_, focal_length_, width, height);
}

Camera Camera::from_json(const nlohmann::json &j) {
    try {
        const Vec3 pos = vec3_from_json(j.at("position"), "camera position");
        const Vec3 fwd = vec3_from_json(j.at("forward"), "camera forward");
        const Vec3 up = vec3_from_json(j.at("up"), "camera up");
        return Camera(pos, fwd, up, j.value("film_height", 1.0), j.value("focal_length", 1.0),
                      j.value("width", 1920), j.value("height", 1080));
    } catch (const nlohmann::json::exception &err) {
        throw ValidationError(msg("camera JSON: ", err.what()));
    }
}

nlohmann::json Camera::to_json() const {
    return {{"position", {position_.x, position_.y, position_.z}},
            {"forward", {forward_.x, forward_.y, forward_.z}},
            {"up", {up_.x, up_.y, up_.z}},
            {"film_height", film_height_},
            {"focal_length", focal_length_},
            {"width", width_},
            {"height", height_}};
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

Image render_gt(const Scene &scene, const Camera &cam, int threads, RenderStats *stats) {
    const auto t0 = std::chrono::steady_clock::now();
    Image out(cam.width(), cam.height(), 3);
    std::vector<std::uint64_t> per_row(cam.height(), 0);
    parallel_for(0, cam.height(), threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int y = static_cast<int>(lo); y < hi; ++y) {
            std::uint64_t rays = 0;
            std::uint8_t *row = out.pixel(0, y);
            for (int x = 0; x < cam.width(); ++x) {
                const Color c = trace(scene, cam.generate_ray(x + 0.5, y + 0.5));
                ++rays;
                row[x * 3 + 0] = to_byte(c[0]);
                row[x * 3 + 1] = to_byte(c[1]);
                row[x * 3 + 2] = to_byte(c[2]);
            }
            per_row[y] = rays;
        }
    });
    if (stats) {
        stats->primary_rays = 0;
        for (auto r : per_row) stats->primary_rays += r;
        stats->shade_ms = elapsed_ms(t0);
    }
    return out;
}

void render_lp(const Scene &scene, const Camera &cam, const MappingContext &ctx,
               const LpGeometry &geom, LpPixels<float> &dst, int threads,
               std::uint64_t *ray_count) {
    if (dst.width() != geom.width() || dst.height() != geom.height())
        dst = LpPixels<float>(geom);
    std::vector<std::uint64_t> per_col(geom.width(), 0);
    parallel_for(0, geom.width(), threads, [&](std::int64_t lo, std::int64_t hi) {
        for (int u = static_cast<int>(lo); u < hi; ++u) {
            const double e = geom.column_ecc(u);
            const double l = ctx.shading_height(e);
            const double r = tan_deg(e) / ctx.cr();
            const int h = geom.column_height(u);
            std::uint64_t rays = 0;
            for (int v = 0; v < h; ++v) {
                const double theta = 360.0 * (v + 0.5) / l;
                const double x = ctx.gaze_x() + r * cos_deg(theta);
                const double y = ctx.gaze_y() + r * sin_deg(theta);
                const Color c = trace(scene, cam.generate_ray(x, y));
                ++rays;
                float *t = dst.texel(u, v);
                t[0] = static_cast<float>(c[0]);
                t[1] = static_cast<float>(c[1]);
                t[2] = static_cast<float>(c[2]);
                t[3] = 1.0f;
            }
            per_col[u] = rays;
        }
    });
    if (ray_count) {
        *ray_count = 0;
        for (auto r : per_col) *ray_count += r;
    }
}

Image render_vafr(const Scene &scene, const Camera &cam, const MappingContext &ctx,
                  const FoveationParams &params, RenderStats *stats,
                  LpPixels<float> *lp_out) {
    if (cam.width() != ctx.display_width() || cam.height() != ctx.display_height())
        throw ValidationError(msg("camera ", cam.width(), "x", cam.height(),
                                  " does not match context display ", ctx.display_width(), "x",
                                  ctx.display_height()));
    if (std::fabs(cam.cr() - ctx.cr()) > 1e-9 * ctx.cr())
        throw ValidationError(msg("camera cr ", cam.cr(), " does not match context cr ",
                                  ctx.cr()));

    LpGeometry geom(ctx);
    LpPixels<float> shaded(geom);
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t rays = 0;
    render_lp(scene, cam, ctx, geom, shaded, params.threads, &rays);
    const double shade_ms = elapsed_ms(t0);

    LpPixels<float> filtered;
    const LpPixels<float> *final_lp = &shaded;
    double filter_ms = 0.0;
    if (params.filter == LpFilter::Fxaa) {
        t0 = std::chrono::steady_clock::now();
        filtered = LpPixels<float>(geom);
        lp_antialias(geom, shaded, filtered, params.threads);
        filter_ms = elapsed_ms(t0);
        final_lp = &filtered;
    }

    t0 = std::chrono::steady_clock::now();
    Image out = from_lp(*final_lp, geom, ctx, params, nullptr);
    if (stats) {
        stats->primary_rays = rays;
        stats->shade_ms = shade_ms;
        stats->filter_ms = filter_ms;
        stats->expand_ms = elapsed_ms(t0);
    }
    if (lp_out) *lp_out = *final_lp;
    return out;
}

}  // namespace vafr
