// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0
//
// vafr: foveate images, render scenes through the log-polar buffer,
// sweep shading-rate curves, and tabulate buffer statistics.
// Exit codes: 0 ok, 2 validation, 3 I/O, 4 numeric domain.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vafr/acuity.hpp"
#include "vafr/baselines.hpp"
#include "vafr/error.hpp"
#include "vafr/foveate.hpp"
#include "vafr/image.hpp"
#include "vafr/lpbuffer.hpp"
#include "vafr/mapping.hpp"
#include "vafr/presets.hpp"
#include "vafr/raycast.hpp"

namespace {

using nlohmann::json;

json load_json_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vafr::IoError(vafr::detail::msg("cannot open ", path));
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw vafr::ValidationError(vafr::detail::msg("malformed JSON in ", path));
    return j;
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw vafr::IoError(vafr::detail::msg("cannot open ", path, " for writing"));
    out << text;
    if (!out) throw vafr::IoError(vafr::detail::msg("short write to ", path));
}

std::pair<double, double> parse_xy(const std::string &s) {
    const auto comma = s.find(',');
    std::size_t ax = 0, ay = 0;
    if (comma != std::string::npos) {
        try {
            const double x = std::stod(s.substr(0, comma), &ax);
            const double y = std::stod(s.substr(comma + 1), &ay);
            if (ax == comma && comma + 1 + ay == s.size()) return {x, y};
        } catch (const std::exception &) {
        }
    }
    throw vafr::ValidationError(vafr::detail::msg("expected \"x,y\", got \"", s, "\""));
}

std::pair<int, int> parse_resolution(const std::string &s) {
    if (const auto *p = vafr::find_display_preset(s)) return {p->width, p->height};
    const auto x = s.find('x');
    if (x != std::string::npos) {
        try {
            std::size_t aw = 0, ah = 0;
            const int w = std::stoi(s.substr(0, x), &aw);
            const int h = std::stoi(s.substr(x + 1), &ah);
            if (aw == x && x + 1 + ah == s.size() && w > 0 && h > 0) return {w, h};
        } catch (const std::exception &) {
        }
    }
    throw vafr::ValidationError(
        vafr::detail::msg("expected WxH or a preset name, got \"", s, "\""));
}

vafr::AcuityModel build_model(const std::string &model_path, double device_cap) {
    auto model = model_path.empty() ? vafr::AcuityModel::default_model()
                                    : vafr::AcuityModel::from_json(load_json_file(model_path));
    if (device_cap > 0.0) model = model.adapt_to_device(device_cap);
    return model;
}

// A bare number is a constant ratio; anything else is a JSON file.
vafr::DeltaSpec build_delta(const std::string &spec) {
    if (spec.empty()) return {};
    try {
        std::size_t pos = 0;
        const double v = std::stod(spec, &pos);
        if (pos == spec.size()) return vafr::DeltaSpec::constant(v);
    } catch (const std::exception &) {
    }
    return vafr::DeltaSpec::from_json(load_json_file(spec));
}

vafr::LpFilter parse_aa(const std::string &s) {
    if (s == "fxaa") return vafr::LpFilter::Fxaa;
    if (s == "none") return vafr::LpFilter::None;
    throw vafr::ValidationError(vafr::detail::msg("--aa must be fxaa or none, got ", s));
}

vafr::OutsidePolicy parse_outside(const std::string &s) {
    if (s == "clamp") return vafr::OutsidePolicy::ClampRing;
    if (s == "solid") return vafr::OutsidePolicy::SolidColor;
    if (s == "passthrough") return vafr::OutsidePolicy::PassthroughSource;
    throw vafr::ValidationError(
        vafr::detail::msg("--outside must be clamp, solid or passthrough, got ", s));
}

std::array<std::uint8_t, 4> parse_color(const std::string &s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        parts.push_back(s.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    std::array<std::uint8_t, 4> c{0, 0, 0, 255};
    if (parts.size() == 3 || parts.size() == 4) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < parts.size(); ++i) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(parts[i], &used);
                ok = used == parts[i].size() && v >= 0 && v <= 255;
                c[i] = static_cast<std::uint8_t>(v);
            } catch (const std::exception &) {
                ok = false;
            }
        }
        if (ok) return c;
    }
    throw vafr::ValidationError(vafr::detail::msg("expected R,G,B[,A], got \"", s, "\""));
}

// All option state, config-file defaults applied before parsing so
// command-line flags win.
struct Options {
    std::string config;

    struct {
        std::string in, out, gaze, model, delta, dump_lp, stats_out;
        std::string aa = "fxaa", outside = "clamp", outside_color = "0,0,0";
        double device_cap = 0.0, film = 1.0, focal = 1.0, cr = 0.0;
        int threads = 0;
    } fov;

    struct {
        std::string scene, out = "render.png", mode = "vafr", res, gaze, model, delta,
                    stats_out;
        std::string aa = "fxaa";
        double device_cap = 0.0;
        int threads = 0;
    } render;

    struct {
        std::string out, model, delta;
        double device_cap = 0.0;
        bool gaze_sweep = false;
        int threads = 0;
    } analyze;

    struct {
        std::string model, delta;
        double device_cap = 0.0;
        bool as_json = false;
    } stats;
};

template <typename T>
void config_get(const json &cfg, const char *key, T &dst) {
    if (!cfg.contains(key)) return;
    const json &v = cfg.at(key);
    if constexpr (std::is_same_v<T, std::string>) {
        dst = v.is_string() ? v.get<std::string>() : v.dump();
    } else if constexpr (std::is_same_v<T, bool>) {
        dst = v.get<bool>();
    } else {
        dst = v.is_string() ? static_cast<T>(std::stod(v.get<std::string>()))
                            : v.get<T>();
    }
}

void apply_config(const json &cfg, Options &o) {
    if (!cfg.is_object()) throw vafr::ValidationError("config must be a JSON object");
    static const char *known[] = {
        "in",      "out",     "gaze",          "model",  "delta",   "dump-lp",
        "stats-out", "aa",    "outside",       "outside-color", "device-cap", "film",
        "focal",   "cr",      "threads",       "scene",  "mode",    "res",
        "gaze-sweep", "json",
    };
    for (const auto &item : cfg.items()) {
        bool ok = false;
        for (const char *k : known) ok = ok || item.key() == k;
        if (!ok)
            throw vafr::ValidationError(
                vafr::detail::msg("unknown config key \"", item.key(), "\""));
    }
    config_get(cfg, "in", o.fov.in);
    config_get(cfg, "out", o.fov.out);
    config_get(cfg, "gaze", o.fov.gaze);
    config_get(cfg, "model", o.fov.model);
    config_get(cfg, "delta", o.fov.delta);
    config_get(cfg, "dump-lp", o.fov.dump_lp);
    config_get(cfg, "stats-out", o.fov.stats_out);
    config_get(cfg, "aa", o.fov.aa);
    config_get(cfg, "outside", o.fov.outside);
    config_get(cfg, "outside-color", o.fov.outside_color);
    config_get(cfg, "device-cap", o.fov.device_cap);
    config_get(cfg, "film", o.fov.film);
    config_get(cfg, "focal", o.fov.focal);
    config_get(cfg, "cr", o.fov.cr);
    config_get(cfg, "threads", o.fov.threads);

    config_get(cfg, "scene", o.render.scene);
    config_get(cfg, "out", o.render.out);
    config_get(cfg, "mode", o.render.mode);
    config_get(cfg, "res", o.render.res);
    config_get(cfg, "gaze", o.render.gaze);
    config_get(cfg, "model", o.render.model);
    config_get(cfg, "delta", o.render.delta);
    config_get(cfg, "stats-out", o.render.stats_out);
    config_get(cfg, "aa", o.render.aa);
    config_get(cfg, "device-cap", o.render.device_cap);
    config_get(cfg, "threads", o.render.threads);

    config_get(cfg, "out", o.analyze.out);
    config_get(cfg, "model", o.analyze.model);
    config_get(cfg, "delta", o.analyze.delta);
    config_get(cfg, "device-cap", o.analyze.device_cap);
    config_get(cfg, "gaze-sweep", o.analyze.gaze_sweep);
    config_get(cfg, "threads", o.analyze.threads);

    config_get(cfg, "model", o.stats.model);
    config_get(cfg, "delta", o.stats.delta);
    config_get(cfg, "device-cap", o.stats.device_cap);
    config_get(cfg, "json", o.stats.as_json);
}

int cmd_foveate(const Options &opt) {
    const auto &o = opt.fov;
    const vafr::Image src = vafr::load_image(o.in);
    const double cr = o.cr > 0.0 ? o.cr : vafr::compute_cr(o.film, o.focal, src.height);
    const auto model = build_model(o.model, o.device_cap);
    const auto [gx, gy] = o.gaze.empty()
                              ? std::pair{src.width / 2.0, src.height / 2.0}
                              : parse_xy(o.gaze);
    vafr::MappingContext ctx(model, cr, src.width, src.height, gx, gy,
                             build_delta(o.delta));

    vafr::FoveationParams params;
    params.filter = parse_aa(o.aa);
    params.outside = parse_outside(o.outside);
    params.outside_color = parse_color(o.outside_color);
    params.threads = o.threads;

    vafr::Foveator fov(std::move(ctx));
    const vafr::Image out = fov(src, params);

    std::string out_path = o.out;
    if (out_path.empty()) {
        std::filesystem::path p(o.in);
        out_path = (p.parent_path() / (p.stem().string() + "_foveated.png")).string();
    }
    vafr::save_image(out, out_path);

    const auto &geom = fov.geometry();
    std::printf("lp %dx%d  valid %llu  fill %.4f  -> %s\n", fov.context().lp_width(),
                fov.context().lp_height(),
                static_cast<unsigned long long>(geom.valid_count()), geom.fill_ratio(),
                out_path.c_str());
    if (!o.dump_lp.empty()) vafr::save_image(vafr::lp_debug_image(geom, fov.lp()), o.dump_lp);
    if (!o.stats_out.empty()) {
        json stats = geom.stats_json();
        stats["display_width"] = src.width;
        stats["display_height"] = src.height;
        stats["output"] = out_path;
        write_text_file(o.stats_out, stats.dump(2) + "\n");
    }
    return 0;
}

int cmd_render(const Options &opt) {
    const auto &o = opt.render;
    if (o.mode != "vafr" && o.mode != "gt")
        throw vafr::ValidationError(
            vafr::detail::msg("--mode must be vafr or gt, got ", o.mode));

    const json scene_json = load_json_file(o.scene);
    const vafr::Scene scene = vafr::Scene::from_json(scene_json);
    vafr::Camera cam = scene_json.contains("camera")
                           ? vafr::Camera::from_json(scene_json.at("camera"))
                           : vafr::Camera({0, 0, 0}, {0, 0, -1}, {0, 1, 0}, 1.0, 1.0,
                                          1920, 1080);
    if (!o.res.empty()) {
        const auto [w, h] = parse_resolution(o.res);
        cam = cam.with_resolution(w, h);
    }

    vafr::RenderStats stats;
    vafr::Image out;
    if (o.mode == "gt") {
        out = vafr::render_gt(scene, cam, o.threads, &stats);
    } else {
        const auto model = build_model(o.model, o.device_cap);
        const auto [gx, gy] = o.gaze.empty()
                                  ? std::pair{cam.width() / 2.0, cam.height() / 2.0}
                                  : parse_xy(o.gaze);
        vafr::MappingContext ctx(model, cam.cr(), cam.width(), cam.height(), gx, gy,
                                 build_delta(o.delta));
        vafr::FoveationParams params;
        params.filter = parse_aa(o.aa);
        params.threads = o.threads;
        out = vafr::render_vafr(scene, cam, ctx, params, &stats);
    }
    vafr::save_image(out, o.out);
    std::printf("%s %dx%d  rays %llu  shade %.1fms  filter %.1fms  expand %.1fms\n",
                o.mode.c_str(), cam.width(), cam.height(),
                static_cast<unsigned long long>(stats.primary_rays), stats.shade_ms,
                stats.filter_ms, stats.expand_ms);
    if (!o.stats_out.empty()) {
        const json j = {{"mode", o.mode},
                        {"width", cam.width()},
                        {"height", cam.height()},
                        {"primary_rays", stats.primary_rays},
                        {"shade_ms", stats.shade_ms},
                        {"filter_ms", stats.filter_ms},
                        {"expand_ms", stats.expand_ms}};
        write_text_file(o.stats_out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_analyze(const Options &opt) {
    const auto &o = opt.analyze;
    vafr::SweepSpec spec = vafr::SweepSpec::defaults();
    if (o.gaze_sweep) spec.gazes = {{0.5, 0.5}, {0.0, 0.0}};
    spec.vafr_delta = build_delta(o.delta);
    spec.threads = o.threads;
    const auto model = build_model(o.model, o.device_cap);
    const std::string csv = vafr::to_csv(vafr::analyze(spec, model));
    if (o.out.empty())
        std::cout << csv;
    else
        write_text_file(o.out, csv);
    return 0;
}

int cmd_buffer_stats(const Options &opt) {
    const auto &o = opt.stats;
    const auto model = build_model(o.model, o.device_cap);
    const auto delta = build_delta(o.delta);
    const auto &ref = vafr::kDisplayPresets[0];
    const vafr::MappingContext ctx(model, 1.0 / ref.height, ref.width, ref.height,
                                   ref.width / 2.0, ref.height / 2.0, delta);
    const vafr::LpGeometry geom(ctx);

    if (o.as_json) {
        json j = geom.stats_json();
        j["presets"] = json::array();
        for (const auto &p : vafr::kDisplayPresets) {
            const auto gt = vafr::preset_pixels(p);
            j["presets"].push_back({{"name", std::string(p.name)},
                                    {"width", p.width},
                                    {"height", p.height},
                                    {"gt_pixels", gt},
                                    {"speedup", static_cast<double>(gt) /
                                                    static_cast<double>(geom.valid_count())}});
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::printf("lp buffer %dx%d  valid %llu  fill %.4f\n\n", ctx.lp_width(),
                ctx.lp_height(), static_cast<unsigned long long>(geom.valid_count()),
                geom.fill_ratio());
    std::printf("%-8s  %-12s  %12s  %12s  %8s\n", "preset", "display", "gt_pixels",
                "lp_rays", "speedup");
    for (const auto &p : vafr::kDisplayPresets) {
        const auto gt = vafr::preset_pixels(p);
        char dims[32];
        std::snprintf(dims, sizeof dims, "%dx%d", p.width, p.height);
        std::printf("%-8s  %-12s  %12lld  %12llu  %8.2f\n", std::string(p.name).c_str(),
                    dims, static_cast<long long>(gt),
                    static_cast<unsigned long long>(geom.valid_count()),
                    static_cast<double>(gt) / static_cast<double>(geom.valid_count()));
    }
    return 0;
}

int run(int argc, char **argv) {
    Options opt;

    // Config file values become defaults; explicit flags override them.
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            opt.config = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            opt.config = arg.substr(9);
    }
    if (!opt.config.empty()) apply_config(load_json_file(opt.config), opt);

    CLI::App app{"acuity-consistent foveated rendering toolkit"};
    app.require_subcommand(1);

    const auto add_common = [&opt](CLI::App *cmd) {
        cmd->add_option("--config", opt.config, "JSON defaults, overridden by flags");
    };

    auto *fov = app.add_subcommand("foveate", "resample an image through the LP buffer");
    add_common(fov);
    fov->add_option("--in", opt.fov.in, "input image (PNG/PPM/PGM)")->required();
    fov->add_option("--out", opt.fov.out, "output PNG (default <in>_foveated.png)");
    fov->add_option("--gaze", opt.fov.gaze, "gaze x,y in pixels (default center)");
    fov->add_option("--model", opt.fov.model, "acuity pivot JSON (default built-in)");
    fov->add_option("--device-cap", opt.fov.device_cap,
                    "clamp acuity to this many cpd (display limit)");
    fov->add_option("--aa", opt.fov.aa, "LP-space anti-aliasing: fxaa or none");
    fov->add_option("--outside", opt.fov.outside,
                    "beyond the model range: clamp, solid or passthrough");
    fov->add_option("--outside-color", opt.fov.outside_color, "R,G,B[,A] for --outside solid");
    fov->add_option("--delta", opt.fov.delta,
                    "tangential/radial ratio: a number or a node JSON file");
    fov->add_option("--dump-lp", opt.fov.dump_lp, "write the LP buffer as PNG (invalid=magenta)");
    fov->add_option("--film", opt.fov.film, "film height over focal sets c_r (default 1)");
    fov->add_option("--focal", opt.fov.focal, "focal length (default 1)");
    fov->add_option("--cr", opt.fov.cr, "set c_r directly, overriding film/focal");
    fov->add_option("--threads", opt.fov.threads, "worker threads (0 = hardware)");
    fov->add_option("--stats-out", opt.fov.stats_out, "write buffer statistics JSON");

    auto *ren = app.add_subcommand("render", "ray cast a scene, foveated or full");
    add_common(ren);
    ren->add_option("--scene", opt.render.scene, "scene JSON")->required();
    ren->add_option("--mode", opt.render.mode, "vafr (per-LP-texel rays) or gt (per pixel)");
    ren->add_option("--res", opt.render.res, "WxH or preset (2K/4K/6K/8K/retinal)");
    ren->add_option("--gaze", opt.render.gaze, "gaze x,y in pixels (default center)");
    ren->add_option("--out", opt.render.out, "output PNG");
    ren->add_option("--model", opt.render.model, "acuity pivot JSON");
    ren->add_option("--device-cap", opt.render.device_cap, "clamp acuity to this many cpd");
    ren->add_option("--aa", opt.render.aa, "LP-space anti-aliasing: fxaa or none");
    ren->add_option("--delta", opt.render.delta, "tangential/radial ratio");
    ren->add_option("--threads", opt.render.threads, "worker threads (0 = hardware)");
    ren->add_option("--stats-out", opt.render.stats_out, "write ray counts and timings JSON");

    auto *ana = app.add_subcommand("analyze", "shading-rate curve sweep as CSV");
    add_common(ana);
    ana->add_option("--out", opt.analyze.out, "CSV path (default stdout)");
    ana->add_flag("--gaze-sweep", opt.analyze.gaze_sweep, "add a corner gaze to the sweep");
    ana->add_option("--model", opt.analyze.model, "acuity pivot JSON for the VaFR rows");
    ana->add_option("--device-cap", opt.analyze.device_cap, "clamp acuity to this many cpd");
    ana->add_option("--delta", opt.analyze.delta, "VaFR tangential/radial ratio");
    ana->add_option("--threads", opt.analyze.threads, "worker threads (0 = hardware)");

    auto *st = app.add_subcommand("buffer-stats", "LP buffer size and per-preset speedups");
    add_common(st);
    st->add_option("--model", opt.stats.model, "acuity pivot JSON");
    st->add_option("--device-cap", opt.stats.device_cap, "clamp acuity to this many cpd");
    st->add_option("--delta", opt.stats.delta, "tangential/radial ratio");
    st->add_flag("--json", opt.stats.as_json, "emit JSON instead of the table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (fov->parsed()) return cmd_foveate(opt);
    if (ren->parsed()) return cmd_render(opt);
    if (ana->parsed()) return cmd_analyze(opt);
    if (st->parsed()) return cmd_buffer_stats(opt);
    return 2;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const vafr::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vafr::IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const vafr::DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
