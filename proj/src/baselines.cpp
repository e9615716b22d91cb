// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vafr/angles.hpp"
#include "vafr/error.hpp"
#include "vafr/parallel.hpp"

namespace vafr {

BaselineParams BaselineParams::make(int width, int height, double delta, double c_r,
                                    double gaze_x, double gaze_y) {
    if (width < 1 || height < 1)
        throw ValidationError(detail::msg("display ", width, "x", height, " is empty"));
    if (!(delta > 0.0)) throw ValidationError(detail::msg("delta ", delta, " must be positive"));
    if (!(c_r > 0.0)) throw ValidationError(detail::msg("c_r ", c_r, " must be positive"));
    if (!(gaze_x >= 0.0 && gaze_x <= width && gaze_y >= 0.0 && gaze_y <= height))
        throw ValidationError(detail::msg("gaze (", gaze_x, ", ", gaze_y,
                                          ") outside display ", width, "x", height));
    BaselineParams p;
    p.width = width;
    p.height = height;
    p.delta = delta;
    p.c_r = c_r;
    p.gaze_x = gaze_x;
    p.gaze_y = gaze_y;
    double farthest = 0.0;
    for (double cx : {0.0, static_cast<double>(width)})
        for (double cy : {0.0, static_cast<double>(height)})
            farthest = std::max(farthest, std::hypot(cx - gaze_x, cy - gaze_y));
    p.log_l = std::log(farthest);
    if (!(p.log_l > 0.0))
        throw ValidationError(detail::msg("corner distance ", farthest,
                                          " px gives a non-positive log"));
    return p;
}

double BaselineParams::z(double ecc) const { return std::log(tan_deg(ecc) / c_r) / log_l; }

double BaselineParams::lw(double ecc) const {
    return (w() * kPi / (180.0 * sin_deg(ecc) * cos_deg(ecc))) / log_l;
}

double sr_lmfr(const BaselineParams &p, double ecc) {
    if (!(ecc > 0.0) || ecc >= 90.0)
        throw DomainError(detail::msg("eccentricity ", ecc, " deg outside (0, 90)"));
    const double zv = p.z(ecc);
    if (!(zv > 0.0) || zv > 1.0)
        throw DomainError(detail::msg("log radius z = ", zv, " at ", ecc,
                                      " deg outside (0, 1]"));
    return 2.0 * zv * zv * zv * p.lw(ecc);
}

LafrDerived lafr_derived(const BaselineParams &p) {
    if (!(p.alpha > 0.0) || p.alpha >= 1.0)
        throw ValidationError(detail::msg("alpha ", p.alpha, " outside (0, 1)"));
    LafrDerived d;
    d.z_ef = p.z(p.e_foveal);
    if (!(d.z_ef > 0.0) || d.z_ef >= 1.0)
        throw DomainError(detail::msg("foveal boundary maps to z = ", d.z_ef,
                                      ", outside (0, 1)"));
    d.fa = 1.0 - std::log(p.alpha * d.z_ef) / std::log(d.z_ef);
    d.u_ef = std::pow(d.z_ef * (1.0 - d.fa), 1.0 / d.fa);
    return d;
}

namespace {

double lafr_foveal(const BaselineParams &p, const LafrDerived &d, double zv, double ecc) {
    return (1.0 - d.fa) / (2.0 * d.fa) *
           std::pow(zv * (1.0 - d.fa), (1.0 - d.fa) / d.fa) * p.lw(ecc);
}

double lafr_peripheral(const BaselineParams &p, const LafrDerived &d, double za, double zv,
                       double ecc) {
    return (2.0 * (1.0 - d.u_ef) / (-kPi * std::sqrt(1.0 - za * za))) *
           (1.0 / (1.0 / d.z_ef - 1.0)) * (-1.0 / (zv * zv)) * p.lw(ecc);
}

}  // namespace

double sr_lafr(const BaselineParams &p, double ecc) {
    if (!(ecc > 0.0) || ecc > 55.0)
        throw DomainError(detail::msg("eccentricity ", ecc, " deg outside (0, 55]"));
    const LafrDerived d = lafr_derived(p);
    const double zv = p.z(ecc);
    if (!(zv > 0.0))
        throw DomainError(detail::msg("log radius z = ", zv, " at ", ecc,
                                      " deg is not positive"));
    if (ecc <= p.e_foveal) return lafr_foveal(p, d, zv, ecc);
    const double za = (1.0 / zv - 1.0 / d.z_ef) / (1.0 / d.z_ef - 1.0);
    if (!(std::fabs(za) < 1.0))
        throw DomainError(detail::msg("arc parameter Za = ", za, " at ", ecc,
                                      " deg leaves (-1, 1)"));
    return lafr_peripheral(p, d, za, zv, ecc);
}

double sr_lafr_left_limit(const BaselineParams &p) {
    const LafrDerived d = lafr_derived(p);
    return lafr_foveal(p, d, d.z_ef, p.e_foveal);
}

double sr_lafr_right_limit(const BaselineParams &p) {
    const LafrDerived d = lafr_derived(p);
    return lafr_peripheral(p, d, 0.0, d.z_ef, p.e_foveal);
}

double sr_tangential_baseline(const BaselineParams &p, double ecc) {
    if (!(ecc >= 0.01) || ecc >= 90.0)
        throw DomainError(detail::msg("eccentricity ", ecc, " deg outside [0.01, 90)"));
    return (p.height / p.delta) / (720.0 * cos_deg(ecc) * sin_deg(ecc));
}

double StepProfile::operator()(double ecc) const {
    if (rates.size() != thresholds.size() + 1)
        throw ValidationError(detail::msg("step profile has ", thresholds.size(),
                                          " thresholds but ", rates.size(), " rates"));
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw ValidationError("step profile thresholds must ascend");
    const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), ecc);
    return rates[static_cast<std::size_t>(it - thresholds.begin())];
}

StepProfile StepProfile::default_layers() { return {{5.0, 20.0}, {40.0, 10.0, 4.0}}; }

double sr_step(const StepProfile &profile, double ecc) { return profile(ecc); }

SweepSpec SweepSpec::defaults() {
    SweepSpec s;
    s.methods = {
        {"VaFR", SweepMethod::Vafr, 1.8, 0.85, 0.7, {}},
        {"LMFR", SweepMethod::Lmfr, 1.8, 0.85, 0.7, {}},
        {"LaFR", SweepMethod::Lafr, 1.8, 0.85, 0.7, {}},
        {"LaFR-retuned", SweepMethod::Lafr, 8.0, 0.78, 0.9, {}},
        {"step", SweepMethod::Step, 1.8, 0.85, 0.7, StepProfile::default_layers()},
    };
    s.resolutions = {{1920, 1080}, {2560, 1440}, {7680, 4320}};
    s.gazes = {{0.5, 0.5}};
    for (int i = 1; i <= 110; ++i) s.eccs.push_back(0.5 * i);
    return s;
}

std::vector<SweepRow> analyze(const SweepSpec &spec, const AcuityModel &model) {
    if (spec.methods.empty() || spec.resolutions.empty() || spec.gazes.empty() ||
        spec.eccs.empty())
        throw ValidationError("sweep needs at least one method, resolution, gaze and e");
    if (!(spec.film_height > 0.0) || !(spec.focal_length > 0.0))
        throw ValidationError("film height and focal length must be positive");
    for (const auto &g : spec.gazes)
        if (!(g[0] >= 0.0 && g[0] <= 1.0 && g[1] >= 0.0 && g[1] <= 1.0))
            throw ValidationError(detail::msg("normalized gaze (", g[0], ", ", g[1],
                                              ") outside the unit square"));

    struct Sample {
        const SweepEntry *entry;
        int width, height;
        double gx, gy;
        double ecc;
    };
    std::vector<Sample> samples;
    samples.reserve(spec.methods.size() * spec.resolutions.size() * spec.gazes.size() *
                    spec.eccs.size());
    for (const SweepEntry &entry : spec.methods)
        for (const auto &res : spec.resolutions)
            for (const auto &g : spec.gazes)
                for (double ecc : spec.eccs)
                    samples.push_back({&entry, res[0], res[1], g[0], g[1], ecc});

    std::vector<SweepRow> rows(samples.size());
    parallel_for(0, static_cast<std::int64_t>(samples.size()), spec.threads,
                 [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const Sample &smp = samples[static_cast<std::size_t>(i)];
            SweepRow row;
            row.method = smp.entry->label;
            row.width = smp.width;
            row.height = smp.height;
            row.gaze_x = smp.gx;
            row.gaze_y = smp.gy;
            row.ecc = smp.ecc;
            switch (smp.entry->method) {
            case SweepMethod::Vafr:
                try {
                    const double f = model.shading_rate(smp.ecc);
                    row.sr_radial = f;
                    row.sr_tangential = spec.vafr_delta(smp.ecc) * f;
                } catch (const DomainError &) {
                }
                break;
            case SweepMethod::Step: {
                const double f = smp.entry->step(smp.ecc);
                row.sr_radial = f;
                row.sr_tangential = f;
                break;
            }
            case SweepMethod::Lmfr:
            case SweepMethod::Lafr: {
                const double cr =
                    compute_cr(spec.film_height, spec.focal_length, smp.height);
                BaselineParams p =
                    BaselineParams::make(smp.width, smp.height, smp.entry->delta, cr,
                                         smp.gx * smp.width, smp.gy * smp.height);
                p.alpha = smp.entry->alpha;
                p.beta = smp.entry->beta;
                try {
                    row.sr_radial = smp.entry->method == SweepMethod::Lmfr
                                        ? sr_lmfr(p, smp.ecc)
                                        : sr_lafr(p, smp.ecc);
                } catch (const DomainError &) {
                }
                try {
                    row.sr_tangential = sr_tangential_baseline(p, smp.ecc);
                } catch (const DomainError &) {
                }
                break;
            }
            }
            rows[static_cast<std::size_t>(i)] = std::move(row);
        }
    });
    return rows;
}

std::string to_csv(const std::vector<SweepRow> &rows) {
    std::string out = "method,resolution,gaze,e,SR_radial,SR_tangential\n";
    char buf[64];
    const auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        out += buf;
    };
    for (const SweepRow &r : rows) {
        out += r.method;
        std::snprintf(buf, sizeof buf, ",%dx%d,", r.width, r.height);
        out += buf;
        put(r.gaze_x);
        out += ':';
        put(r.gaze_y);
        out += ',';
        put(r.ecc);
        out += ',';
        if (r.sr_radial) put(*r.sr_radial);
        out += ',';
        if (r.sr_tangential) put(*r.sr_tangential);
        out += '\n';
    }
    return out;
}

}  // namespace vafr
