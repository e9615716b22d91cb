// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/mapping.hpp"

#include <algorithm>
#include <cmath>

#include "vafr/angles.hpp"
#include "vafr/error.hpp"

namespace vafr {

using detail::msg;

double compute_cr(double film_height, double focal_length, int display_height_px) {
    if (!(film_height > 0) || !(focal_length > 0))
        throw ValidationError(msg("film height and focal length must be positive, got ",
                                  film_height, " and ", focal_length));
    if (display_height_px < 1)
        throw ValidationError(msg("display height must be >= 1 px, got ", display_height_px));
    return (film_height / focal_length) / display_height_px;
}

DeltaSpec DeltaSpec::constant(double value) {
    if (!(value > 0) || !std::isfinite(value))
        throw ValidationError(msg("Delta must be positive and finite, got ", value));
    DeltaSpec d;
    d.kind_ = Kind::Constant;
    d.value_ = value;
    return d;
}

DeltaSpec DeltaSpec::piecewise_linear(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2)
        throw ValidationError("Delta needs at least 2 nodes");
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i].second > 0) || !std::isfinite(nodes[i].second))
            throw ValidationError(msg("Delta node ", i, ": value must be positive, got ",
                                      nodes[i].second));
        if (i > 0 && !(nodes[i].first > nodes[i - 1].first))
            throw ValidationError(msg("Delta node ", i, ": eccentricity must increase"));
    }
    DeltaSpec d;
    d.kind_ = Kind::Piecewise;
    d.nodes_ = std::move(nodes);
    return d;
}

DeltaSpec DeltaSpec::custom(std::function<double(double)> fn) {
    if (!fn) throw ValidationError("Delta callable is empty");
    DeltaSpec d;
    d.kind_ = Kind::Custom;
    d.fn_ = std::move(fn);
    return d;
}

double DeltaSpec::operator()(double ecc) const {
    switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::Custom:
            return fn_(ecc);
        case Kind::Piecewise:
            break;
    }
    if (ecc <= nodes_.front().first) return nodes_.front().second;
    if (ecc >= nodes_.back().first) return nodes_.back().second;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), ecc,
                               [](double e, const auto &n) { return e < n.first; });
    const auto &[e1, d1] = *it;
    const auto &[e0, d0] = *(it - 1);
    const double t = (ecc - e0) / (e1 - e0);
    return d0 + t * (d1 - d0);
}

nlohmann::json DeltaSpec::to_json() const {
    switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::Piecewise: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto &[e, d] : nodes_) arr.push_back({e, d});
            return {{"nodes", arr}};
        }
        case Kind::Custom:
            break;
    }
    throw ValidationError("custom Delta callables cannot be serialized");
}

DeltaSpec DeltaSpec::from_json(const nlohmann::json &j) {
    if (j.is_number()) return constant(j.get<double>());
    if (j.is_object() && j.contains("nodes") && j["nodes"].is_array()) {
        std::vector<std::pair<double, double>> nodes;
        for (const auto &n : j["nodes"]) {
            if (!n.is_array() || n.size() != 2)
                throw ValidationError("Delta node must be [ecc, value]");
            nodes.emplace_back(n[0].get<double>(), n[1].get<double>());
        }
        return piecewise_linear(std::move(nodes));
    }
    throw ValidationError("Delta JSON must be a number or {\"nodes\": [[ecc, value], ...]}");
}

namespace {

double ring_height(const AcuityModel &model, const DeltaSpec &delta, double e) {
    return delta(e) * 360.0 * sin_deg(2.0 * e) / model.mar_closed(e);
}

}  // namespace

std::pair<int, int> MappingContext::derive_buffer_dims(const AcuityModel &model,
                                                       const DeltaSpec &delta) {
    const int lp_w = static_cast<int>(std::ceil(model.u_max() - 1e-9));

    auto l = [&](double e) { return ring_height(model, delta, e); };
    const double e_max = model.e_max();
    const double step = 1e-3;
    double best_e = 0.0, best = l(0.0);
    for (double e = step; e <= e_max; e += step) {
        const double y = l(std::min(e, e_max));
        if (y > best) {
            best = y;
            best_e = e;
        }
    }
    // Golden-section refinement around the scan winner.
    double a = std::max(0.0, best_e - step), b = std::min(e_max, best_e + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = l(c), fd = l(d);
    while (b - a > 1e-9) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = l(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = l(d);
        }
    }
    best = std::max({best, fc, fd});
    const int lp_h = static_cast<int>(std::ceil(best - 1e-9));
    return {lp_w, lp_h};
}

MappingContext::MappingContext(AcuityModel model, double c_r, int display_width,
                               int display_height, double gaze_x, double gaze_y, DeltaSpec delta)
    : model_(std::move(model)),
      delta_(std::move(delta)),
      cr_(c_r),
      width_(display_width),
      height_(display_height),
      gaze_x_(gaze_x),
      gaze_y_(gaze_y) {
    if (!(cr_ > 0) || !std::isfinite(cr_))
        throw ValidationError(msg("c_r must be positive and finite, got ", cr_));
    if (width_ < 1 || height_ < 1)
        throw ValidationError(msg("display must be at least 1x1, got ", width_, "x", height_));
    if (!(gaze_x_ >= 0 && gaze_x_ <= width_ && gaze_y_ >= 0 && gaze_y_ <= height_))
        throw ValidationError(msg("gaze (", gaze_x_, ", ", gaze_y_, ") outside display ",
                                  width_, "x", height_));
    if (!(model_.e_max() < 90.0))
        throw ValidationError(msg("e_max must stay below 90 deg (tan blows up), got ",
                                  model_.e_max()));
    std::tie(lp_w_, lp_h_) = derive_buffer_dims(model_, delta_);
}

double MappingContext::ecc_from_radius(double r_px) const {
    if (!(r_px >= 0))
        throw DomainError(msg("radius must be non-negative, got ", r_px));
    return rad2deg(std::atan(cr_ * r_px));
}

double MappingContext::radius_from_ecc(double ecc) const {
    if (!(ecc >= 0 && ecc <= model_.e_max()))
        throw DomainError(msg("eccentricity ", ecc, " deg outside [0, ", model_.e_max(), "] deg"));
    return tan_deg(ecc) / cr_;
}

double MappingContext::shading_height(double ecc) const {
    return ring_height(model_, delta_, ecc);  // mar_closed guards the domain
}

std::optional<LpPoint> MappingContext::forward(double x, double y) const {
    const double dx = x - gaze_x_;
    const double dy = y - gaze_y_;
    const double e = rad2deg(std::atan(cr_ * std::hypot(dx, dy)));
    if (e >= model_.e_max()) return std::nullopt;
    double theta = rad2deg(std::atan2(dy, dx));
    if (theta < 0) theta += 360.0;
    const double l = shading_height(e);
    return LpPoint{model_.u_of_e(e), l * (theta / 360.0)};
}

PixelPoint MappingContext::inverse(double u, double v) const {
    const double e = model_.e_of_u(u);  // throws outside [0, u_max]
    const double l = shading_height(e);
    if (!(v >= 0 && v <= l * (1.0 + 1e-12) + 1e-12))
        throw DomainError(msg("v = ", v, " outside ring [0, ", l, "] at u = ", u));
    const double theta = l > 0 ? 360.0 * std::min(v, l) / l : 0.0;
    const double r = tan_deg(e) / cr_;
    return PixelPoint{gaze_x_ + r * cos_deg(theta), gaze_y_ + r * sin_deg(theta)};
}

nlohmann::json MappingContext::to_json() const {
    return {{"model", model_.to_json()},
            {"delta", delta_.to_json()},
            {"c_r", cr_},
            {"display", {width_, height_}},
            {"gaze", {gaze_x_, gaze_y_}}};
}

MappingContext MappingContext::from_json(const nlohmann::json &j) {
    try {
        AcuityModel model = AcuityModel::from_json(j.at("model"));
        DeltaSpec delta = j.contains("delta") ? DeltaSpec::from_json(j["delta"])
                                              : DeltaSpec::constant(1.0);
        const double cr = j.at("c_r").get<double>();
        const auto &disp = j.at("display");
        const auto &gaze = j.at("gaze");
        return MappingContext(std::move(model), cr, disp.at(0).get<int>(), disp.at(1).get<int>(),
                              gaze.at(0).get<double>(), gaze.at(1).get<double>(),
                              std::move(delta));
    } catch (const nlohmann::json::exception &err) {
        throw ValidationError(msg("mapping context JSON: ", err.what()));
    }
}

}  // namespace vafr
