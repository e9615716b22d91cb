// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vafr/acuity.hpp"

namespace vafr {

// Screen-to-visual-angle scale: degrees of eccentricity obey
// tan(e) = c_r * r with r the pixel distance from gaze.  c_r is the
// physical pixel pitch over the focal distance, both in the same unit.
double compute_cr(double film_height, double focal_length, int display_height_px);

struct LpPoint {
    double u = 0;  // radial log-polar abscissa, texels
    double v = 0;  // tangential ordinate, texels
};

struct PixelPoint {
    double x = 0;
    double y = 0;
};

// Anisotropy hook Delta(e): positive bounded scale applied to ring
// height.  Constant and piecewise-linear forms serialize; arbitrary
// callables are accepted but refuse to serialize.
class DeltaSpec {
  public:
    DeltaSpec() = default;  // constant 1
    static DeltaSpec constant(double value);
    // (ecc, delta) nodes, ecc strictly increasing; clamped outside.
    static DeltaSpec piecewise_linear(std::vector<std::pair<double, double>> nodes);
    static DeltaSpec custom(std::function<double(double)> fn);

    double operator()(double ecc) const;

    // Number for constant, {"nodes": [[e, d], ...]} for piecewise.
    nlohmann::json to_json() const;
    static DeltaSpec from_json(const nlohmann::json &j);

  private:
    enum class Kind { Constant, Piecewise, Custom };
    Kind kind_ = Kind::Constant;
    double value_ = 1.0;
    std::vector<std::pair<double, double>> nodes_;
    std::function<double(double)> fn_;
};

// Immutable bundle tying an acuity model to one display + gaze.  The
// log-polar buffer dimensions are derived once at construction and
// depend only on the model and Delta, never on display size or gaze.
class MappingContext {
  public:
    MappingContext(AcuityModel model, double c_r, int display_width, int display_height,
                   double gaze_x, double gaze_y, DeltaSpec delta = DeltaSpec::constant(1.0));

    // Smallest buffer covering the model: width = ceil(u(e_max)),
    // height = ceil(max_e ring height).  The height maximum is located
    // by a 1e-3 deg scan plus local golden-section refinement.
    static std::pair<int, int> derive_buffer_dims(const AcuityModel &model,
                                                  const DeltaSpec &delta);

    double ecc_from_radius(double r_px) const;   // degrees
    double radius_from_ecc(double ecc) const;    // pixels, closed [0, e_max]

    // Ring height l(e) = Delta(e) * 360 * sin(2e) / mar(e), texels.
    // Closed domain [0, e_max].
    double shading_height(double ecc) const;

    // Pixel -> log-polar.  Empty when the pixel lies at or beyond
    // e_max from gaze.  theta = 0 points along +x; v grows with theta.
    std::optional<LpPoint> forward(double x, double y) const;

    // Log-polar -> pixel.  Requires u in [0, u_max] and v in
    // [0, shading_height(e(u))]; DomainError otherwise.
    PixelPoint inverse(double u, double v) const;

    const AcuityModel &model() const { return model_; }
    const DeltaSpec &delta() const { return delta_; }
    double cr() const { return cr_; }
    int display_width() const { return width_; }
    int display_height() const { return height_; }
    double gaze_x() const { return gaze_x_; }
    double gaze_y() const { return gaze_y_; }
    int lp_width() const { return lp_w_; }
    int lp_height() const { return lp_h_; }

    nlohmann::json to_json() const;
    static MappingContext from_json(const nlohmann::json &j);

  private:
    AcuityModel model_;
    DeltaSpec delta_;
    double cr_ = 0;
    int width_ = 0, height_ = 0;
    double gaze_x_ = 0, gaze_y_ = 0;
    int lp_w_ = 0, lp_h_ = 0;
};

}  // namespace vafr
