// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vafr/acuity.hpp"
#include "vafr/mapping.hpp"

namespace vafr {

// Shared inputs of the two prior log-polar shading-rate curves.  Both
// map pixel radius r through z = ln(tan e / c_r) / ln L, where L is
// the pixel distance from gaze to the farthest display corner, so
// their rates move with resolution and gaze; the acuity-derived rate
// has no such term.
struct BaselineParams {
    int width = 2560;
    int height = 1440;
    double delta = 1.8;    // peripheral reduction ratio, w = width / delta
    double alpha = 0.85;   // blended method: foveal buffer fraction
    double beta = 0.7;     // blended method: kernel exponent (recorded with
                           // results; the printed rate does not contain it)
    double c_r = 1.0 / 1440.0;
    double gaze_x = 1280.0;  // px
    double gaze_y = 720.0;   // px
    double e_foveal = 4.89;  // deg, blend point of the two-branch method
    double log_l = 0.0;      // ln of the farthest gaze-to-corner distance, px

    // Validates the display/gaze fields and fills log_l.  alpha and
    // beta keep their defaults; assign them afterwards if needed.
    static BaselineParams make(int width, int height, double delta, double c_r,
                               double gaze_x, double gaze_y);

    double w() const { return width / delta; }
    double z(double ecc) const;   // ln(tan e / c_r) / ln L
    double lw(double ecc) const;  // w*pi / (180 sin e cos e) / ln L
};

// Kernel log-polar method: 2 z(e)^3 LW(e).  Domain is z in (0, 1];
// outside it the mapping addresses no pixel and a DomainError names
// the offending z.
double sr_lmfr(const BaselineParams &p, double ecc);

// Constants the blended method derives at the foveal boundary.
struct LafrDerived {
    double z_ef;  // log-mapped boundary position, must land in (0, 1)
    double fa;    // foveal blend fraction
    double u_ef;  // buffer share of the fovea
};
LafrDerived lafr_derived(const BaselineParams &p);

// Acuity-blended log-polar method, two branches split at e_foveal.
// Domain is e in (0, 55] with z(e) in (0, 1); past the display corner
// the peripheral branch's arc term Za leaves (-1, 1) and a DomainError
// names it.  The curve jumps at the branch point; the one-sided limits
// expose both values.
double sr_lafr(const BaselineParams &p, double ecc);
double sr_lafr_left_limit(const BaselineParams &p);
double sr_lafr_right_limit(const BaselineParams &p);

// Tangential rate both prior methods share: (height/delta) / (720 cos e
// sin e).  DomainError below 0.01 deg and at 90 deg and beyond.
double sr_tangential_baseline(const BaselineParams &p, double ecc);

// Piecewise-constant rate over eccentricity, right-open: an e equal to
// a threshold takes the rate of the layer above it.
struct StepProfile {
    std::vector<double> thresholds;  // ascending, deg
    std::vector<double> rates;       // cpd, one more entry than thresholds

    double operator()(double ecc) const;
    static StepProfile default_layers();  // three illustrative layers
};
double sr_step(const StepProfile &profile, double ecc);

// One curve of a comparison sweep.  delta/alpha/beta configure the
// prior methods; step configures the piecewise profile; the acuity
// method takes everything from the model handed to analyze().
enum class SweepMethod { Vafr, Lmfr, Lafr, Step };
struct SweepEntry {
    std::string label;
    SweepMethod method = SweepMethod::Vafr;
    double delta = 1.8;
    double alpha = 0.85;
    double beta = 0.7;
    StepProfile step;
};

struct SweepSpec {
    std::vector<SweepEntry> methods;
    std::vector<std::array<int, 2>> resolutions;   // {width, height}
    std::vector<std::array<double, 2>> gazes;      // normalized, 0..1 each
    std::vector<double> eccs;                      // deg
    double film_height = 1.0;  // c_r per resolution = (film/focal)/height
    double focal_length = 1.0;
    DeltaSpec vafr_delta;  // anisotropy for the acuity method's tangential
    int threads = 0;

    // Acuity curve, both prior methods at their published settings, the
    // retuned blended preset (delta 8, alpha 0.78, beta 0.9), and the
    // step profile, over 1080p/1440p/8K at center gaze, e = 0.5..55.
    static SweepSpec defaults();
};

// One CSV row.  Cells are empty (nullopt) where the method's formula
// leaves its domain at that sample.
struct SweepRow {
    std::string method;
    int width = 0;
    int height = 0;
    double gaze_x = 0.0;  // normalized
    double gaze_y = 0.0;
    double ecc = 0.0;
    std::optional<double> sr_radial;
    std::optional<double> sr_tangential;
};

std::vector<SweepRow> analyze(const SweepSpec &spec, const AcuityModel &model);

// Header "method,resolution,gaze,e,SR_radial,SR_tangential"; floats at
// nine significant digits, resolution as WxH, gaze as x:y.
std::string to_csv(const std::vector<SweepRow> &rows);

}  // namespace vafr
