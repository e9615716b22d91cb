// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include <json.hpp>

namespace vafr {

// Piecewise-linear model of the minimum angle of resolution (MAR) over
// retinal eccentricity.  Eccentricity e is in degrees, MAR in
// deg/cycle, acuity = 1/MAR in cycles/deg.  The radial shading-rate
// integral u(e) = integral of 2/mar has a closed form per segment, so
// both u(e) and its inverse are exact.

// One linear MAR span covering [e_lo, e_hi): mar(e) = m*e + omega.
// u_lo anchors the span in the cumulative abscissa; c is the classic
// integration constant so that
//   m > 0:   u(e) = (2/m) ln(m e + omega) + c
//   m == 0:  u(e) = (2/omega) e + c
struct AcuitySegment {
    double e_lo = 0;
    double e_hi = 0;
    double m = 0;      // >= 0: acuity never improves with eccentricity
    double omega = 0;  // MAR extrapolated to e = 0, > 0
    double u_lo = 0;
    double c = 0;
};

// Acuity sample the segments are fitted through.
struct AcuityPivot {
    double ecc = 0;  // degrees
    double cpd = 0;  // cycles/deg
};

class AcuityModel {
  public:
    // Builds the segment chain through acuity pivots.  Requirements:
    // at least two pivots, ecc strictly increasing starting at 0, cpd
    // positive and non-increasing.  The last pivot defines e_max.
    // Violations raise ValidationError naming the pivot index.
    static AcuityModel from_pivots(std::vector<AcuityPivot> pivots);

    // 40/10/6/5/4 cpd at 0/10/20/30/60 degrees.
    static AcuityModel default_model();

    // Schema: {"pivots": [[ecc, cpd], ...]}.
    static AcuityModel from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;

    double e_max() const { return e_max_; }
    double u_max() const { return u_max_; }

    // Valid on [0, e_max); DomainError outside.
    double mar(double e) const;
    double acuity(double e) const { return 1.0 / mar(e); }
    // Shading rate in cycles/deg.  Identical to acuity by construction:
    // the mapping places 2*acuity(e) samples per degree radially.
    double shading_rate(double e) const { return acuity(e); }
    double u_of_e(double e) const;

    // Valid on [0, u_max]; e_of_u(u_max()) == e_max().
    double e_of_u(double u) const;

    // mar extended to the closed interval [0, e_max] so ring geometry
    // can be evaluated at the rim.
    double mar_closed(double e) const;

    std::span<const AcuitySegment> segments() const { return segments_; }
    std::span<const AcuityPivot> pivots() const { return pivots_; }

    // Clamps acuity to a device ceiling (cycles/deg): flat at cap_cpd
    // out to the eccentricity where this model falls below the cap,
    // unchanged beyond it.  A cap at or above the foveal peak returns
    // the model unmodified.
    AcuityModel adapt_to_device(double cap_cpd) const;

  private:
    AcuityModel() = default;
    const AcuitySegment &segment_at_e(double e) const;  // closed at e_max
    const AcuitySegment &segment_at_u(double u) const;

    std::vector<AcuityPivot> pivots_;
    std::vector<AcuitySegment> segments_;
    double e_max_ = 0;
    double u_max_ = 0;
};

}  // namespace vafr
