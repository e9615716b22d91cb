// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/acuity.hpp"

#include <algorithm>
#include <cmath>

#include "vafr/error.hpp"

namespace vafr {

using detail::msg;

AcuityModel AcuityModel::from_pivots(std::vector<AcuityPivot> pivots) {
    if (pivots.size() < 2)
        throw ValidationError(msg("acuity model needs at least 2 pivots, got ", pivots.size()));
    if (pivots.front().ecc != 0.0)
        throw ValidationError(msg("pivot 0: eccentricity must be 0, got ", pivots.front().ecc));
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (!(pivots[i].cpd > 0.0))
            throw ValidationError(msg("pivot ", i, ": acuity must be positive, got ", pivots[i].cpd));
        if (!std::isfinite(pivots[i].ecc) || !std::isfinite(pivots[i].cpd))
            throw ValidationError(msg("pivot ", i, ": non-finite value"));
        if (i > 0) {
            if (!(pivots[i].ecc > pivots[i - 1].ecc))
                throw ValidationError(msg("pivot ", i, ": eccentricity must increase (",
                                          pivots[i - 1].ecc, " -> ", pivots[i].ecc, " deg)"));
            if (pivots[i].cpd > pivots[i - 1].cpd)
                throw ValidationError(msg("pivot ", i, ": acuity must be non-increasing (",
                                          pivots[i - 1].cpd, " -> ", pivots[i].cpd,
                                          " cycles/deg)"));
        }
    }

    AcuityModel model;
    model.e_max_ = pivots.back().ecc;
    double acc = 0.0;
    for (size_t i = 0; i + 1 < pivots.size(); ++i) {
        AcuitySegment s;
        s.e_lo = pivots[i].ecc;
        s.e_hi = pivots[i + 1].ecc;
        const double mar_lo = 1.0 / pivots[i].cpd;
        const double mar_hi = 1.0 / pivots[i + 1].cpd;
        s.m = (mar_hi - mar_lo) / (s.e_hi - s.e_lo);
        s.omega = mar_lo - s.m * s.e_lo;
        s.u_lo = acc;
        if (s.m != 0.0) {
            s.c = s.u_lo - (2.0 / s.m) * std::log(mar_lo);
            acc += (2.0 / s.m) * std::log1p(s.m * (s.e_hi - s.e_lo) / mar_lo);
        } else {
            s.c = s.u_lo - 2.0 * s.e_lo / s.omega;
            acc += 2.0 * (s.e_hi - s.e_lo) / s.omega;
        }
        model.segments_.push_back(s);
    }
    model.u_max_ = acc;
    model.pivots_ = std::move(pivots);
    return model;
}

AcuityModel AcuityModel::default_model() {
    return from_pivots({{0, 40}, {10, 10}, {20, 6}, {30, 5}, {60, 4}});
}

AcuityModel AcuityModel::from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("pivots") || !j["pivots"].is_array())
        throw ValidationError("acuity model JSON must be {\"pivots\": [[ecc, cpd], ...]}");
    std::vector<AcuityPivot> pivots;
    for (const auto &p : j["pivots"]) {
        if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number())
            pivots.push_back({p[0].get<double>(), p[1].get<double>()});
        else if (p.is_object() && p.contains("ecc") && p.contains("cpd"))
            pivots.push_back({p["ecc"].get<double>(), p["cpd"].get<double>()});
        else
            throw ValidationError(msg("pivot ", pivots.size(), ": expected [ecc, cpd]"));
    }
    return from_pivots(std::move(pivots));
}

nlohmann::json AcuityModel::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &p : pivots_) arr.push_back({p.ecc, p.cpd});
    return {{"pivots", arr}};
}

const AcuitySegment &AcuityModel::segment_at_e(double e) const {
    // Right-open lookup except the last segment, which owns e_max.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), e,
                               [](double value, const AcuitySegment &s) { return value < s.e_hi; });
    return it == segments_.end() ? segments_.back() : *it;
}

const AcuitySegment &AcuityModel::segment_at_u(double u) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), u,
                               [](double value, const AcuitySegment &s) { return value < s.u_lo; });
    return it == segments_.begin() ? segments_.front() : *(it - 1);
}

double AcuityModel::mar(double e) const {
    if (!(e >= 0.0 && e < e_max_))
        throw DomainError(msg("eccentricity ", e, " deg outside [0, ", e_max_, ") deg"));
    const AcuitySegment &s = segment_at_e(e);
    return s.m * e + s.omega;
}

double AcuityModel::mar_closed(double e) const {
    if (!(e >= 0.0 && e <= e_max_))
        throw DomainError(msg("eccentricity ", e, " deg outside [0, ", e_max_, "] deg"));
    const AcuitySegment &s = segment_at_e(e);
    return s.m * e + s.omega;
}

double AcuityModel::u_of_e(double e) const {
    if (!(e >= 0.0 && e < e_max_))
        throw DomainError(msg("eccentricity ", e, " deg outside [0, ", e_max_, ") deg"));
    const AcuitySegment &s = segment_at_e(e);
    const double mar_lo = s.m * s.e_lo + s.omega;
    if (s.m != 0.0)
        return s.u_lo + (2.0 / s.m) * std::log1p(s.m * (e - s.e_lo) / mar_lo);
    return s.u_lo + 2.0 * (e - s.e_lo) / s.omega;
}

double AcuityModel::e_of_u(double u) const {
    // Tiny slack so u_max survives a serialization roundtrip.
    const double hi = u_max_ * (1.0 + 1e-12);
    if (!(u >= 0.0 && u <= hi))
        throw DomainError(msg("abscissa ", u, " outside [0, ", u_max_, "]"));
    u = std::min(u, u_max_);
    const AcuitySegment &s = segment_at_u(u);
    const double mar_lo = s.m * s.e_lo + s.omega;
    double e;
    if (s.m != 0.0)
        e = s.e_lo + mar_lo * std::expm1((u - s.u_lo) * s.m / 2.0) / s.m;
    else
        e = s.e_lo + (u - s.u_lo) * s.omega / 2.0;
    return std::min(e, e_max_);
}

AcuityModel AcuityModel::adapt_to_device(double cap_cpd) const {
    if (!(cap_cpd > 0.0))
        throw ValidationError(msg("device acuity cap must be positive, got ", cap_cpd));
    const double target = 1.0 / cap_cpd;  // MAR floor imposed by the device
    if (target <= segments_.front().omega)
        return *this;
    if (target >= mar_closed(e_max_))
        return from_pivots({{0.0, cap_cpd}, {e_max_, cap_cpd}});
    double e_star = 0.0;
    for (const auto &s : segments_) {
        if (target < s.m * s.e_hi + s.omega) {
            e_star = (target - s.omega) / s.m;
            break;
        }
    }
    std::vector<AcuityPivot> np{{0.0, cap_cpd}, {e_star, cap_cpd}};
    for (const auto &p : pivots_)
        if (p.ecc > e_star + 1e-9) np.push_back(p);
    return from_pivots(std::move(np));
}

}  // namespace vafr
