// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#include "vafr/lpbuffer.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>

namespace vafr {

LpGeometry::LpGeometry(const MappingContext &ctx) {
    width_ = ctx.lp_width();
    height_ = ctx.lp_height();
    heights_.resize(width_);
    eccs_.resize(width_);
    const double u_max = ctx.model().u_max();
    for (int u = 0; u < width_; ++u) {
        const double e = ctx.model().e_of_u(std::min(u + 0.5, u_max));
        eccs_[u] = e;
        // nearbyint under the default FE_TONEAREST mode: half to even.
        const double l = ctx.shading_height(e);
        heights_[u] = static_cast<int>(std::clamp(std::nearbyint(l), 0.0,
                                                  static_cast<double>(height_)));
        valid_ += heights_[u];
    }
}

double LpGeometry::fill_ratio() const {
    return static_cast<double>(valid_) / (static_cast<double>(width_) * height_);
}

nlohmann::json LpGeometry::stats_json() const {
    return {{"lp_width", width_},
            {"lp_height", height_},
            {"valid_count", valid_},
            {"fill_ratio", fill_ratio()},
            {"rays_per_eye", valid_}};
}

}  // namespace vafr
