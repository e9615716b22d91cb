// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace vafr {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double d) { return d * (kPi / 180.0); }
inline constexpr double rad2deg(double r) { return r * (180.0 / kPi); }

inline double sin_deg(double d) { return std::sin(deg2rad(d)); }
inline double cos_deg(double d) { return std::cos(deg2rad(d)); }
inline double tan_deg(double d) { return std::tan(deg2rad(d)); }

}  // namespace vafr
