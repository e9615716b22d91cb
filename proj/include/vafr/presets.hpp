// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

namespace vafr {

// Per-eye display presets accepted wherever a WxH resolution is.  The
// ladder steps the 2K frame by integer-and-a-half multiples; "retinal"
// approximates 60 pixels per degree of view.
struct DisplayPreset {
    std::string_view name;
    int width;
    int height;
};

inline constexpr DisplayPreset kDisplayPresets[] = {
    {"2K", 2560, 1440},   {"4K", 3840, 2160},      {"6K", 5760, 3240},
    {"8K", 7680, 4320},   {"retinal", 11520, 6480},
};

inline const DisplayPreset *find_display_preset(std::string_view name) {
    for (const DisplayPreset &p : kDisplayPresets)
        if (p.name == name) return &p;
    return nullptr;
}

inline std::int64_t preset_pixels(const DisplayPreset &p) {
    return static_cast<std::int64_t>(p.width) * p.height;
}

}  // namespace vafr
