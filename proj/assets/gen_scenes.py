# Copyright 2026 The vafr Authors
# SPDX-License-Identifier: Apache-2.0
#
# Regenerates the N-light fixture scenes.  Geometry and camera are
# shared; beyond the key light, point lights fan out over a ring above
# the spheres with intensities scaled so total brightness stays level
# as the count grows.
#
# Run:  python3 assets/gen_scenes.py

import json
import math
import os

LIGHT_COUNTS = [1, 12, 21, 31]


def ring_light(k, n, budget):
    a = 2.0 * math.pi * k / n
    tint = [1.0 + 0.25 * math.cos(a), 1.0, 1.0 + 0.25 * math.sin(a)]
    return {
        "position": [round(7.0 * math.cos(a), 6), 4.5, round(-6.0 + 7.0 * math.sin(a), 6)],
        "intensity": [round(budget / n * t, 6) for t in tint],
    }


def scene(n_lights):
    if n_lights == 1:
        lights = [{"position": [4.0, 5.0, -2.0], "intensity": [1.0, 1.0, 1.0]}]
    else:
        lights = [{"position": [4.0, 5.0, -2.0], "intensity": [0.7, 0.7, 0.7]}]
        lights += [ring_light(k, n_lights - 1, 0.5) for k in range(n_lights - 1)]
    return {
        "camera": {
            "position": [0.0, 0.0, 0.0],
            "forward": [0.0, 0.0, -1.0],
            "up": [0.0, 1.0, 0.0],
            "film_height": 1.0,
            "focal_length": 1.0,
            "width": 1920,
            "height": 1080,
        },
        "background": [0.05, 0.07, 0.10],
        "spheres": [
            {
                "center": [0.0, 0.0, -6.0],
                "radius": 2.0,
                "material": {
                    "albedo": [0.80, 0.30, 0.20],
                    "specular": [0.35, 0.35, 0.35],
                    "shininess": 64.0,
                },
            },
            {
                "center": [2.5, 1.5, -4.0],
                "radius": 0.5,
                "material": {"albedo": [0.20, 0.60, 0.90]},
            },
        ],
        "triangles": [
            {
                "vertices": [[-30.0, -2.5, 10.0], [30.0, -2.5, 10.0], [30.0, -2.5, -50.0]],
                "material": {"albedo": [0.75, 0.75, 0.75]},
            },
            {
                "vertices": [[-30.0, -2.5, 10.0], [30.0, -2.5, -50.0], [-30.0, -2.5, -50.0]],
                "material": {"albedo": [0.75, 0.75, 0.75]},
            },
        ],
        "point_lights": lights,
    }


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    for n in LIGHT_COUNTS:
        path = os.path.join(here, f"scene_{n}light{'s' if n > 1 else ''}.json")
        with open(path, "w") as f:
            json.dump(scene(n), f, indent=2)
            f.write("\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
