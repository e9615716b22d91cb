# Copyright 2026 The vafr Authors
# SPDX-License-Identifier: Apache-2.0
#
# 40-digit recomputation of the frozen log-polar baseline values used
# by the C++ regression tests: the log-mapping curve, the
# acuity-blended curve with its one-sided limits at the foveal edge,
# and the tangential reference.  Printed trailing values are the
# float64 roundings frozen into tests/test_baselines.cpp and the
# acceptance suite.
#
# Run:  python3 tests/oracles/baseline_oracle.py

from mpmath import cos, log, mp, mpf, pi, radians, sin, sqrt, tan

mp.dps = 40

E_FOVEAL = mpf("4.89")  # deg, foveal/peripheral blend point


def ln_corner(width, height, gaze_x, gaze_y):
    best = mpf(0)
    for cx in (0, width):
        for cy in (0, height):
            best = max(best, sqrt((cx - gaze_x) ** 2 + (cy - gaze_y) ** 2))
    return log(best)


def z_of(e, cr, ln_l):
    return log(tan(radians(e)) / cr) / ln_l


def lw_of(e, w, ln_l):
    return (w * pi / (180 * sin(radians(e)) * cos(radians(e)))) / ln_l


def log_mapping_curve():
    width, height = 2560, 1440
    delta = mpf("1.8")
    cr = mpf(1) / 1440
    ln_l = ln_corner(width, height, width / mpf(2), height / mpf(2))
    w = width / delta
    print("log-mapping fixture 2560x1440, delta 1.8, center gaze")
    print("  ln L =", ln_l)
    for e in (mpf(10), mpf(25), mpf(40)):
        sr = 2 * z_of(e, cr, ln_l) ** 3 * lw_of(e, w, ln_l)
        print(f"  SR({e}) = {sr}  float64 {float(sr)!r}")


def blended_curve():
    width, height = 1440, 1700
    delta = mpf("1.8")
    alpha = mpf("0.85")
    cr = mpf(1) / 1700
    ln_l = ln_corner(width, height, width / mpf(2), height / mpf(2))
    w = width / delta
    z_ef = z_of(E_FOVEAL, cr, ln_l)
    # Blend fraction.  The exponent on (alpha z_ef) cancels against the
    # 1/(1-a) outside the log, so the expression reduces to a plain
    # base-z_ef logarithm and the curve is independent of a.
    fa = 1 - log(alpha * z_ef) / log(z_ef)
    u_ef = (z_ef * (1 - fa)) ** (1 / fa)
    print("acuity-blended fixture 1440x1700, delta 1.8, alpha 0.85, center gaze")
    print("  ln L =", ln_l)
    print("  z_ef =", z_ef, " float64", repr(float(z_ef)))
    print("  Fa   =", fa, " float64", repr(float(fa)))
    print("  U_ef =", u_ef, " float64", repr(float(u_ef)))

    def foveal(z, e):
        return (1 - fa) / (2 * fa) * (z * (1 - fa)) ** ((1 - fa) / fa) * lw_of(e, w, ln_l)

    def peripheral(z, e):
        za = (1 / z - 1 / z_ef) / (1 / z_ef - 1)
        return (
            (2 * (1 - u_ef) / (-pi * sqrt(1 - za**2)))
            * (1 / (1 / z_ef - 1))
            * (-1 / z**2)
            * lw_of(e, w, ln_l)
        )

    left = foveal(z_ef, E_FOVEAL)
    right = peripheral(z_ef, E_FOVEAL)  # za -> 0 from above
    print("  left limit  =", left, " float64", repr(float(left)))
    print("  right limit =", right, " float64", repr(float(right)))
    print("  gap         =", right - left, " float64", repr(float(right - left)))
    for e in (mpf(2), mpf(20)):
        z = z_of(e, cr, ln_l)
        sr = foveal(z, e) if e <= E_FOVEAL else peripheral(z, e)
        print(f"  SR({e}) = {sr}  float64 {float(sr)!r}")
    # Past the display corner z > 1 and the square root goes complex;
    # the library reports a domain error there.
    z50 = z_of(mpf(50), cr, ln_l)
    print("  z(50) =", z50, "(> 1: domain error expected)")


def tangential_reference():
    height = 1700
    delta = mpf("1.8")
    e = mpf(10)
    sr = (height / delta) / (720 * cos(radians(e)) * sin(radians(e)))
    print("tangential reference h=1700 delta=1.8")
    print(f"  SR({e}) = {sr}  float64 {float(sr)!r}")


if __name__ == "__main__":
    log_mapping_curve()
    blended_curve()
    tangential_reference()
