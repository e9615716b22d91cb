// Copyright 2026 The vafr Authors
// SPDX-License-Identifier: Apache-2.0

// Independent oracles used only by tests: adaptive Simpson quadrature
// and a dense-grid maximizer.  Deliberately written against the raw
// integrand, not against the library's closed forms.

#pragma once

#include <cmath>
#include <functional>

namespace vafr::testing {

inline double simpson(const std::function<double(double)> &f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)> &f, double a, double b,
                                   double whole, double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, c, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, c, b, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)> &f, double a, double b,
                               double tol = 1e-10, int depth = 40) {
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, depth);
}

// Coarse scan at the given step; returns the best abscissa.
inline double grid_argmax(const std::function<double(double)> &f, double a, double b,
                          double step) {
    double best_x = a, best = f(a);
    for (double x = a + step; x < b; x += step) {
        const double y = f(x);
        if (y > best) {
            best = y;
            best_x = x;
        }
    }
    return best_x;
}

}  // namespace vafr::testing
