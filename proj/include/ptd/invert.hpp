#pragma once

// Bracketed inversion of a strictly increasing scalar map.

#include <cmath>
#include <limits>
#include <sstream>

#include "ptd/errors.hpp"

namespace ptd {

struct InversionTolerance {
    /// Stop once |f(r) - y| <= value_abs. Zero disables the test.
    double value_abs = 1e-12;
    /// Stop once the bracket is narrower than width_rel * max(width_floor, |r|).
    double width_rel = 1e-14;
    double width_floor = 1.0;
};

/// Upper end of automatic bracket expansion.
inline constexpr double kBracketLimit = 1e300;

/// Solves f(r) = y for r in [lo, hi], doubling hi while f(hi) < y.
///
/// The search is regula falsi with the Illinois modification, falling back to
/// bisection whenever interpolation fails to halve the bracket. Bisection is
/// geometric when the bracket spans several decades, so roots far from the
/// initial guess are still found in O(log log) steps per decade.
///
/// Throws InversionRangeError when y < f(lo) or when no hi <= 1e300 attains y.
template <class F>
double invert_monotone(F&& f, double y, double lo, double hi,
                       const InversionTolerance& tol = {}) {
    if (!std::isfinite(y) || !std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        std::ostringstream msg;
        msg << "invert_monotone: invalid request y=" << y << " on [" << lo << ", " << hi << "]";
        throw InversionRangeError(msg.str());
    }
    double f_lo = f(lo);
    if (y < f_lo) {
        std::ostringstream msg;
        msg << "invert_monotone: target " << y << " lies below f(lo)=" << f_lo;
        throw InversionRangeError(msg.str());
    }
    if (f_lo == y) return lo;

    double f_hi = f(hi);
    while (f_hi < y) {
        if (hi > kBracketLimit) {
            std::ostringstream msg;
            msg << "invert_monotone: target " << y << " is not attained below " << kBracketLimit
                << " (sup f ~ " << f_hi << ")";
            throw InversionRangeError(msg.str());
        }
        lo = hi;
        f_lo = f_hi;
        hi = (hi == 0.0) ? 1.0 : 2.0 * hi;
        f_hi = f(hi);
    }
    if (f_hi == y) return hi;

    auto converged = [&](double a, double b) {
        const double scale = std::fmax(tol.width_floor, std::fmax(std::fabs(a), std::fabs(b)));
        return b - a <= tol.width_rel * scale;
    };

    // Illinois weights for the retained endpoint.
    double g_lo = f_lo - y;
    double g_hi = f_hi - y;
    double res_lo = -g_lo;
    double res_hi = g_hi;
    int side = 0;
    double width_before = hi - lo;
    int since_halving = 0;

    constexpr int kMaxIterations = 4000;
    for (int it = 0; it < kMaxIterations; ++it) {
        if (converged(lo, hi)) break;

        double x;
        if (since_halving >= 2) {
            if (lo > 0.0 && hi > 8.0 * lo) {
                x = std::sqrt(lo) * std::sqrt(hi);
            } else if (lo == 0.0 && hi > 1e-3 && res_hi > 8.0 * res_lo) {
                // Root near the left end of a bracket anchored at zero.
                x = hi * 1e-3;
            } else {
                x = lo + 0.5 * (hi - lo);
            }
            since_halving = 0;
            width_before = hi - lo;
        } else {
            x = lo - g_lo * (hi - lo) / (g_hi - g_lo);
            if (!(x > lo && x < hi)) x = lo + 0.5 * (hi - lo);
        }
        if (x <= lo || x >= hi) break;  // bracket is down to adjacent doubles

        const double fx = f(x);
        const double gx = fx - y;
        if (gx == 0.0) return x;
        if (tol.value_abs > 0.0 && std::fabs(gx) <= tol.value_abs) return x;

        if (gx < 0.0) {
            lo = x;
            g_lo = gx;
            res_lo = -gx;
            if (side == -1) g_hi *= 0.5;
            side = -1;
        } else {
            hi = x;
            g_hi = gx;
            res_hi = gx;
            if (side == 1) g_lo *= 0.5;
            side = 1;
        }
        if (hi - lo <= 0.5 * width_before) {
            width_before = hi - lo;
            since_halving = 0;
        } else {
            ++since_halving;
        }
    }
    // Both ends bracket the root; report the one with smaller residual.
    return (res_lo <= res_hi) ? lo : hi;
}

}  // namespace ptd
