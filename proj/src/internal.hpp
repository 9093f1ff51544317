// Helpers shared by the solvers. Not installed.

#pragma once

#include <algorithm>
#include <cstddef>

#include "denoise/models.hpp"

namespace denoise::detail {

/// Average noise rate when client n plays x and everyone else keeps their entry. No box check.
inline double xbar_with(const GameInstance& instance, const StrategyProfile& profile, std::size_t n, double x) {
    double weighted = 0.0;
    for (std::size_t m = 0; m < instance.size(); ++m)
        weighted += instance.clients()[m].d * (m == n ? x : profile[m]);
    return weighted / instance.total_d();
}

/// Point at which f' is evaluated for client n: never below the cost floor.
inline double derivative_point(const GameInstance& instance, std::size_t n, double x) {
    return std::max(x, instance.cost().floor(instance.clients()[n].epsilon));
}

/// Root of a strictly decreasing h on [lo, hi] with h(lo) > 0 >= h(hi), bisected to machine precision.
template <class H>
double bisect_decreasing(H&& h, double lo, double hi) {
    for (int i = 0; i < 400; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (h(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo + 0.5 * (hi - lo);
}

/// Zero of a strictly decreasing h on (0, inf): the bracket grows outward from `start`.
template <class H>
double unbounded_zero(H&& h, double start) {
    double lo = start;
    double hi = start;
    for (int i = 0; i < 2000 && !(h(lo) > 0.0); ++i) lo *= 0.5;
    for (int i = 0; i < 2000 && h(hi) > 0.0; ++i) hi *= 2.0;
    if (lo == hi) return lo;
    return bisect_decreasing(h, lo, hi);
}

}  // namespace denoise::detail
