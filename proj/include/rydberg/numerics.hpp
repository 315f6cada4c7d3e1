#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "units.hpp"

namespace rydberg::numerics {

struct Minimum {
    double x = 0.0;
    double value = 0.0;
};

/// Brent minimization of f over x in [lo, hi], searched in ln x so that a
/// bracket spanning many decades is handled uniformly. f must be unimodal in ln x.
template <class F>
Minimum minimize_log(F&& f, double lo, double hi) {
    require(lo > 0.0 && hi > lo, "minimize_log needs 0 < lo < hi");
    const int bits = std::numeric_limits<double>::digits / 2;
    // Brent's tolerance is relative to |u|; a second pass re-centred on the
    // first estimate makes it relative to x instead.
    double centre = std::sqrt(lo) * std::sqrt(hi);
    double half_width = 0.5 * std::log(hi / lo);
    Minimum best;
    for (int pass = 0; pass < 2; ++pass) {
        auto g = [&](double u) { return f(centre * std::exp(u)); };
        std::uintmax_t max_iter = 500;
        auto [u, value] = boost::math::tools::brent_find_minima(g, -half_width, half_width, bits, max_iter);
        best = {centre * std::exp(u), value};
        centre = best.x;
        half_width = std::min(half_width, 0.5);
    }
    return best;
}

/// Root of f on [lo, hi] where f(lo) and f(hi) differ in sign, to the given relative tolerance.
template <class F>
double find_root(F&& f, double lo, double hi, double rel_tol = 1e-12) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    require(std::signbit(flo) != std::signbit(fhi), "no sign change in root bracket");
    std::uintmax_t max_iter = 200;
    auto tol = [rel_tol](double a, double b) { return std::abs(b - a) <= rel_tol * std::min(std::abs(a), std::abs(b)); };
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
    return 0.5 * (a + b);
}

}  // namespace rydberg::numerics
