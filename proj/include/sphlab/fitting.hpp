#pragma once

// Least-squares exponent fits on dyadic data: slope of log2(value) against
// log2(scale). At least three positive points are required.

#include <cmath>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

inline double fit_log2_slope(const std::vector<std::pair<double, double>>& scale_value) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (auto [s, v] : scale_value) {
        if (!(s > 0) || !(v > 0)) continue;
        const double x = std::log2(s), y = std::log2(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 3) throw std::invalid_argument("fit_log2_slope: need at least 3 positive points");
    const double denom = m * sxx - sx * sx;
    if (!(denom > 0)) throw std::invalid_argument("fit_log2_slope: degenerate abscissae");
    return (m * sxy - sx * sy) / denom;
}

}  // namespace sphlab
