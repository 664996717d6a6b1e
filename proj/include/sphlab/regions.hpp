#pragma once

// Exponent regions in the (1/p, 1/r) square: the improving region, the
// interior restricted region it is interpolated from, and the continuous
// benchmark region, plus the necessary condition that bounds them from
// outside.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

struct ExponentPair {
    double ip = 0.0;  // 1/p
    double ir = 0.0;  // 1/r
};

struct Region {
    std::string name;  // "R", "S", or "T"
    int d = 0;
    std::vector<ExponentPair> vertices;
};

inline Region make_region(const std::string& name, int d) {
    if (d < 2) throw std::invalid_argument("make_region: d >= 2 required");
    const double dd = static_cast<double>(d);
    Region reg;
    reg.name = name;
    reg.d = d;
    if (name == "R") {
        reg.vertices = {{0.0, 1.0}, {(dd - 2) / dd, 2 / dd}, {(dd - 2) / dd, (dd - 2) / dd}};
    } else if (name == "S") {
        reg.vertices = {{2 / dd, (dd - 2) / dd}, {(dd - 2) / dd, 2 / dd}, {(dd - 2) / dd, (dd - 2) / dd}};
    } else if (name == "T") {
        reg.vertices = {{0.0, 1.0},
                        {(dd - 1) / dd, 1 / dd},
                        {(dd - 1) / dd, (dd - 1) / dd},
                        {(dd * dd - dd) / (dd * dd + 1), (dd * dd - dd + 2) / (dd * dd + 1)}};
    } else {
        throw std::invalid_argument("make_region: name must be R, S, or T");
    }
    return reg;
}

namespace detail {
inline double cross(const ExponentPair& o, const ExponentPair& a, const ExponentPair& b) {
    return (a.ip - o.ip) * (b.ir - o.ir) - (a.ir - o.ir) * (b.ip - o.ip);
}

// Monotone-chain convex hull, counterclockwise, no repeated endpoint.
inline std::vector<ExponentPair> convex_hull(std::vector<ExponentPair> pts) {
    std::sort(pts.begin(), pts.end(), [](const ExponentPair& a, const ExponentPair& b) {
        return a.ip < b.ip || (a.ip == b.ip && a.ir < b.ir);
    });
    std::vector<ExponentPair> h;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = h.size();
        for (const auto& p : pts) {
            while (h.size() >= base + 2 && cross(h[h.size() - 2], h[h.size() - 1], p) <= 0)
                h.pop_back();
            h.push_back(p);
        }
        h.pop_back();
        std::reverse(pts.begin(), pts.end());
    }
    return h;
}
}  // namespace detail

// Strict interior of the convex hull of the region's vertices.
inline bool region_contains(const Region& region, const ExponentPair& pair,
                            double boundary_eps = 1e-12) {
    auto hull = detail::convex_hull(region.vertices);
    if (hull.size() < 3) return false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        if (detail::cross(a, b, pair) <= boundary_eps) return false;
    }
    return true;
}

// max{1/p + 2/d, 1/r + 2/(pd)} <= 1; boundary counts as satisfied.
inline bool necessary_condition(const ExponentPair& pair, int d, double eps = 1e-12) {
    const double dd = static_cast<double>(d);
    const double first = pair.ip + 2.0 / dd;
    const double second = pair.ir + 2.0 * pair.ip / dd;
    return std::max(first, second) <= 1.0 + eps;
}

}  // namespace sphlab
