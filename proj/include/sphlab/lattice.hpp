#pragma once

// Lattice points on spheres { y in Z^d : |y|^2 = n } and in balls.
// Counting is exact integer arithmetic throughout; enumeration is recursive
// descent over coordinates with remaining-budget pruning.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

// Representations of m as j^2 with sign multiplicity: 1 for j=0, 2 for j>0.
inline std::vector<std::int64_t> shell_count_table_1d(std::int64_t nmax) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(nmax) + 1, 0);
    for (std::int64_t j = 0; j * j <= nmax; ++j) r[static_cast<std::size_t>(j * j)] = (j == 0) ? 1 : 2;
    return r;
}

// r_d(n) for all n <= nmax, built by dimension-by-dimension convolution with
// the 1-dimensional table. Cost O(d * nmax^{3/2}); counts are exact and
// overflow raises instead of wrapping.
inline std::vector<std::int64_t> shell_count_table(int d, std::int64_t nmax) {
    if (d < 1) throw std::invalid_argument("shell_count_table: d >= 1 required");
    if (nmax < 0) throw std::invalid_argument("shell_count_table: nmax >= 0 required");
    std::vector<std::int64_t> acc = shell_count_table_1d(nmax);
    for (int dim = 2; dim <= d; ++dim) {
        std::vector<std::int64_t> next(static_cast<std::size_t>(nmax) + 1, 0);
        for (std::int64_t j = 0; j * j <= nmax; ++j) {
            const std::int64_t mult = (j == 0) ? 1 : 2;
            const std::int64_t j2 = j * j;
            for (std::int64_t n = j2; n <= nmax; ++n) {
                next[static_cast<std::size_t>(n)] = checked_add(
                    next[static_cast<std::size_t>(n)],
                    checked_mul(mult, acc[static_cast<std::size_t>(n - j2)]));
            }
        }
        acc.swap(next);
    }
    return acc;
}

inline std::int64_t shell_count(int d, std::int64_t n) {
    return shell_count_table(d, n)[static_cast<std::size_t>(n)];
}

// Shared grow-only cache of the count tables; the experiment suites hit the
// same (d, nmax) ranges over and over.
inline std::shared_ptr<const std::vector<std::int64_t>> shell_count_table_cached(
    int d, std::int64_t nmax) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const std::vector<std::int64_t>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end() && static_cast<std::int64_t>(it->second->size()) > nmax)
        return it->second;
    auto fresh = std::make_shared<const std::vector<std::int64_t>>(shell_count_table(d, nmax));
    cache[d] = fresh;
    return fresh;
}

// All y with |y|^2 = n, stored flat (point i occupies [i*d, (i+1)*d)).
struct LatticeShell {
    int d = 0;
    std::int64_t n = 0;  // squared radius, n = lambda^2
    std::vector<std::int32_t> points;
    std::int64_t count = 0;

    double lambda() const { return std::sqrt(static_cast<double>(n)); }
    const std::int32_t* point(std::int64_t i) const { return points.data() + i * d; }
};

namespace detail {
inline std::int64_t isqrt_floor(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline void descend_shell(int d, std::int64_t rem, int coord, std::vector<std::int32_t>& prefix,
                          std::vector<std::int32_t>& out) {
    if (coord == d - 1) {
        // last coordinate must supply rem exactly
        const std::int64_t r = isqrt_floor(rem);
        if (r * r != rem) return;
        for (std::int64_t s = (r == 0 ? 1 : 0); s < 2; ++s) {
            out.insert(out.end(), prefix.begin(), prefix.end());
            out.push_back(static_cast<std::int32_t>(s == 0 ? r : -r));
        }
        return;
    }
    const std::int64_t r = isqrt_floor(rem);
    for (std::int64_t y = -r; y <= r; ++y) {
        prefix.push_back(static_cast<std::int32_t>(y));
        descend_shell(d, rem - y * y, coord + 1, prefix, out);
        prefix.pop_back();
    }
}
}  // namespace detail

inline constexpr std::int64_t default_enumeration_cap = 100'000'000;

inline LatticeShell enumerate_shell(int d, std::int64_t n,
                                    std::int64_t point_cap = default_enumeration_cap) {
    if (d < 1 || n < 0) throw std::invalid_argument("enumerate_shell: need d >= 1, n >= 0");
    LatticeShell shell;
    shell.d = d;
    shell.n = n;
    const std::int64_t predicted = shell_count(d, n);
    if (predicted > point_cap)
        throw size_limit_error("enumerate_shell: predicted count " + std::to_string(predicted) +
                               " exceeds cap " + std::to_string(point_cap));
    shell.points.reserve(static_cast<std::size_t>(predicted * d));
    std::vector<std::int32_t> prefix;
    prefix.reserve(static_cast<std::size_t>(d));
    detail::descend_shell(d, n, 0, prefix, shell.points);
    shell.count = static_cast<std::int64_t>(shell.points.size()) / d;
    return shell;
}

// All y with |y| <= radius; supports ball averages and maximal-function checks.
struct Ball {
    int d = 0;
    double radius = 0.0;
    std::vector<std::int32_t> points;
    std::int64_t count = 0;
    const std::int32_t* point(std::int64_t i) const { return points.data() + i * d; }
};

inline Ball enumerate_ball(int d, double radius, std::int64_t point_cap = default_enumeration_cap) {
    if (d < 1 || radius < 0) throw std::invalid_argument("enumerate_ball: need d >= 1, radius >= 0");
    Ball ball;
    ball.d = d;
    ball.radius = radius;
    const auto n = static_cast<std::int64_t>(std::floor(radius * radius + 1e-9));
    auto table = shell_count_table(d, n);
    std::int64_t total = 0;
    for (auto c : table) total = checked_add(total, c);
    if (total > point_cap) throw size_limit_error("enumerate_ball: ball too large");
    ball.points.reserve(static_cast<std::size_t>(total * d));
    for (std::int64_t m = 0; m <= n; ++m) {
        if (table[static_cast<std::size_t>(m)] == 0) continue;
        auto shell = enumerate_shell(d, m, point_cap);
        ball.points.insert(ball.points.end(), shell.points.begin(), shell.points.end());
    }
    ball.count = static_cast<std::int64_t>(ball.points.size()) / d;
    return ball;
}

// Least-squares slope of log N(lambda) against log lambda over the nonempty
// shells with n in [n_min, n_max]. The theorem regime is d >= 5; smaller d is
// allowed and simply reflects the irregular shell counts there.
inline double shell_growth_fit(int d, std::int64_t n_min, std::int64_t n_max) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("shell_growth_fit: bad range");
    auto table = shell_count_table(d, n_max);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::int64_t m = 0;
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        const auto c = table[static_cast<std::size_t>(n)];
        if (c == 0) continue;
        const double x = 0.5 * std::log(static_cast<double>(n));  // log lambda
        const double y = std::log(static_cast<double>(c));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 3) throw std::invalid_argument("shell_growth_fit: fewer than 3 nonempty shells");
    const double denom = m * sxx - sx * sx;
    if (denom <= 0) throw std::invalid_argument("shell_growth_fit: degenerate fit");
    return (m * sxy - sx * sy) / denom;
}

}  // namespace sphlab
