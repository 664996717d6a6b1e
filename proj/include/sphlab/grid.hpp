#pragma once

// Dense complex functions on a box in Z^d (finitely supported, zero outside)
// or on a periodic torus of given extent per axis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

enum class Geometry { box, torus };

struct GridFunction {
    int d = 0;
    Geometry geom = Geometry::box;
    std::vector<std::int64_t> corner;  // lower corner (box); ignored for torus
    std::vector<std::int64_t> extent;  // points per axis
    std::vector<cplx> values;          // row-major

    std::int64_t size() const {
        std::int64_t s = 1;
        for (auto e : extent) s = checked_mul(s, e);
        return s;
    }

    static GridFunction zeros(int d, Geometry geom, std::vector<std::int64_t> extent,
                              std::vector<std::int64_t> corner = {}) {
        GridFunction f;
        f.d = d;
        f.geom = geom;
        f.extent = std::move(extent);
        f.corner = corner.empty() ? std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)
                                  : std::move(corner);
        if (static_cast<int>(f.extent.size()) != d || static_cast<int>(f.corner.size()) != d)
            throw std::invalid_argument("GridFunction: extent/corner dimension mismatch");
        f.values.assign(static_cast<std::size_t>(f.size()), cplx{0.0, 0.0});
        return f;
    }

    static GridFunction torus(int d, std::int64_t side) {
        return zeros(d, Geometry::torus, std::vector<std::int64_t>(static_cast<std::size_t>(d), side));
    }

    std::int64_t flat(const std::vector<std::int64_t>& idx) const {
        std::int64_t f = 0;
        for (int i = 0; i < d; ++i) f = f * extent[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
        return f;
    }

    // Point access in lattice coordinates. Torus wraps; box reads outside its
    // extent return 0 and writes outside are an error.
    cplx at(const std::vector<std::int64_t>& x) const {
        std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            std::int64_t t = x[static_cast<std::size_t>(i)] - corner[static_cast<std::size_t>(i)];
            const std::int64_t e = extent[static_cast<std::size_t>(i)];
            if (geom == Geometry::torus) {
                t %= e;
                if (t < 0) t += e;
            } else if (t < 0 || t >= e) {
                return {0.0, 0.0};
            }
            idx[static_cast<std::size_t>(i)] = t;
        }
        return values[static_cast<std::size_t>(flat(idx))];
    }

    cplx& ref(const std::vector<std::int64_t>& x) {
        std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            std::int64_t t = x[static_cast<std::size_t>(i)] - corner[static_cast<std::size_t>(i)];
            const std::int64_t e = extent[static_cast<std::size_t>(i)];
            if (geom == Geometry::torus) {
                t %= e;
                if (t < 0) t += e;
            } else if (t < 0 || t >= e) {
                throw std::out_of_range("GridFunction::ref outside box");
            }
            idx[static_cast<std::size_t>(i)] = t;
        }
        return values[static_cast<std::size_t>(flat(idx))];
    }
};

inline double lp_norm(const GridFunction& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p >= 1 required");
    if (std::isinf(p)) {
        double m = 0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0;
    for (const auto& v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

inline double weighted_l2_norm(const GridFunction& f, const GridFunction& w) {
    if (f.values.size() != w.values.size() || f.d != w.d)
        throw std::invalid_argument("weighted_l2_norm: shape mismatch");
    double s = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        s += std::norm(f.values[i]) * std::real(w.values[i]);
    return std::sqrt(s);
}

inline GridFunction point_mass(int d, Geometry geom, const std::vector<std::int64_t>& extent,
                          std::vector<std::int64_t> corner = {}) {
    auto f = GridFunction::zeros(d, geom, extent, std::move(corner));
    f.ref(std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)) = 1.0;
    return f;
}

inline GridFunction random_signs(int d, Geometry geom, const std::vector<std::int64_t>& extent,
                                 std::uint64_t seed) {
    auto f = GridFunction::zeros(d, geom, extent);
    std::mt19937_64 rng(seed);
    for (auto& v : f.values) v = (rng() & 1u) ? 1.0 : -1.0;
    return f;
}

}  // namespace sphlab
