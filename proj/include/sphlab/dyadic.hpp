#pragma once

// Shifted dyadic cubes on Z^d. A cube of generation k has side 2^k; the grid
// family carries per-axis shifts from {0, +1/3, -1/3} with the sign
// alternating by generation, which makes each shifted family a nested grid.
// Corners are stored tripled (corner3 = 3 * real corner) so the thirds are
// exact integers. Tripled cubes 3Q (side 3 * 2^k) appear as search roots.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

struct DyadicCube {
    int d = 0;
    std::int64_t side = 1;              // 2^k, or 3 * 2^k for tripled roots
    std::vector<std::int64_t> corner3;  // 3 * lower corner per axis
    int gen = 0;                        // generation bookkeeping in collections
    int shift_id = 0;                   // base-3 digits give the per-axis shift

    // lowest lattice point per axis: ceil(corner3 / 3)
    std::int64_t lo(int axis) const {
        const std::int64_t c = corner3[static_cast<std::size_t>(axis)];
        return c >= 0 ? (c + 2) / 3 : -((-c) / 3);
    }
    std::int64_t hi(int axis) const { return lo(axis) + side; }  // exclusive

    // Every axis interval of length `side` with thirds endpoints holds
    // exactly `side` lattice points.
    std::int64_t lattice_points() const {
        std::int64_t n = 1;
        for (int i = 0; i < d; ++i) n = checked_mul(n, side);
        return n;
    }

    bool contains_point(const std::vector<std::int64_t>& x) const {
        for (int i = 0; i < d; ++i) {
            const std::int64_t t = x[static_cast<std::size_t>(i)];
            if (t < lo(i) || t >= hi(i)) return false;
        }
        return true;
    }

    // Geometric containment of real cubes (thirds-exact).
    bool contains_cube(const DyadicCube& q) const {
        for (int i = 0; i < d; ++i) {
            if (q.corner3[static_cast<std::size_t>(i)] < corner3[static_cast<std::size_t>(i)]) return false;
            if (q.corner3[static_cast<std::size_t>(i)] + 3 * q.side >
                corner3[static_cast<std::size_t>(i)] + 3 * side)
                return false;
        }
        return true;
    }

    bool intersects_cube(const DyadicCube& q) const {
        for (int i = 0; i < d; ++i) {
            if (q.corner3[static_cast<std::size_t>(i)] + 3 * q.side <= corner3[static_cast<std::size_t>(i)])
                return false;
            if (corner3[static_cast<std::size_t>(i)] + 3 * side <= q.corner3[static_cast<std::size_t>(i)])
                return false;
        }
        return true;
    }

    bool same_cube(const DyadicCube& q) const {
        return side == q.side && corner3 == q.corner3;
    }

    DyadicCube tripled() const {
        DyadicCube t = *this;
        for (auto& c : t.corner3) c -= 3 * side;
        t.side = 3 * side;
        return t;
    }

    std::string describe() const {
        std::string s = "side " + std::to_string(side) + " corner3 (";
        for (int i = 0; i < d; ++i)
            s += std::to_string(corner3[static_cast<std::size_t>(i)]) + (i + 1 < d ? "," : ")");
        return s;
    }
};

// Shift digit of `shift_id` on a given axis: 0, 1, or 2 (meaning 0, +1/3,
// -1/3 of the side, sign alternating with the generation parity).
inline int shift_digit(int shift_id, int axis) {
    for (int i = 0; i < axis; ++i) shift_id /= 3;
    return shift_id % 3;
}

inline std::int64_t shift_offset3(int digit, int k, std::int64_t side) {
    // tripled offset: (-1)^k * side * {0, +1, -1}
    const std::int64_t sgn = (k % 2 == 0) ? 1 : -1;
    if (digit == 1) return sgn * side;
    if (digit == 2) return -sgn * side;
    return 0;
}

// Cube of generation k in the given shifted grid with index vector m.
inline DyadicCube cube_at(int d, int k, const std::vector<std::int64_t>& m, int shift_id = 0) {
    DyadicCube q;
    q.d = d;
    q.side = std::int64_t{1} << k;
    q.gen = k;
    q.shift_id = shift_id;
    q.corner3.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        q.corner3[static_cast<std::size_t>(i)] =
            3 * q.side * m[static_cast<std::size_t>(i)] + shift_offset3(shift_digit(shift_id, i), k, q.side);
    return q;
}

// All generation-k cubes of the grid fully contained in `region`.
// The index ranges are solved per axis; the count can be large, so this is
// meant for regions a bounded multiple of 2^k wide.
inline std::vector<DyadicCube> cubes_inside(const DyadicCube& region, int k, int shift_id = 0) {
    const int d = region.d;
    const std::int64_t side = std::int64_t{1} << k;
    std::vector<std::int64_t> mlo(static_cast<std::size_t>(d)), mhi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const std::int64_t off = shift_offset3(shift_digit(shift_id, i), k, side);
        const std::int64_t lo3 = region.corner3[static_cast<std::size_t>(i)];
        const std::int64_t hi3 = lo3 + 3 * region.side;
        // need 3*side*m + off >= lo3 and 3*side*m + off + 3*side <= hi3
        const std::int64_t num_lo = lo3 - off;
        const std::int64_t num_hi = hi3 - off - 3 * side;
        mlo[static_cast<std::size_t>(i)] =
            num_lo >= 0 ? (num_lo + 3 * side - 1) / (3 * side) : -((-num_lo) / (3 * side));
        mhi[static_cast<std::size_t>(i)] = num_hi >= 0 ? num_hi / (3 * side)
                                                       : -(((-num_hi) + 3 * side - 1) / (3 * side));
        if (mhi[static_cast<std::size_t>(i)] < mlo[static_cast<std::size_t>(i)]) return {};
    }
    std::vector<DyadicCube> out;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0), ext(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        ext[static_cast<std::size_t>(i)] = mhi[static_cast<std::size_t>(i)] - mlo[static_cast<std::size_t>(i)] + 1;
    std::vector<std::int64_t> m(static_cast<std::size_t>(d));
    do {
        for (int i = 0; i < d; ++i)
            m[static_cast<std::size_t>(i)] = mlo[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
        out.push_back(cube_at(d, k, m, shift_id));
    } while (next_index(idx, ext));
    return out;
}

// The 2^d grid children of a generation-k cube (same shifted grid).
inline std::vector<DyadicCube> cube_children(const DyadicCube& q) {
    if (q.gen <= 0) return {};
    return cubes_inside(q, q.gen - 1, q.shift_id);
}

// Unshifted dyadic cube E = [0, 2^k)^d whose tripled copy [-2^k, 2^{k+1})^d
// contains the box [lo, hi] (inclusive corners).
inline DyadicCube root_cube_covering(int d, const std::vector<std::int64_t>& lo,
                                     const std::vector<std::int64_t>& hi) {
    for (int k = 0; k < 61; ++k) {
        const std::int64_t side = std::int64_t{1} << k;
        bool ok = true;
        for (int i = 0; i < d && ok; ++i)
            ok = -side <= lo[static_cast<std::size_t>(i)] &&
                 hi[static_cast<std::size_t>(i)] < 2 * side;
        if (ok) return cube_at(d, k, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0), 0);
    }
    throw std::invalid_argument("root_cube_covering: box too large");
}

}  // namespace sphlab
