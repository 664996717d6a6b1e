#pragma once

// Frequency projections on the torus: the annular family psi_{N/Lambda}
// periodized over the rationals l/q, and the low-pass variant with the wide
// bump window. Both are Fourier multipliers applied through the DFT.

#include <cmath>

#include "sphlab/bumps.hpp"
#include "sphlab/fft.hpp"
#include "sphlab/grid.hpp"
#include "sphlab/symbols.hpp"

namespace sphlab {

namespace detail {
inline void check_torus(const GridFunction& f, std::int64_t min_side, const char* who) {
    if (f.geom != Geometry::torus) throw std::invalid_argument(std::string(who) + ": torus required");
    for (auto e : f.extent)
        if (e < min_side)
            throw std::invalid_argument(std::string(who) + ": torus side below the aliasing guard");
}
}  // namespace detail

// Annulus profile at scale s: supported in s/2 <= |u| <= 2s.
inline double lp_psi_scale(double s, double r) { return lp_chi(r, s) - lp_chi(r, 0.5 * s); }

// Multiplier of P^q_{N/Lambda}: sum over l in Z^d of psi_{N/Lambda}(xi - l/q).
inline double band_multiplier(const std::vector<double>& xi, std::int64_t N, std::int64_t Lambda,
                              std::int64_t q) {
    const double s = static_cast<double>(N) / static_cast<double>(Lambda);
    const double R = 2.0 * s;  // outer radius of the annulus
    double m = 0.0;
    std::vector<std::int64_t> lo(xi.size()), hi(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        lo[i] = static_cast<std::int64_t>(std::ceil((xi[i] - R) * static_cast<double>(q)));
        hi[i] = static_cast<std::int64_t>(std::floor((xi[i] + R) * static_cast<double>(q)));
    }
    std::vector<std::int64_t> l = lo, ext(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) ext[i] = hi[i] - lo[i] + 1;
    for (auto e : ext)
        if (e <= 0) return 0.0;
    std::vector<std::int64_t> idx(xi.size(), 0);
    std::vector<double> u(xi.size());
    do {
        double r2 = 0.0;
        for (std::size_t i = 0; i < xi.size(); ++i) {
            u[i] = xi[i] - static_cast<double>(lo[i] + idx[i]) / static_cast<double>(q);
            r2 += u[i] * u[i];
        }
        m += lp_psi_scale(s, std::sqrt(r2));
    } while (next_index(idx, ext));
    return m;
}

// P^q_{N/Lambda} f; requires N <= Lambda / q and torus side >= 8 Lambda.
inline GridFunction project_band(const GridFunction& f, std::int64_t N, std::int64_t Lambda,
                                 std::int64_t q) {
    if (N < 1 || Lambda < 1 || q < 1 || N * q > Lambda)
        throw std::invalid_argument("project_band: need 1 <= N <= Lambda/q");
    detail::check_torus(f, 8 * Lambda, "project_band");
    return apply_multiplier(f, [&](const std::vector<double>& xi) {
        return band_multiplier(xi, N, Lambda, q);
    });
}

// Multiplier of P^q_{<= cap}: around each rational l/q, the telescoped sum of
// the annuli up to cap, windowed by the wide bump (at most one l contributes).
inline double lowpass_multiplier(const std::vector<double>& xi, double cap, std::int64_t q) {
    const auto l = nearest_rational(xi, q);
    std::vector<double> u(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i)
        u[i] = xi[i] - static_cast<double>(l[i]) / static_cast<double>(q);
    const double window = bump_wide_q(u, q);
    if (window == 0.0) return 0.0;
    return lp_lowpass(cap, norm2(u)) * window;
}

inline GridFunction project_lowpass(const GridFunction& f, double cap, std::int64_t q) {
    if (q < 1 || !(cap > 0)) throw std::invalid_argument("project_lowpass: need q >= 1, cap > 0");
    detail::check_torus(f, 8 * q, "project_lowpass");
    return apply_multiplier(f, [&](const std::vector<double>& xi) {
        return lowpass_multiplier(xi, cap, q);
    });
}

}  // namespace sphlab
