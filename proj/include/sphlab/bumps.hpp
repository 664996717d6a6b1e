#pragma once

// Smooth cutoff profiles: coordinate-product plateau bumps and the radial
// Littlewood-Paley family. All transitions use the standard exp(-1/x) glue,
// so the profiles are C^infinity with exact plateaus and exact supports.

#include <cmath>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

// 0 for x <= 0, 1 for x >= 1, smooth and strictly monotone in between.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double h0 = std::exp(-1.0 / x);
    const double h1 = std::exp(-1.0 / (1.0 - x));
    return h0 / (h0 + h1);
}

// 1 on [-plateau, plateau], 0 outside (-support, support).
inline double plateau_profile(double t, double plateau, double support) {
    const double u = std::abs(t);
    if (u <= plateau) return 1.0;
    if (u >= support) return 0.0;
    return smooth_step((support - u) / (support - plateau));
}

// Phi: identically 1 on [-1/8,1/8]^d, supported in [-1/4,1/4]^d.
inline double bump(const std::vector<double>& xi) {
    double v = 1.0;
    for (double t : xi) {
        v *= plateau_profile(t, 0.125, 0.25);
        if (v == 0.0) return 0.0;
    }
    return v;
}

// Phi_q(xi) = Phi(q xi): plateau |xi|_inf <= 1/(8q), support |xi|_inf < 1/(4q),
// so the translates centered at the rationals l/q have disjoint supports.
inline double bump_q(const std::vector<double>& xi, std::int64_t q) {
    double v = 1.0;
    for (double t : xi) {
        v *= plateau_profile(t * static_cast<double>(q), 0.125, 0.25);
        if (v == 0.0) return 0.0;
    }
    return v;
}

// Wide variant: 1 on [-1/4,1/4]^d, supported in [-3/8,3/8]^d.
inline double bump_wide(const std::vector<double>& xi) {
    double v = 1.0;
    for (double t : xi) {
        v *= plateau_profile(t, 0.25, 0.375);
        if (v == 0.0) return 0.0;
    }
    return v;
}

inline double bump_wide_q(const std::vector<double>& xi, std::int64_t q) {
    double v = 1.0;
    for (double t : xi) {
        v *= plateau_profile(t * static_cast<double>(q), 0.25, 0.375);
        if (v == 0.0) return 0.0;
    }
    return v;
}

// Radial low-pass profile: 1 for |xi| <= s, 0 for |xi| >= 2s.
inline double lp_chi(double r, double s) { return plateau_profile(r, s, 2.0 * s); }

// psi_{2^k}(xi) = chi(|xi|; 2^k) - chi(|xi|; 2^{k-1}), supported in the
// annulus 2^{k-1} <= |xi| <= 2^{k+1}; the family telescopes to 1 off 0.
inline double lp_psi(int k, double r) {
    return lp_chi(r, std::ldexp(1.0, k)) - lp_chi(r, std::ldexp(1.0, k - 1));
}

inline double norm2(const std::vector<double>& xi) {
    double s = 0.0;
    for (double t : xi) s += t * t;
    return std::sqrt(s);
}

inline double lp_psi(int k, const std::vector<double>& xi) { return lp_psi(k, norm2(xi)); }

// sum over 2^k <= cap of psi_{2^k}, evaluated in telescoped closed form
// chi(|xi|; 2^K). The closed form extends the sum continuously across xi = 0,
// where a constant input is meant to pass through the projection untouched.
inline double lp_lowpass(double cap, double r) {
    if (cap <= 0.0) return 0.0;
    const int K = static_cast<int>(std::floor(std::log2(cap) + 1e-12));
    return lp_chi(r, std::ldexp(1.0, K));
}

}  // namespace sphlab
