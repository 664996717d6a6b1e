#pragma once

// Fourier transform of the normalized surface measure of a sphere of radius
// lambda in R^d, via the Bessel closed form. Normalization: value 1 at xi = 0.

#include <cmath>

#include "sphlab/bumps.hpp"
#include "sphlab/common.hpp"

namespace sphlab {

inline double sphere_surface_area(int d) {
    return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
}

namespace detail {
// sin z / z - cos z, series near 0 to dodge the cancellation.
inline double j32_core(double z) {
    if (z < 0.1) {
        const double z2 = z * z;
        // sum_{k>=1} (-1)^{k+1} z^{2k} (2k) / (2k+1)!
        return z2 * (1.0 / 3.0 + z2 * (-1.0 / 30.0 + z2 * (1.0 / 840.0 + z2 * (-1.0 / 45360.0))));
    }
    return std::sin(z) / z - std::cos(z);
}
}  // namespace detail

// Radial profile at t = lambda * |xi|.
inline double sphere_hat_radial(int d, double t) {
    if (d < 2) throw std::invalid_argument("sphere_hat_radial: d >= 2 required");
    if (t == 0.0) return 1.0;
    const double nu = 0.5 * (d - 2);
    const double z = two_pi * t;
    double J;
    if (d == 3) {
        J = std::sqrt(2.0 / (pi * z)) * std::sin(z);
    } else if (d == 5) {
        J = std::sqrt(2.0 / (pi * z)) * detail::j32_core(z);
    } else {
        J = std::cyl_bessel_j(nu, z);
    }
    return std::tgamma(0.5 * d) * std::pow(pi * t, -nu) * J;
}

inline double sphere_hat(int d, double lambda, const std::vector<double>& xi) {
    return sphere_hat_radial(d, lambda * norm2(xi));
}

}  // namespace sphlab
