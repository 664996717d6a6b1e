#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphlab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// e^{2*pi*i*t} with the fractional part taken first, so that huge rational
// phases (|n|^2 a / q and lambda^2 tau) do not lose precision in sin/cos.
inline cplx unit_phase(double turns) {
    double t = turns - std::floor(turns);
    double ang = two_pi * t;
    return {std::cos(ang), std::sin(ang)};
}

struct quadrature_error : std::runtime_error {
    double achieved;  // error estimate at the point of giving up
    quadrature_error(const std::string& what, double achieved_)
        : std::runtime_error(what), achieved(achieved_) {}
};

struct size_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Odometer-style iteration over {0,...,n_1-1} x ... x {0,...,n_d-1}.
// Returns false once the index has wrapped back to all-zeros.
inline bool next_index(std::vector<std::int64_t>& idx, const std::vector<std::int64_t>& extents) {
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < extents[i]) return true;
        idx[i] = 0;
    }
    return false;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer product overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer sum overflow");
    return r;
}

}  // namespace sphlab
