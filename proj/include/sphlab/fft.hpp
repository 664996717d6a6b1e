#pragma once

// d-dimensional DFT on the torus, backed by FFTW. Forward transform uses the
// e(-x.xi) convention so that dft(f)[j] = sum_x f(x) e(-x . j/M); the inverse
// divides by the grid size. Plan creation is serialized (FFTW requirement).

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "sphlab/common.hpp"
#include "sphlab/grid.hpp"

namespace sphlab {

namespace detail {
inline std::mutex& fftw_plan_mutex() {
    static std::mutex mu;
    return mu;
}

inline void run_fft(const std::vector<std::int64_t>& extent, std::vector<cplx>& data, int sign) {
    std::vector<int> dims(extent.begin(), extent.end());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                             reinterpret_cast<fftw_complex*>(data.data()),
                             reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
}
}  // namespace detail

inline std::vector<cplx> dft(const GridFunction& f) {
    if (f.geom != Geometry::torus) throw std::invalid_argument("dft: torus geometry required");
    std::vector<cplx> out = f.values;
    detail::run_fft(f.extent, out, FFTW_FORWARD);
    return out;
}

inline GridFunction idft(int d, const std::vector<std::int64_t>& extent, std::vector<cplx> spec) {
    GridFunction f = GridFunction::zeros(d, Geometry::torus, extent);
    detail::run_fft(extent, spec, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(f.size());
    for (std::size_t i = 0; i < spec.size(); ++i) f.values[i] = spec[i] * scale;
    return f;
}

// Frequency of DFT bin j on an axis of M points, reduced to [-1/2, 1/2).
inline double bin_frequency(std::int64_t j, std::int64_t M) {
    return (2 * j < M) ? static_cast<double>(j) / static_cast<double>(M)
                       : static_cast<double>(j - M) / static_cast<double>(M);
}

// Applies a Fourier multiplier m(xi) on the torus.
template <class M>
inline GridFunction apply_multiplier(const GridFunction& f, M&& multiplier) {
    auto spec = dft(f);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(f.d), 0);
    std::vector<double> xi(static_cast<std::size_t>(f.d));
    std::size_t flat = 0;
    do {
        for (int i = 0; i < f.d; ++i)
            xi[static_cast<std::size_t>(i)] =
                bin_frequency(idx[static_cast<std::size_t>(i)], f.extent[static_cast<std::size_t>(i)]);
        spec[flat] *= multiplier(xi);
        ++flat;
    } while (next_index(idx, f.extent));
    return idft(f.d, f.extent, std::move(spec));
}

}  // namespace sphlab
