#pragma once

// Adaptive Gauss-Kronrod (G7,K15) integration of complex-valued integrands
// over a list of segments. Oscillatory callers pre-split segments at the
// oscillation scale; the adaptive loop then refines where needed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

struct QuadratureSpec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double tail_cutoff = 1e-16;   // envelope level below which tails are dropped
    int max_intervals = 200000;   // subdivision budget across all segments
    int nodes_per_period = 16;    // initial panel density against e(-lambda^2 tau)
};

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double error = 0.0;
    long evaluations = 0;
};

namespace detail {
// QUADPACK dqk15 constants.
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, cplx& value, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fk[15];
    cplx kron{0.0, 0.0}, gauss{0.0, 0.0};
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(c - h * gk_x[i]);
        fk[14 - i] = f(c + h * gk_x[i]);
        kron += gk_wk[i] * (fk[i] + fk[14 - i]);
    }
    fk[7] = f(c);
    kron += gk_wk[7] * fk[7];
    // Gauss-7 uses the odd Kronrod abscissae.
    for (int i = 0; i < 3; ++i) gauss += gk_wg[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
    gauss += gk_wg[3] * fk[7];
    value = kron * h;
    err = std::abs((kron - gauss) * h);
}
}  // namespace detail

// Integrates f over the union of [breaks[i], breaks[i+1]].
template <class F>
inline QuadratureResult integrate_segments(const F& f, const std::vector<double>& breaks,
                                           const QuadratureSpec& spec) {
    struct Piece {
        double a, b, err;
        cplx value;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    std::priority_queue<Piece> pieces;
    QuadratureResult total;
    cplx sum{0.0, 0.0};
    double err_sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1])) continue;
        Piece p{breaks[i], breaks[i + 1], 0.0, {0.0, 0.0}};
        detail::gk15(f, p.a, p.b, p.value, p.err);
        total.evaluations += 15;
        sum += p.value;
        err_sum += p.err;
        pieces.push(p);
    }
    int used = static_cast<int>(pieces.size());
    auto tol = [&](void) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(sum)); };
    while (err_sum > tol() && used < spec.max_intervals) {
        Piece worst = pieces.top();
        pieces.pop();
        sum -= worst.value;
        err_sum -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        for (auto [a, b] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            Piece p{a, b, 0.0, {0.0, 0.0}};
            detail::gk15(f, p.a, p.b, p.value, p.err);
            total.evaluations += 15;
            sum += p.value;
            err_sum += p.err;
            pieces.push(p);
        }
        ++used;
    }
    if (err_sum > tol())
        throw quadrature_error("integrate_segments: tolerance not reached", err_sum);
    total.value = sum;
    total.error = err_sum;
    return total;
}

// Convenience: single interval split into roughly equal panels first.
template <class F>
inline QuadratureResult integrate_panels(const F& f, double a, double b, int panels,
                                         const QuadratureSpec& spec) {
    panels = std::max(1, panels);
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i)
        breaks[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / panels;
    return integrate_segments(f, breaks, spec);
}

}  // namespace sphlab
