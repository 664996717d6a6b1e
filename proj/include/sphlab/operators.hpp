#pragma once

// The discrete spherical average, its dyadic and full maximal operators, the
// Hardy-Littlewood maximal function, and an empirical operator-norm probe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sphlab/common.hpp"
#include "sphlab/fft.hpp"
#include "sphlab/grid.hpp"
#include "sphlab/lattice.hpp"

namespace sphlab {

// Admissible radii in the dyadic block [Lambda, 2 Lambda).
struct RadiusSet {
    std::int64_t Lambda = 1;
    std::int64_t n_lo() const { return Lambda * Lambda; }
    std::int64_t n_hi() const { return 4 * Lambda * Lambda; }  // exclusive
};

enum class ConvolutionPath { automatic, direct, dft };

namespace detail {
inline GridFunction average_direct(const GridFunction& f, const LatticeShell& shell) {
    const double inv = 1.0 / static_cast<double>(shell.count);
    if (f.geom == Geometry::torus) {
        GridFunction out = GridFunction::zeros(f.d, Geometry::torus, f.extent);
        std::vector<std::int64_t> x(static_cast<std::size_t>(f.d), 0);
        std::vector<std::int64_t> y(static_cast<std::size_t>(f.d));
        std::size_t flat = 0;
        do {
            cplx acc{0.0, 0.0};
            for (std::int64_t i = 0; i < shell.count; ++i) {
                const std::int32_t* p = shell.point(i);
                for (int j = 0; j < f.d; ++j) y[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] - p[j];
                acc += f.at(y);
            }
            out.values[flat++] = acc * inv;
        } while (next_index(x, f.extent));
        return out;
    }
    // Box: output box is the input box padded by the shell radius.
    const auto r = static_cast<std::int64_t>(std::ceil(shell.lambda()));
    std::vector<std::int64_t> corner = f.corner, extent = f.extent;
    for (int i = 0; i < f.d; ++i) {
        corner[static_cast<std::size_t>(i)] -= r;
        extent[static_cast<std::size_t>(i)] += 2 * r;
    }
    GridFunction out = GridFunction::zeros(f.d, Geometry::box, extent, corner);
    // Scatter from input support: cheaper when the input is sparse relative
    // to the padded output.
    std::vector<std::int64_t> idx(static_cast<std::size_t>(f.d), 0);
    std::vector<std::int64_t> x(static_cast<std::size_t>(f.d));
    std::vector<std::int64_t> t(static_cast<std::size_t>(f.d));
    std::size_t flat = 0;
    do {
        const cplx v = f.values[flat++];
        if (v != cplx{0.0, 0.0}) {
            for (int j = 0; j < f.d; ++j)
                x[static_cast<std::size_t>(j)] = f.corner[static_cast<std::size_t>(j)] + idx[static_cast<std::size_t>(j)];
            for (std::int64_t i = 0; i < shell.count; ++i) {
                const std::int32_t* p = shell.point(i);
                for (int j = 0; j < f.d; ++j) t[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] + p[j];
                out.ref(t) += v * inv;
            }
        }
    } while (next_index(idx, f.extent));
    return out;
}

inline GridFunction average_dft(const GridFunction& f, const LatticeShell& shell) {
    if (f.geom != Geometry::torus)
        throw std::invalid_argument("average_dft: torus geometry required");
    GridFunction kernel = GridFunction::zeros(f.d, Geometry::torus, f.extent);
    const double inv = 1.0 / static_cast<double>(shell.count);
    std::vector<std::int64_t> y(static_cast<std::size_t>(f.d));
    for (std::int64_t i = 0; i < shell.count; ++i) {
        const std::int32_t* p = shell.point(i);
        for (int j = 0; j < f.d; ++j) y[static_cast<std::size_t>(j)] = p[j];
        kernel.ref(y) += inv;  // periodized shell indicator
    }
    auto fs = dft(f);
    auto ks = dft(kernel);
    for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= ks[i];
    return idft(f.d, f.extent, std::move(fs));
}
}  // namespace detail

// (A_lambda f)(x) = N(lambda)^{-1} sum_{|y|^2 = n} f(x - y).
inline GridFunction apply_average(const GridFunction& f, const LatticeShell& shell,
                                  ConvolutionPath path = ConvolutionPath::automatic) {
    if (shell.d != f.d) throw std::invalid_argument("apply_average: dimension mismatch");
    if (shell.count == 0) throw std::invalid_argument("apply_average: empty shell");
    if (path == ConvolutionPath::automatic) {
        if (f.geom == Geometry::torus) {
            const double direct_cost =
                static_cast<double>(f.size()) * static_cast<double>(shell.count);
            const double dft_cost =
                12.0 * static_cast<double>(f.size()) * std::log2(static_cast<double>(f.size()) + 2.0);
            path = direct_cost <= dft_cost ? ConvolutionPath::direct : ConvolutionPath::dft;
        } else {
            path = ConvolutionPath::direct;
        }
    }
    return path == ConvolutionPath::dft ? detail::average_dft(f, shell)
                                        : detail::average_direct(f, shell);
}

inline GridFunction apply_average(const GridFunction& f, std::int64_t n,
                                  ConvolutionPath path = ConvolutionPath::automatic) {
    return apply_average(f, enumerate_shell(f.d, n), path);
}

namespace detail {
// Pointwise sup of |A_lambda f| over n in [n_lo, n_hi); skips empty shells.
inline GridFunction maximal_over(const GridFunction& f, std::int64_t n_lo, std::int64_t n_hi,
                                 ConvolutionPath path) {
    auto counts = shell_count_table(f.d, n_hi - 1);
    GridFunction out;
    bool first = true;
    for (std::int64_t n = n_lo; n < n_hi; ++n) {
        if (counts[static_cast<std::size_t>(n)] == 0) continue;
        GridFunction a = apply_average(f, n, path);
        if (first) {
            out = GridFunction::zeros(a.d, a.geom, a.extent, a.corner);
            first = false;
        } else if (a.values.size() != out.values.size()) {
            // box outputs grow with the radius; re-embed the running max
            GridFunction grown = GridFunction::zeros(a.d, a.geom, a.extent, a.corner);
            std::vector<std::int64_t> idx(static_cast<std::size_t>(out.d), 0);
            std::vector<std::int64_t> x(static_cast<std::size_t>(out.d));
            std::size_t flat = 0;
            do {
                for (int j = 0; j < out.d; ++j)
                    x[static_cast<std::size_t>(j)] =
                        out.corner[static_cast<std::size_t>(j)] + idx[static_cast<std::size_t>(j)];
                grown.ref(x) = out.values[flat++];
            } while (next_index(idx, out.extent));
            out = std::move(grown);
        }
        for (std::size_t i = 0; i < a.values.size(); ++i)
            out.values[i] = std::max(std::real(out.values[i]), std::abs(a.values[i]));
    }
    if (first) throw std::invalid_argument("maximal_over: no nonempty shells in range");
    return out;
}
}  // namespace detail

inline GridFunction maximal_dyadic(const GridFunction& f, std::int64_t Lambda,
                                   ConvolutionPath path = ConvolutionPath::automatic) {
    if (Lambda < 1) throw std::invalid_argument("maximal_dyadic: Lambda >= 1 required");
    RadiusSet radii{Lambda};
    return detail::maximal_over(f, radii.n_lo(), radii.n_hi(), path);
}

inline GridFunction maximal_full(const GridFunction& f, std::int64_t Lambda_max,
                                 ConvolutionPath path = ConvolutionPath::automatic) {
    if (Lambda_max < 1) throw std::invalid_argument("maximal_full: Lambda_max >= 1 required");
    return detail::maximal_over(f, 1, Lambda_max * Lambda_max + 1, path);
}

// d-dimensional prefix sums of |f| over its own index box, for O(2^d) cube
// sums. prefix has extent+1 points per axis.
struct PrefixSums {
    int d;
    std::vector<std::int64_t> extent;
    std::vector<double> table;

    explicit PrefixSums(const GridFunction& f) : d(f.d), extent(f.extent) {
        std::vector<std::int64_t> ext1(extent.size());
        std::int64_t total = 1;
        for (std::size_t i = 0; i < extent.size(); ++i) {
            ext1[i] = extent[i] + 1;
            total = checked_mul(total, ext1[i]);
        }
        table.assign(static_cast<std::size_t>(total), 0.0);
        std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
        std::size_t flat = 0;
        do {
            std::int64_t pos = 0;
            for (int i = 0; i < d; ++i) pos = pos * ext1[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)] + 1;
            table[static_cast<std::size_t>(pos)] = std::abs(f.values[flat++]);
        } while (next_index(idx, extent));
        // sweep each axis
        for (int axis = 0; axis < d; ++axis) {
            std::vector<std::int64_t> j(static_cast<std::size_t>(d), 0);
            do {
                if (j[static_cast<std::size_t>(axis)] == 0) continue;
                std::int64_t pos = 0, prev = 0;
                for (int i = 0; i < d; ++i) {
                    pos = pos * ext1[static_cast<std::size_t>(i)] + j[static_cast<std::size_t>(i)];
                    prev = prev * ext1[static_cast<std::size_t>(i)] +
                           j[static_cast<std::size_t>(i)] - (i == axis ? 1 : 0);
                }
                table[static_cast<std::size_t>(pos)] += table[static_cast<std::size_t>(prev)];
            } while (next_index(j, ext1));
        }
    }

    // Sum over the half-open index box [lo, hi) with lo,hi clamped to range.
    double box_sum(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi) const {
        std::vector<std::int64_t> ext1(extent.size());
        for (std::size_t i = 0; i < extent.size(); ++i) {
            ext1[i] = extent[i] + 1;
            lo[i] = std::clamp<std::int64_t>(lo[i], 0, extent[i]);
            hi[i] = std::clamp<std::int64_t>(hi[i], 0, extent[i]);
            if (hi[i] <= lo[i]) return 0.0;
        }
        double total = 0.0;
        const int corners = 1 << d;
        for (int mask = 0; mask < corners; ++mask) {
            std::int64_t pos = 0;
            int bits = 0;
            for (int i = 0; i < d; ++i) {
                const bool hi_side = (mask >> i) & 1;
                if (hi_side) ++bits;
                pos = pos * ext1[static_cast<std::size_t>(i)] +
                      (hi_side ? hi[static_cast<std::size_t>(i)] : lo[static_cast<std::size_t>(i)]);
            }
            total += ((d - bits) % 2 == 0 ? 1.0 : -1.0) * table[static_cast<std::size_t>(pos)];
        }
        return total;
    }
};

namespace detail {
// Cube sum on a torus: per axis the window [a, a + len) wraps into at most
// two intervals of the fundamental domain.
inline double torus_cube_sum(const PrefixSums& ps, const std::vector<std::int64_t>& center,
                             std::int64_t k, const std::vector<std::int64_t>& extent, int axis,
                             std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) {
    if (axis == ps.d) return ps.box_sum(lo, hi);
    const std::int64_t M = extent[static_cast<std::size_t>(axis)];
    std::int64_t a = center[static_cast<std::size_t>(axis)] - k;
    a %= M;
    if (a < 0) a += M;
    const std::int64_t len = 2 * k + 1;
    double total = 0.0;
    if (a + len <= M) {
        lo[static_cast<std::size_t>(axis)] = a;
        hi[static_cast<std::size_t>(axis)] = a + len;
        total += torus_cube_sum(ps, center, k, extent, axis + 1, lo, hi);
    } else {
        lo[static_cast<std::size_t>(axis)] = a;
        hi[static_cast<std::size_t>(axis)] = M;
        total += torus_cube_sum(ps, center, k, extent, axis + 1, lo, hi);
        lo[static_cast<std::size_t>(axis)] = 0;
        hi[static_cast<std::size_t>(axis)] = a + len - M;
        total += torus_cube_sum(ps, center, k, extent, axis + 1, lo, hi);
    }
    return total;
}
}  // namespace detail

// Hardy-Littlewood maximal function over centered cubes [x-k, x+k]^d. On a
// torus the cube side is capped at one period.
inline GridFunction hl_maximal(const GridFunction& f) {
    GridFunction out = GridFunction::zeros(f.d, f.geom, f.extent, f.corner);
    const PrefixSums ps(f);
    std::int64_t kmax = 0;
    for (auto e : f.extent)
        kmax = std::max(kmax, f.geom == Geometry::torus ? (e - 1) / 2 : e);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(f.d), 0);
    std::vector<std::int64_t> lo(static_cast<std::size_t>(f.d)), hi(static_cast<std::size_t>(f.d));
    std::size_t flat = 0;
    do {
        double best = 0.0;
        for (std::int64_t k = 0; k <= kmax; ++k) {
            double sum;
            if (f.geom == Geometry::torus) {
                sum = detail::torus_cube_sum(ps, idx, k, f.extent, 0, lo, hi);
            } else {
                for (int j = 0; j < f.d; ++j) {
                    lo[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j)] - k;
                    hi[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j)] + k + 1;
                }
                sum = ps.box_sum(lo, hi);
            }
            best = std::max(best, sum / std::pow(2.0 * static_cast<double>(k) + 1.0, f.d));
        }
        out.values[flat++] = best;
    } while (next_index(idx, f.extent));
    return out;
}

// Lower-bound probe for operator norms || T ||_{l^p -> l^{r'}}: the maximum
// of ||T f||_{r'} / ||f||_p over a small test corpus. Never an upper bound.
struct OperatorTag {
    enum class Kind { identity, average, maximal_dyadic, maximal_full, hardy_littlewood };
    Kind kind = Kind::identity;
    std::int64_t param = 1;  // n / Lambda / Lambda_max
};

inline GridFunction apply_operator(const OperatorTag& tag, const GridFunction& f) {
    switch (tag.kind) {
        case OperatorTag::Kind::identity: return f;
        case OperatorTag::Kind::average: return apply_average(f, tag.param);
        case OperatorTag::Kind::maximal_dyadic: return maximal_dyadic(f, tag.param);
        case OperatorTag::Kind::maximal_full: return maximal_full(f, tag.param);
        case OperatorTag::Kind::hardy_littlewood: return hl_maximal(f);
    }
    throw std::logic_error("apply_operator: bad tag");
}

struct OpNormEstimate {
    double value = 0.0;
    std::string witness;  // which corpus member attained the max
};

// Grid-free evaluation of || sup |A_lambda| delta_0 ||_{r'} over the radii
// with n in [n_lo, n_hi): the output is N(|x|)^{-1} on each nonempty shell.
inline double delta_maximal_norm(int d, std::int64_t n_lo, std::int64_t n_hi, double rprime) {
    const auto counts_ptr = shell_count_table_cached(d, n_hi - 1);
    const auto& counts = *counts_ptr;
    if (std::isinf(rprime)) {
        double m = 0;
        for (std::int64_t n = n_lo; n < n_hi; ++n) {
            const auto c = counts[static_cast<std::size_t>(n)];
            if (c > 0) m = std::max(m, 1.0 / static_cast<double>(c));
        }
        return m;
    }
    double s = 0;
    for (std::int64_t n = n_lo; n < n_hi; ++n) {
        const auto c = counts[static_cast<std::size_t>(n)];
        if (c > 0) s += std::pow(static_cast<double>(c), 1.0 - rprime);
    }
    return std::pow(s, 1.0 / rprime);
}

struct OpNormProbe {
    enum class Mode { analytic_shell, torus };
    Mode mode = Mode::torus;
    std::int64_t side = 8;
    int trials = 2;
    std::uint64_t seed = 1;
};

inline OpNormEstimate empirical_opnorm(int d, const OperatorTag& tag, double p, double rprime,
                                       const OpNormProbe& probe) {
    if (probe.trials < 0) throw std::invalid_argument("empirical_opnorm: trials >= 0");
    OpNormEstimate best;
    auto consider = [&](double ratio, const std::string& name) {
        if (ratio > best.value) {
            best.value = ratio;
            best.witness = name;
        }
    };

    if (probe.mode == OpNormProbe::Mode::analytic_shell) {
        // delta input, exact shell arithmetic; no grids involved.
        if (tag.kind == OperatorTag::Kind::maximal_dyadic) {
            consider(delta_maximal_norm(d, tag.param * tag.param, 4 * tag.param * tag.param, rprime),
                     "delta");
        } else if (tag.kind == OperatorTag::Kind::maximal_full) {
            consider(delta_maximal_norm(d, 1, tag.param * tag.param + 1, rprime), "delta");
        } else if (tag.kind == OperatorTag::Kind::average) {
            const auto c = shell_count(d, tag.param);
            if (c > 0)
                consider(std::isinf(rprime) ? 1.0 / static_cast<double>(c)
                                            : std::pow(static_cast<double>(c), 1.0 / rprime - 1.0),
                         "delta");
        } else if (tag.kind == OperatorTag::Kind::identity) {
            consider(1.0, "delta");
        }
        // single-shell indicator, evaluated at the origin only (a lower bound)
        const std::int64_t Lam = tag.param;
        if (tag.kind == OperatorTag::Kind::maximal_dyadic ||
            tag.kind == OperatorTag::Kind::maximal_full) {
            const auto c = shell_count(d, Lam * Lam);
            if (c > 0) consider(std::pow(static_cast<double>(c), -1.0 / p), "shell");
        }
        return best;
    }

    const std::vector<std::int64_t> ext(static_cast<std::size_t>(d), probe.side);
    std::vector<GridFunction> corpus;
    std::vector<std::string> names;
    corpus.push_back(point_mass(d, Geometry::torus, ext));
    names.emplace_back("delta");
    {
        // indicator of the shell |x|^2 = param^2 and the ball |x| <= param
        GridFunction sh = GridFunction::zeros(d, Geometry::torus, ext);
        GridFunction bl = GridFunction::zeros(d, Geometry::torus, ext);
        auto shell = enumerate_shell(d, tag.param * tag.param);
        auto ball = enumerate_ball(d, static_cast<double>(tag.param));
        std::vector<std::int64_t> y(static_cast<std::size_t>(d));
        for (std::int64_t i = 0; i < shell.count; ++i) {
            for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(j)] = shell.point(i)[j];
            sh.ref(y) = 1.0;
        }
        for (std::int64_t i = 0; i < ball.count; ++i) {
            for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(j)] = ball.point(i)[j];
            bl.ref(y) = 1.0;
        }
        if (shell.count > 0) {
            corpus.push_back(std::move(sh));
            names.emplace_back("shell");
        }
        corpus.push_back(std::move(bl));
        names.emplace_back("ball");
    }
    {
        GridFunction ones = GridFunction::zeros(d, Geometry::torus, ext);
        for (auto& v : ones.values) v = 1.0;
        corpus.push_back(std::move(ones));
        names.emplace_back("const");
    }
    for (int t = 0; t < probe.trials; ++t) {
        corpus.push_back(random_signs(d, Geometry::torus, ext, probe.seed + static_cast<std::uint64_t>(t)));
        names.emplace_back("random:" + std::to_string(t));
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const double denom = lp_norm(corpus[i], p);
        if (denom == 0.0) continue;
        const GridFunction out = apply_operator(tag, corpus[i]);
        consider(lp_norm(out, rprime) / denom, names[i]);
    }
    return best;
}

}  // namespace sphlab
