#pragma once

// Discrete Muckenhoupt characteristics over truncated cube families, reverse
// Holder ratios, and the weighted l^2(w) stability experiment for power
// weights. The cube family is every axis-aligned lattice cube with side up to
// max_side anchored inside the weight's box; the truncated characteristic is
// a lower bound for the untruncated one.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sphlab/common.hpp"
#include "sphlab/grid.hpp"
#include "sphlab/operators.hpp"
#include "sphlab/report.hpp"

namespace sphlab {

namespace detail {
// Prefix table of w^power over the box of w.
inline PrefixSums power_prefix(const GridFunction& w, double power) {
    GridFunction tmp = w;
    for (auto& v : tmp.values) {
        const double x = std::real(v);
        if (!(x > 0.0)) throw std::invalid_argument("weights: weight must be strictly positive");
        v = std::pow(x, power);
    }
    return PrefixSums(tmp);
}

template <class Visit>
inline void for_each_cube(const GridFunction& w, std::int64_t max_side, const Visit& visit) {
    std::vector<std::int64_t> lo(static_cast<std::size_t>(w.d)), hi(static_cast<std::size_t>(w.d));
    for (std::int64_t s = 1; s <= max_side; ++s) {
        bool fits = true;
        for (auto e : w.extent) fits = fits && s <= e;
        if (!fits) break;
        std::vector<std::int64_t> ext(static_cast<std::size_t>(w.d));
        for (int i = 0; i < w.d; ++i) ext[static_cast<std::size_t>(i)] = w.extent[static_cast<std::size_t>(i)] - s + 1;
        std::vector<std::int64_t> idx(static_cast<std::size_t>(w.d), 0);
        do {
            for (int i = 0; i < w.d; ++i) {
                lo[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)];
                hi[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)] + s;
            }
            visit(lo, hi, s);
        } while (next_index(idx, ext));
    }
}
}  // namespace detail

// sup over cubes of <w>_Q <w^{-1}>_Q.
inline double a2_characteristic(const GridFunction& w, std::int64_t max_side) {
    if (max_side < 1) throw std::invalid_argument("a2_characteristic: max_side >= 1");
    const auto pw = detail::power_prefix(w, 1.0);
    const auto pinv = detail::power_prefix(w, -1.0);
    double worst = 0.0;
    detail::for_each_cube(w, max_side, [&](const auto& lo, const auto& hi, std::int64_t s) {
        const double vol = std::pow(static_cast<double>(s), w.d);
        worst = std::max(worst, pw.box_sum(lo, hi) * pinv.box_sum(lo, hi) / (vol * vol));
    });
    return worst;
}

// sup over cubes of <w>_{Q,r} / <w>_{Q,1}.
inline double reverse_holder_check(const GridFunction& w, double r, std::int64_t max_side) {
    if (!(r > 1.0)) throw std::invalid_argument("reverse_holder_check: r > 1 required");
    if (max_side < 1) throw std::invalid_argument("reverse_holder_check: max_side >= 1");
    const auto p1 = detail::power_prefix(w, 1.0);
    const auto pr = detail::power_prefix(w, r);
    double worst = 0.0;
    detail::for_each_cube(w, max_side, [&](const auto& lo, const auto& hi, std::int64_t s) {
        const double vol = std::pow(static_cast<double>(s), w.d);
        const double mean1 = p1.box_sum(lo, hi) / vol;
        const double meanr = std::pow(pr.box_sum(lo, hi) / vol, 1.0 / r);
        if (mean1 > 0) worst = std::max(worst, meanr / mean1);
    });
    return worst;
}

// Power-weight admissibility: (1+|x|)^{a (d/(d-4)+delta)} lies in A_2 exactly
// when |a| (d/(d-4)+delta) < d.
inline bool power_weight_admissible(double a, int d, double delta) {
    if (d <= 4) throw std::invalid_argument("power_weight_admissible: d >= 5 required");
    return std::abs(a) * (static_cast<double>(d) / (d - 4.0) + delta) < static_cast<double>(d);
}

inline GridFunction power_weight_on(const GridFunction& like, double a) {
    GridFunction w = GridFunction::zeros(like.d, like.geom, like.extent, like.corner);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(like.d), 0);
    std::size_t flat = 0;
    do {
        double r2 = 0;
        for (int i = 0; i < like.d; ++i) {
            const double x = static_cast<double>(like.corner[static_cast<std::size_t>(i)] +
                                                 idx[static_cast<std::size_t>(i)]);
            r2 += x * x;
        }
        w.values[flat++] = std::pow(1.0 + std::sqrt(r2), a);
    } while (next_index(idx, like.extent));
    return w;
}

// For w = (1+|x|)^a: the worst ratio || sup_{lambda <= Lambda} A_lambda f ||_{l2(w)}
// / || f ||_{l2(w)} over a compactly supported corpus, per Lambda. Everything
// is computed on boxes padded to the full support of the output, so the norms
// are exact counting-measure norms on Z^d.
inline ExperimentReport weighted_bound_experiment(int d, double a, double delta,
                                                  const std::vector<std::int64_t>& Lambdas,
                                                  std::int64_t corpus_box_side = 3,
                                                  int random_trials = 2) {
    if (d < 5) throw std::invalid_argument("weighted_bound_experiment: d >= 5 required");
    ExperimentReport rep;
    rep.id = "weighted-l2-stability";
    rep.params = "d=" + std::to_string(d) + " a=" + std::to_string(a) +
                 " delta=" + std::to_string(delta);

    std::vector<GridFunction> corpus;
    const std::vector<std::int64_t> ext(static_cast<std::size_t>(d), corpus_box_side);
    std::vector<std::int64_t> centered(static_cast<std::size_t>(d), -(corpus_box_side / 2));
    corpus.push_back(point_mass(d, Geometry::box,
                           std::vector<std::int64_t>(static_cast<std::size_t>(d), 1)));
    {
        GridFunction ones = GridFunction::zeros(d, Geometry::box, ext, centered);
        for (auto& v : ones.values) v = 1.0;
        corpus.push_back(ones);
    }
    for (int t = 0; t < random_trials; ++t) {
        GridFunction r = random_signs(d, Geometry::box, ext, 1234 + static_cast<std::uint64_t>(t));
        r.corner = centered;
        corpus.push_back(r);
    }

    for (std::int64_t Lambda : Lambdas) {
        double worst = 0.0;
        for (const auto& f : corpus) {
            const GridFunction out = maximal_full(f, Lambda);
            const GridFunction w_out = power_weight_on(out, a);
            // embed f into the output box so both norms use one weight grid
            GridFunction f_embedded = GridFunction::zeros(d, Geometry::box, out.extent, out.corner);
            std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
            std::vector<std::int64_t> x(static_cast<std::size_t>(d));
            std::size_t flat = 0;
            do {
                for (int i = 0; i < d; ++i)
                    x[static_cast<std::size_t>(i)] = f.corner[static_cast<std::size_t>(i)] +
                                                     idx[static_cast<std::size_t>(i)];
                f_embedded.ref(x) = f.values[flat++];
            } while (next_index(idx, f.extent));
            const double denom = weighted_l2_norm(f_embedded, w_out);
            if (denom > 0) worst = std::max(worst, weighted_l2_norm(out, w_out) / denom);
        }
        rep.rows.push_back({static_cast<double>(Lambda), worst,
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN()});
    }

    const bool admissible = power_weight_admissible(a, d, delta);
    const double first = rep.rows.front().measured;
    const double last = rep.rows.back().measured;
    const bool stable = last <= 1.10 * first;
    rep.pass = !admissible || stable;  // admissible weights must look stable
    rep.note = std::string(admissible ? "admissible" : "inadmissible") + "; " +
               (stable ? "stable" : "growing") + " (first " + std::to_string(first) + ", last " +
               std::to_string(last) + ")";
    return rep;
}

}  // namespace sphlab
