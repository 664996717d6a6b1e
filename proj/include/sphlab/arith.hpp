#pragma once

// Unit groups mod q, normalized quadratic Gauss sums, and the mediant
// (Farey) dissection of the circle at a dyadic order.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sphlab/common.hpp"

namespace sphlab {

// Reduced rational a/q with 1 <= a <= q, gcd(a,q) = 1.
struct RationalPhase {
    std::int64_t a = 1;
    std::int64_t q = 1;
};

inline std::vector<std::int64_t> units_mod(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("units_mod: q >= 1 required");
    std::vector<std::int64_t> units;
    for (std::int64_t a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) units.push_back(a);
    return units;
}

// G_1(a/q, l) = (1/q) sum_{n=0}^{q-1} e(n^2 a / q) e(-n l / q).
// Phases are reduced mod q in integer arithmetic before any trigonometry.
inline cplx gauss_sum_1d(std::int64_t a, std::int64_t q, std::int64_t l) {
    if (q < 1) throw std::invalid_argument("gauss_sum_1d: q >= 1 required");
    const std::int64_t am = ((a % q) + q) % q;
    if (std::gcd(am == 0 ? q : am, q) != 1)
        throw std::invalid_argument("gauss_sum_1d: gcd(a,q) = 1 required");
    l = ((l % q) + q) % q;
    cplx sum = 0.0;
    for (std::int64_t n = 0; n < q; ++n) {
        const std::int64_t e = ((n * n % q) * am % q - n * l % q + q * q) % q;
        sum += unit_phase(static_cast<double>(e) / static_cast<double>(q));
    }
    return sum / static_cast<double>(q);
}

// All of G_1(a/q, 0..q-1) at once; O(q^2) with a shared root table and
// incremental exponent stepping, used by the q-sweep verifications.
inline std::vector<cplx> gauss_sum_1d_row(std::int64_t a, std::int64_t q) {
    std::vector<cplx> roots(static_cast<std::size_t>(q));
    for (std::int64_t k = 0; k < q; ++k)
        roots[static_cast<std::size_t>(k)] = unit_phase(static_cast<double>(k) / static_cast<double>(q));
    std::vector<cplx> row(static_cast<std::size_t>(q), cplx{0.0, 0.0});
    const std::int64_t am = ((a % q) + q) % q;
    for (std::int64_t n = 0; n < q; ++n) {
        std::int64_t k = n * n % q * am % q;  // exponent at l = 0
        const std::int64_t step = n % q;
        for (std::int64_t l = 0; l < q; ++l) {
            row[static_cast<std::size_t>(l)] += roots[static_cast<std::size_t>(k)];
            k -= step;
            if (k < 0) k += q;
        }
    }
    for (auto& v : row) v /= static_cast<double>(q);
    return row;
}

// d-dimensional Gauss sum via the coordinate-product factorization.
inline cplx gauss_sum(int d, std::int64_t a, std::int64_t q, const std::vector<std::int64_t>& l) {
    if (static_cast<int>(l.size()) != d) throw std::invalid_argument("gauss_sum: l has wrong length");
    cplx prod = 1.0;
    for (int i = 0; i < d; ++i) prod *= gauss_sum_1d(a, q, l[static_cast<std::size_t>(i)]);
    return prod;
}

// Direct q^d-term summation, kept as an independent cross-check of the
// product path at small q and d.
inline cplx gauss_sum_direct(int d, std::int64_t a, std::int64_t q, const std::vector<std::int64_t>& l) {
    double qd = std::pow(static_cast<double>(q), d);
    if (qd > 1e7) throw size_limit_error("gauss_sum_direct: q^d exceeds 1e7 terms");
    std::vector<std::int64_t> n(static_cast<std::size_t>(d), 0);
    std::vector<std::int64_t> ext(static_cast<std::size_t>(d), q);
    const std::int64_t am = ((a % q) + q) % q;
    cplx sum = 0.0;
    do {
        std::int64_t e = 0;
        for (int i = 0; i < d; ++i) {
            const std::int64_t ni = n[static_cast<std::size_t>(i)];
            const std::int64_t li = ((l[static_cast<std::size_t>(i)] % q) + q) % q;
            e = (e + ni * ni % q * am - ni * li % q + 2 * q * q) % q;
        }
        sum += unit_phase(static_cast<double>(e) / static_cast<double>(q));
    } while (next_index(n, ext));
    return sum / qd;
}

namespace detail {
// The d-dimensional completeness identity factors over coordinates, and the
// products are permutation invariant in y, so the maximum over y in (Z/q)^d
// is a maximum over multisets of coordinates.
inline void residual_descend(const std::vector<cplx>& lhs1, const std::vector<cplx>& rhs1,
                             int remaining, std::int64_t min_u, cplx lhs_prod, cplx rhs_prod,
                             double& worst) {
    if (remaining == 0) {
        worst = std::max(worst, std::abs(lhs_prod - rhs_prod));
        return;
    }
    const auto q = static_cast<std::int64_t>(lhs1.size());
    for (std::int64_t u = min_u; u < q; ++u)
        residual_descend(lhs1, rhs1, remaining - 1, u,
                         lhs_prod * lhs1[static_cast<std::size_t>(u)],
                         rhs_prod * rhs1[static_cast<std::size_t>(u)], worst);
}
}  // namespace detail

// max over a in Z_q^x and y in (Z/q)^d of
//   | sum_l G(a/q,l) e(-y.l/q) - e(|y|^2 a/q) |.
// The identity is exact, so this measures pure floating-point noise.
inline double gauss_identity_residual(int d, std::int64_t q) {
    if (d < 1 || q < 1) throw std::invalid_argument("gauss_identity_residual: d,q >= 1");
    double worst = 0.0;
    for (std::int64_t a : units_mod(q)) {
        const auto g = gauss_sum_1d_row(a, q);
        std::vector<cplx> lhs1(static_cast<std::size_t>(q), cplx{0.0, 0.0});
        std::vector<cplx> rhs1(static_cast<std::size_t>(q));
        std::vector<cplx> roots(static_cast<std::size_t>(q));
        for (std::int64_t k = 0; k < q; ++k)
            roots[static_cast<std::size_t>(k)] =
                unit_phase(static_cast<double>(k) / static_cast<double>(q));
        const std::int64_t am = ((a % q) + q) % q;
        for (std::int64_t u = 0; u < q; ++u) {
            std::int64_t k = 0;
            for (std::int64_t l = 0; l < q; ++l) {
                lhs1[static_cast<std::size_t>(u)] += g[static_cast<std::size_t>(l)] *
                                                     roots[static_cast<std::size_t>(k)];
                k -= u;
                if (k < 0) k += q;
            }
            rhs1[static_cast<std::size_t>(u)] = roots[static_cast<std::size_t>(u * u % q * am % q)];
        }
        detail::residual_descend(lhs1, rhs1, d, 0, cplx{1.0, 0.0}, cplx{1.0, 0.0}, worst);
    }
    return worst;
}

// Mediant arc around a/q at dissection order Lambda. In the tau variable the
// arc is [-beta/(q Lambda), alpha/(q Lambda)]; over all reduced a/q with
// q <= Lambda the translated arcs tile one full period.
struct FareyArc {
    std::int64_t a = 1;
    std::int64_t q = 1;
    std::int64_t order = 1;  // Lambda
    double alpha = 0.5;
    double beta = 0.5;

    double tau_lo() const { return -beta / (static_cast<double>(q) * static_cast<double>(order)); }
    double tau_hi() const { return alpha / (static_cast<double>(q) * static_cast<double>(order)); }
    double length() const { return tau_hi() - tau_lo(); }
    double center() const { return static_cast<double>(a) / static_cast<double>(q); }
};

inline std::vector<FareyArc> farey_dissection(std::int64_t order) {
    if (order < 1) throw std::invalid_argument("farey_dissection: order >= 1 required");
    std::vector<FareyArc> arcs;
    if (order == 1) {
        arcs.push_back({1, 1, 1, 0.5, 0.5});
        return arcs;
    }
    // Farey sequence of the given order on [0,1] by the standard next-term
    // recurrence; fractions[i] = (a_i, q_i), starting 0/1 and ending 1/1.
    std::vector<std::pair<std::int64_t, std::int64_t>> seq;
    std::int64_t a = 0, b = 1, c = 1, dd = order;
    seq.emplace_back(a, b);
    while (c <= order) {
        seq.emplace_back(c, dd);
        const std::int64_t k = (order + b) / dd;
        const std::int64_t e = k * c - a, f = k * dd - b;
        a = c; b = dd; c = e; dd = f;
    }
    const double L = static_cast<double>(order);
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const auto [ai, qi] = seq[i];
        // left neighbor is seq[i-1]; right neighbor wraps 1/1 -> 1 + 1/order
        std::int64_t qprev = seq[i - 1].second;
        std::int64_t qnext = (i + 1 < seq.size()) ? seq[i + 1].second : seq[1].second;
        FareyArc arc;
        arc.a = ai;
        arc.q = qi;
        arc.order = order;
        arc.beta = L / static_cast<double>(qi + qprev);
        arc.alpha = L / static_cast<double>(qi + qnext);
        arcs.push_back(arc);
    }
    return arcs;
}

}  // namespace sphlab
