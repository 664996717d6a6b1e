#pragma once

// Sparse collections of dyadic cubes, bilinear (p,r)-forms, sparsity
// verification, the stopping-time constructions, the restricted weak-type
// upgrade, and an empirical sparse-norm probe.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sphlab/common.hpp"
#include "sphlab/dyadic.hpp"
#include "sphlab/grid.hpp"
#include "sphlab/operators.hpp"

namespace sphlab {

struct FormParams {
    double p = 2.0;
    double r = 2.0;
    // Sparse bounds are only meaningful past duality; flagged, not enforced.
    bool breaks_duality() const { return 1.0 / p + 1.0 / r > 1.0; }
};

// View a torus function as its fundamental-domain box (sparse machinery works
// on finitely supported functions on Z^d).
inline GridFunction as_box(const GridFunction& f) {
    if (f.geom == Geometry::box) return f;
    GridFunction g = f;
    g.geom = Geometry::box;
    return g;
}

inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> support_bbox(
    const GridFunction& f) {
    std::vector<std::int64_t> lo(static_cast<std::size_t>(f.d), 0);
    std::vector<std::int64_t> hi(static_cast<std::size_t>(f.d), -1);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(f.d), 0);
    std::size_t flat = 0;
    bool any = false;
    do {
        if (f.values[flat++] != cplx{0.0, 0.0}) {
            for (int i = 0; i < f.d; ++i) {
                const std::int64_t x =
                    f.corner[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
                if (!any) {
                    lo[static_cast<std::size_t>(i)] = hi[static_cast<std::size_t>(i)] = x;
                } else {
                    lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], x);
                    hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], x);
                }
            }
            any = true;
        }
    } while (next_index(idx, f.extent));
    if (!any) throw std::invalid_argument("support_bbox: function is identically zero");
    return {lo, hi};
}

// (|Q|^{-1} sum_{x in Q} |h(x)|^t)^{1/t}; lattice points of Q outside the
// support of h count as zeros, and |Q| is the full lattice count of the cube.
inline double local_avg(const GridFunction& h, const DyadicCube& Q, double t) {
    if (t < 1.0) throw std::invalid_argument("local_avg: t >= 1 required");
    if (h.geom != Geometry::box) throw std::invalid_argument("local_avg: box geometry required");
    std::vector<std::int64_t> lo(static_cast<std::size_t>(h.d)), ext(static_cast<std::size_t>(h.d));
    for (int i = 0; i < h.d; ++i) {
        const std::int64_t a = std::max(Q.lo(i), h.corner[static_cast<std::size_t>(i)]);
        const std::int64_t b = std::min(Q.hi(i), h.corner[static_cast<std::size_t>(i)] +
                                                     h.extent[static_cast<std::size_t>(i)]);
        if (b <= a) return 0.0;
        lo[static_cast<std::size_t>(i)] = a;
        ext[static_cast<std::size_t>(i)] = b - a;
    }
    double sum = 0.0;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(h.d), 0);
    std::vector<std::int64_t> x(static_cast<std::size_t>(h.d));
    do {
        for (int i = 0; i < h.d; ++i)
            x[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
        const double v = std::abs(h.at(x));
        if (v != 0.0) sum += std::pow(v, t);
    } while (next_index(idx, ext));
    return std::pow(sum / static_cast<double>(Q.lattice_points()), 1.0 / t);
}

struct SparseCollection {
    double rho = 0.5;
    std::vector<DyadicCube> cubes;
    // Explicit witness point lists (flat, d-strided), parallel to `cubes`.
    // Empty: witnesses are the greedy sets E_Q = Q minus the union of the
    // strictly smaller cubes of the collection inside Q.
    std::vector<std::vector<std::int64_t>> witnesses;
};

inline double sparse_form(const SparseCollection& S, const FormParams& params,
                          const GridFunction& f, const GridFunction& g) {
    double total = 0.0;
    for (const auto& Q : S.cubes)
        total += local_avg(f, Q, params.p) * local_avg(g, Q, params.r) *
                 static_cast<double>(Q.lattice_points());
    return total;
}

struct SparsityReport {
    bool pass = true;
    std::string detail;  // violating cube or point on failure
};

namespace detail {
inline bool laminar(const std::vector<DyadicCube>& cubes) {
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (std::size_t j = i + 1; j < cubes.size(); ++j) {
            const auto& a = cubes[i];
            const auto& b = cubes[j];
            if (!a.intersects_cube(b)) continue;
            if (a.contains_cube(b) || b.contains_cube(a)) continue;
            return false;
        }
    return true;
}
}  // namespace detail

// Checks |E_Q| > rho |Q| and sup_x #{Q : x in E_Q} <= 1/rho exactly.
inline SparsityReport verify_sparsity(const SparseCollection& S, double rho,
                                      std::int64_t brute_force_cap = 20'000'000) {
    SparsityReport rep;
    if (S.cubes.empty()) return rep;
    if (!S.witnesses.empty()) {
        if (S.witnesses.size() != S.cubes.size())
            throw std::invalid_argument("verify_sparsity: witness list length mismatch");
        std::map<std::vector<std::int64_t>, int> overlap;
        for (std::size_t i = 0; i < S.cubes.size(); ++i) {
            const auto& Q = S.cubes[i];
            const auto& E = S.witnesses[i];
            const auto m = static_cast<std::int64_t>(E.size()) / Q.d;
            std::vector<std::int64_t> x(static_cast<std::size_t>(Q.d));
            for (std::int64_t j = 0; j < m; ++j) {
                for (int c = 0; c < Q.d; ++c)
                    x[static_cast<std::size_t>(c)] = E[static_cast<std::size_t>(j * Q.d + c)];
                if (!Q.contains_point(x)) {
                    rep.pass = false;
                    rep.detail = "witness point outside its cube " + Q.describe();
                    return rep;
                }
                ++overlap[x];
            }
            if (!(static_cast<double>(m) > rho * static_cast<double>(Q.lattice_points()))) {
                rep.pass = false;
                rep.detail = "witness too small for cube " + Q.describe();
                return rep;
            }
        }
        for (const auto& [x, c] : overlap)
            if (static_cast<double>(c) > 1.0 / rho + 1e-9) {
                rep.pass = false;
                rep.detail = "witness overlap " + std::to_string(c) + " at a point";
                return rep;
            }
        return rep;
    }

    const auto& cubes = S.cubes;
    if (detail::laminar(cubes)) {
        // E_Q = Q minus the strictly smaller cubes inside Q. In a laminar
        // family those unions are disjoint unions of the maximal such cubes,
        // so the sizes are exact integer arithmetic.
        for (std::size_t i = 0; i < cubes.size(); ++i) {
            std::int64_t removed = 0;
            for (std::size_t j = 0; j < cubes.size(); ++j) {
                if (cubes[j].side >= cubes[i].side || !cubes[i].contains_cube(cubes[j])) continue;
                // count j only if maximal: no strictly larger k (still smaller
                // than i) inside i contains j; duplicates counted once
                bool maximal = true;
                for (std::size_t k = 0; k < cubes.size() && maximal; ++k) {
                    if (k == j) continue;
                    if (cubes[k].side >= cubes[i].side || !cubes[i].contains_cube(cubes[k])) continue;
                    if (cubes[k].same_cube(cubes[j])) {
                        maximal = k > j;  // count one representative
                    } else if (cubes[k].contains_cube(cubes[j]) && cubes[k].side > cubes[j].side) {
                        maximal = false;
                    }
                }
                if (maximal) removed += cubes[j].lattice_points();
            }
            const std::int64_t e = cubes[i].lattice_points() - removed;
            if (!(static_cast<double>(e) > rho * static_cast<double>(cubes[i].lattice_points()))) {
                rep.pass = false;
                rep.detail = "greedy witness too small for cube " + cubes[i].describe();
                return rep;
            }
        }
        // Distinct cubes have disjoint greedy witnesses; identical cubes
        // share theirs verbatim, so the overlap equals the multiplicity.
        for (std::size_t i = 0; i < cubes.size(); ++i) {
            int mult = 0;
            for (std::size_t j = 0; j < cubes.size(); ++j)
                if (cubes[i].same_cube(cubes[j])) ++mult;
            if (static_cast<double>(mult) > 1.0 / rho + 1e-9) {
                rep.pass = false;
                rep.detail = "overlap " + std::to_string(mult) + " from repeated cube " +
                             cubes[i].describe();
                return rep;
            }
        }
        return rep;
    }

    // General position: exact point-by-point check under a volume cap.
    std::int64_t volume = 0;
    for (const auto& Q : cubes) volume = checked_add(volume, Q.lattice_points());
    if (volume > brute_force_cap)
        throw size_limit_error("verify_sparsity: non-laminar collection too large for exact check");
    std::map<std::vector<std::int64_t>, int> overlap;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const auto& Q = cubes[i];
        std::int64_t e = 0;
        std::vector<std::int64_t> idx(static_cast<std::size_t>(Q.d), 0);
        std::vector<std::int64_t> ext(static_cast<std::size_t>(Q.d), Q.side);
        std::vector<std::int64_t> x(static_cast<std::size_t>(Q.d));
        do {
            for (int c = 0; c < Q.d; ++c)
                x[static_cast<std::size_t>(c)] = Q.lo(c) + idx[static_cast<std::size_t>(c)];
            bool kept = true;
            for (std::size_t j = 0; j < cubes.size() && kept; ++j)
                if (cubes[j].side < Q.side && Q.contains_cube(cubes[j]) && cubes[j].contains_point(x))
                    kept = false;
            if (kept) {
                ++e;
                ++overlap[x];
            }
        } while (next_index(idx, ext));
        if (!(static_cast<double>(e) > rho * static_cast<double>(Q.lattice_points()))) {
            rep.pass = false;
            rep.detail = "greedy witness too small for cube " + Q.describe();
            return rep;
        }
    }
    for (const auto& [x, c] : overlap)
        if (static_cast<double>(c) > 1.0 / rho + 1e-9) {
            rep.pass = false;
            rep.detail = "witness overlap " + std::to_string(c) + " at a point";
            return rep;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Stopping-time constructions.

struct StoppingOptions {
    double A0 = 100.0;          // threshold multiplier; the default is verified, not assumed
    int max_depth = 40;
    std::int64_t Lambda_max = 2;  // truncation of the maximal-radius condition
    int shift_id = 0;             // dyadic grid used for the search
    int level_cap = 12;           // level-set cutoff in the restricted upgrade
};

struct StoppingResult {
    SparseCollection collection;
    std::vector<double> decay;  // per recursion node: (union of children)/|region|
    int depth = 0;
};

namespace detail {

struct StoppingRefs {
    double f, g;
};

// Prefix-sum-backed cube averages of one function at a fixed exponent; the
// stopping search evaluates averages over thousands of cubes, so the direct
// local_avg loop is too slow there. Also records sup|h|, which caps every
// cube average and lets dead recursion branches be skipped exactly.
struct CubeAverager {
    int d;
    double t;
    std::vector<std::int64_t> corner;
    std::vector<std::int64_t> extent;
    PrefixSums prefix;
    double sup = 0.0;

    CubeAverager(const GridFunction& h, double t_)
        : d(h.d), t(t_), corner(h.corner), extent(h.extent), prefix(powered(h, t_)) {
        for (const auto& v : h.values) sup = std::max(sup, std::abs(v));
    }

    static GridFunction powered(const GridFunction& h, double t) {
        GridFunction p = h;
        for (auto& v : p.values) v = std::pow(std::abs(v), t);
        return p;
    }

    double avg(const DyadicCube& Q) const {
        std::vector<std::int64_t> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            lo[static_cast<std::size_t>(i)] = Q.lo(i) - corner[static_cast<std::size_t>(i)];
            hi[static_cast<std::size_t>(i)] = Q.hi(i) - corner[static_cast<std::size_t>(i)];
        }
        const double s = prefix.box_sum(std::move(lo), std::move(hi));
        return std::pow(s / static_cast<double>(Q.lattice_points()), 1.0 / t);
    }
};

// Maximal grid cubes inside `region` satisfying pred; prune skips subtrees.
template <class Pred, class Alive>
inline void maximal_cubes(const DyadicCube& region, int shift_id, const Pred& pred,
                          const Alive& alive, std::vector<DyadicCube>& out) {
    int k_top = 0;
    while ((std::int64_t{1} << (k_top + 1)) <= region.side) ++k_top;
    std::vector<DyadicCube> stack = cubes_inside(region, k_top, shift_id);
    while (!stack.empty()) {
        DyadicCube q = stack.back();
        stack.pop_back();
        if (!alive(q)) continue;
        if (pred(q)) {
            out.push_back(q);
            continue;
        }
        if (q.gen == 0) continue;
        for (auto& c : cube_children(q)) stack.push_back(c);
    }
}

inline bool bbox_meets_tripled(const DyadicCube& q,
                               const std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>& bb,
                               bool tripled) {
    const DyadicCube r = tripled ? q.tripled() : q;
    for (int i = 0; i < q.d; ++i) {
        if (bb.second[static_cast<std::size_t>(i)] < r.lo(i)) return false;
        if (bb.first[static_cast<std::size_t>(i)] >= r.hi(i)) return false;
    }
    return true;
}

}  // namespace detail

// Stopping construction behind the corner sparse bound: recursive generations
// of maximal dyadic cubes whose tripled averages of f, g, or of the truncated
// maximal function of f jump by the factor A0 over the parent's. Children are
// searched inside their stopping cube, so the collection is laminar and its
// greedy witnesses verify at rho = 1/2 outright.
inline StoppingResult build_stopping_collection(const GridFunction& f_in, const GridFunction& g_in,
                                                const FormParams& params, const DyadicCube& root,
                                                const StoppingOptions& opts = {}) {
    const GridFunction f = as_box(f_in);
    const GridFunction g = as_box(g_in);
    if (f.d != g.d || f.d != root.d)
        throw std::invalid_argument("build_stopping_collection: dimension mismatch");
    const DyadicCube root3 = root.tripled();
    const auto bbf = support_bbox(f);
    const auto bbg = support_bbox(g);
    for (int i = 0; i < f.d; ++i) {
        if (bbf.first[static_cast<std::size_t>(i)] < root3.lo(i) ||
            bbf.second[static_cast<std::size_t>(i)] >= root3.hi(i) ||
            bbg.first[static_cast<std::size_t>(i)] < root3.lo(i) ||
            bbg.second[static_cast<std::size_t>(i)] >= root3.hi(i))
            throw std::invalid_argument(
                "build_stopping_collection: supports must lie in the tripled root");
    }
    const GridFunction m = maximal_full(f, opts.Lambda_max);
    const auto bbm = support_bbox(m);
    const detail::CubeAverager af(f, params.p), ag(g, params.r), am(m, params.p);

    StoppingResult result;
    result.collection.rho = 0.5;
    result.collection.cubes.push_back(root3);

    struct Node {
        DyadicCube region;  // where children are searched (3E for the root, Q below)
        detail::StoppingRefs refs;
        int depth;
    };
    std::vector<Node> agenda;
    agenda.push_back({root3, {af.avg(root3), ag.avg(root3)}, 1});
    while (!agenda.empty()) {
        Node node = agenda.back();
        agenda.pop_back();
        if (node.depth > opts.max_depth)
            throw std::runtime_error(
                "build_stopping_collection: depth cap exceeded; generations so far: " +
                std::to_string(result.collection.cubes.size()));
        result.depth = std::max(result.depth, node.depth - 1);
        // No cube average can exceed the sup of its function: recursion below
        // a node whose thresholds sit above every sup is dead.
        if (opts.A0 * node.refs.f > af.sup && opts.A0 * node.refs.g > ag.sup &&
            opts.A0 * node.refs.f > am.sup)
            continue;
        auto pred = [&](const DyadicCube& q) {
            const DyadicCube q3 = q.tripled();
            if (node.refs.f > 0 && af.avg(q3) >= opts.A0 * node.refs.f) return true;
            if (node.refs.g > 0 && ag.avg(q3) >= opts.A0 * node.refs.g) return true;
            if (node.refs.f > 0 && am.avg(q3) >= opts.A0 * node.refs.f) return true;
            return false;
        };
        auto alive = [&](const DyadicCube& q) {
            return detail::bbox_meets_tripled(q, bbf, true) ||
                   detail::bbox_meets_tripled(q, bbg, true) ||
                   detail::bbox_meets_tripled(q, bbm, true);
        };
        std::vector<DyadicCube> found;
        detail::maximal_cubes(node.region, opts.shift_id, pred, alive, found);
        std::int64_t child_volume = 0;
        for (auto& q : found) {
            q.gen = node.depth;
            child_volume += q.lattice_points();
            result.collection.cubes.push_back(q);
            agenda.push_back({q, {af.avg(q.tripled()), ag.avg(q.tripled())}, node.depth + 1});
        }
        result.decay.push_back(static_cast<double>(child_volume) /
                               static_cast<double>(node.region.lattice_points()));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Restricted weak-type upgrade.

using IndicatorSparseOracle =
    std::function<SparseCollection(const GridFunction&, const GridFunction&)>;

struct UpgradeResult {
    SparseCollection collection;  // S(f,g): {3E} plus the stopping generations
    std::vector<int> f_levels;    // nonempty dyadic levels of |f| after normalization
    std::vector<int> g_levels;
    std::vector<SparseCollection> oracle_collections;  // one per (k,l) level pair
    double f_scale = 1.0, g_scale = 1.0;
    std::vector<double> decay;
    int depth = 0;
};

namespace detail {
inline GridFunction level_indicator(const GridFunction& f, int k) {
    GridFunction out = GridFunction::zeros(f.d, Geometry::box, f.extent, f.corner);
    const double hi_v = std::ldexp(1.0, -k), lo_v = std::ldexp(1.0, -k - 1);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double v = std::abs(f.values[i]);
        if (v > lo_v && v <= hi_v) out.values[i] = 1.0;
    }
    return out;
}
}  // namespace detail

// Level-set decomposition f = sum 2^{-k} f_k (and likewise g), an oracle call
// per level pair, and the two-threshold stopping construction on |f|, |g|
// whose output S(f,g) carries the upgraded bound.
inline UpgradeResult restricted_upgrade(const GridFunction& f_in, const GridFunction& g_in,
                                        const FormParams& params, const IndicatorSparseOracle& oracle,
                                        const StoppingOptions& opts = {}) {
    GridFunction f = as_box(f_in), g = as_box(g_in);
    UpgradeResult result;
    double fmax = 0, gmax = 0;
    for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
    for (const auto& v : g.values) gmax = std::max(gmax, std::abs(v));
    if (fmax == 0 || gmax == 0)
        throw std::invalid_argument("restricted_upgrade: zero input");
    for (auto& v : f.values) v /= fmax;
    for (auto& v : g.values) v /= gmax;
    result.f_scale = fmax;
    result.g_scale = gmax;

    for (int k = 0; k <= opts.level_cap; ++k) {
        if (lp_norm(detail::level_indicator(f, k), 1.0) > 0) result.f_levels.push_back(k);
        if (lp_norm(detail::level_indicator(g, k), 1.0) > 0) result.g_levels.push_back(k);
    }
    if (oracle) {
        for (int k : result.f_levels)
            for (int l : result.g_levels)
                result.oracle_collections.push_back(
                    oracle(detail::level_indicator(f, k), detail::level_indicator(g, l)));
    }

    const auto bbf = support_bbox(f);
    const auto bbg = support_bbox(g);
    std::vector<std::int64_t> lo = bbf.first, hi = bbf.second;
    for (int i = 0; i < f.d; ++i) {
        lo[static_cast<std::size_t>(i)] =
            std::min(lo[static_cast<std::size_t>(i)], bbg.first[static_cast<std::size_t>(i)]);
        hi[static_cast<std::size_t>(i)] =
            std::max(hi[static_cast<std::size_t>(i)], bbg.second[static_cast<std::size_t>(i)]);
    }
    const DyadicCube root = root_cube_covering(f.d, lo, hi);
    const DyadicCube root3 = root.tripled();
    const detail::CubeAverager af(f, params.p), ag(g, params.r);

    result.collection.rho = 0.5;
    result.collection.cubes.push_back(root3);
    struct Node {
        DyadicCube region;
        double ref_f, ref_g;
        int depth;
    };
    std::vector<Node> agenda;
    agenda.push_back({root3, af.avg(root3), ag.avg(root3), 1});
    while (!agenda.empty()) {
        Node node = agenda.back();
        agenda.pop_back();
        if (node.depth > opts.max_depth)
            throw std::runtime_error("restricted_upgrade: depth cap exceeded");
        result.depth = std::max(result.depth, node.depth - 1);
        if (opts.A0 * node.ref_f > af.sup && opts.A0 * node.ref_g > ag.sup) continue;
        auto pred = [&](const DyadicCube& q) {
            if (node.ref_f > 0 && af.avg(q) >= opts.A0 * node.ref_f) return true;
            if (node.ref_g > 0 && ag.avg(q) >= opts.A0 * node.ref_g) return true;
            return false;
        };
        auto alive = [&](const DyadicCube& q) {
            return detail::bbox_meets_tripled(q, bbf, false) ||
                   detail::bbox_meets_tripled(q, bbg, false);
        };
        std::vector<DyadicCube> found;
        detail::maximal_cubes(node.region, opts.shift_id, pred, alive, found);
        std::int64_t child_volume = 0;
        for (auto& q : found) {
            q.gen = node.depth;
            child_volume += q.lattice_points();
            result.collection.cubes.push_back(q);
            agenda.push_back({q, af.avg(q), ag.avg(q), node.depth + 1});
        }
        result.decay.push_back(static_cast<double>(child_volume) /
                               static_cast<double>(node.region.lattice_points()));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Empirical sparse constant: max over a corpus of pairs of
// <|Tf|, |g|> / Lambda_{S(f,g), p, r}(f, g).

struct SparseConstantResult {
    double constant = 0.0;
    std::size_t argmax = 0;
    std::vector<double> per_instance;
};

inline double pairing(const GridFunction& a, const GridFunction& b) {
    // sum over b's box of |a| |b|
    double s = 0.0;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(b.d), 0);
    std::vector<std::int64_t> x(static_cast<std::size_t>(b.d));
    std::size_t flat = 0;
    do {
        const double gv = std::abs(b.values[flat++]);
        if (gv != 0.0) {
            for (int i = 0; i < b.d; ++i)
                x[static_cast<std::size_t>(i)] =
                    b.corner[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
            s += std::abs(a.at(x)) * gv;
        }
    } while (next_index(idx, b.extent));
    return s;
}

inline SparseConstantResult empirical_sparse_constant(
    const OperatorTag& tag, const FormParams& params,
    const std::vector<std::pair<GridFunction, GridFunction>>& corpus,
    const StoppingOptions& opts = {}) {
    SparseConstantResult out;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GridFunction f = as_box(corpus[i].first);
        const GridFunction g = as_box(corpus[i].second);
        if (lp_norm(f, 1.0) == 0.0 || lp_norm(g, 1.0) == 0.0)
            throw std::invalid_argument("empirical_sparse_constant: zero instance");
        const GridFunction Tf = apply_operator(tag, f);
        const double num = pairing(Tf, g);
        const auto bbf = support_bbox(f);
        const auto bbg = support_bbox(g);
        std::vector<std::int64_t> lo = bbf.first, hi = bbf.second;
        for (int c = 0; c < f.d; ++c) {
            lo[static_cast<std::size_t>(c)] =
                std::min(lo[static_cast<std::size_t>(c)], bbg.first[static_cast<std::size_t>(c)]);
            hi[static_cast<std::size_t>(c)] =
                std::max(hi[static_cast<std::size_t>(c)], bbg.second[static_cast<std::size_t>(c)]);
        }
        const DyadicCube root = root_cube_covering(f.d, lo, hi);
        auto stopping = build_stopping_collection(f, g, params, root, opts);
        const double denom = sparse_form(stopping.collection, params, f, g);
        if (denom <= 0.0)
            throw std::invalid_argument("empirical_sparse_constant: zero sparse form");
        const double ratio = num / denom;
        out.per_instance.push_back(ratio);
        if (ratio > out.constant) {
            out.constant = ratio;
            out.argmax = i;
        }
    }
    return out;
}

}  // namespace sphlab
