#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "sphlab/bumps.hpp"
#include "sphlab/fft.hpp"
#include "sphlab/projections.hpp"
#include "sphlab/sphere_fourier.hpp"
#include "sphlab/symbols.hpp"

using namespace sphlab;

namespace {
std::vector<double> random_xi(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    std::vector<double> xi(static_cast<std::size_t>(d));
    for (auto& t : xi) t = U(rng);
    return xi;
}
}  // namespace

TEST_CASE("frequencies reduce into the fundamental cell") {
    const auto xi = reduce_to_torus({0.6, -0.7, 1.0, -0.5, 0.49});
    const std::vector<double> expect = {-0.4, 0.3, 0.0, -0.5, 0.49};
    for (std::size_t i = 0; i < xi.size(); ++i) {
        CHECK(xi[i] == Catch::Approx(expect[i]).margin(1e-15));
        CHECK(xi[i] >= -0.5);
        CHECK(xi[i] < 0.5);
    }
}

TEST_CASE("bump plateau and support") {
    CHECK(bump({0.0, 0.0}) == 1.0);
    CHECK(bump({0.12, -0.12, 0.0}) == 1.0);
    CHECK(bump({0.25, 0.0}) == 0.0);
    CHECK(bump({0.3}) == 0.0);
    for (double t : {0.14, 0.17, 0.2, 0.23}) {
        const double v = bump({t});
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    // rescaled plateau: bump_q(l/q + eta) = 1 for |eta| <= 1/(8q)
    for (std::int64_t q : {2, 3, 5}) {
        CHECK(bump_q({1.0 / (8.0 * static_cast<double>(q))}, q) == 1.0);
        CHECK(bump_q({0.26 / static_cast<double>(q)}, q) == 0.0);
    }
}

TEST_CASE("tau integral matches the Bessel closed form") {
    std::mt19937_64 rng(42);
    const int d = 5;
    const double lambda = 8.0;
    double lo = 1e300, hi = 0.0;
    for (int s = 0; s < 20; ++s) {
        auto xi = random_xi(d, rng);
        const double ref = sphere_hat(d, lambda, xi);
        if (std::abs(ref) < 1e-8) continue;  // avoid ratios at Bessel zeros
        const double ratio = std::real(eval_I(d, lambda, xi)) / ref;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK((hi - lo) / hi < 1e-6);
    // the measured dimensional constant is what the ratio is pinned to
    CHECK(hi == Catch::Approx(main_term_constant(d)).epsilon(1e-6));
}

TEST_CASE("measured dimensional constant agrees with the surface-area formula") {
    for (int d : {5, 6}) {
        const double analytic = std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
        CHECK(main_term_constant(d) == Catch::Approx(analytic).epsilon(1e-8));
    }
}

TEST_CASE("tau integral: radial symmetry and decay") {
    const int d = 5;
    const double lambda = 8.0;
    std::vector<double> xi = {0.1, -0.2, 0.05, 0.3, -0.15};
    std::vector<double> neg = xi;
    for (auto& t : neg) t = -t;
    CHECK(std::abs(eval_I(d, lambda, xi) - eval_I(d, lambda, neg)) < 1e-9);

    std::vector<double> near = {1.0 / 32.0, 0, 0, 0, 0};
    std::vector<double> far = {0.5, 0, 0, 0, 0};
    CHECK(std::abs(eval_I(d, lambda, far)) < std::abs(eval_I(d, lambda, near)));
}

TEST_CASE("quadrature failure carries the achieved error") {
    QuadratureSpec strict;
    strict.abs_tol = 1e-15;
    strict.rel_tol = 1e-16;
    strict.max_intervals = 2;
    try {
        eval_I(5, 8.0, {0.3, 0.1, 0.0, 0.0, 0.0}, strict);
        FAIL("expected quadrature_error");
    } catch (const quadrature_error& e) {
        CHECK(e.achieved > 0.0);
    }
}

TEST_CASE("arc integral: degenerate arc and tail identity") {
    const int d = 5;
    const double lambda = 8.0;
    const std::vector<double> zero(5, 0.0);
    CHECK(eval_J(d, lambda, 0.25, 0.25, zero) == cplx{0.0, 0.0});

    // J over the order-1 arc differs from I exactly by the complementary
    // tail; the gap measures a few 1e-3 here, and the identity pins it.
    auto arcs = farey_dissection(1);
    const cplx J = eval_J(d, lambda, arcs[0], zero);
    const cplx I = eval_I(d, lambda, zero);
    const double eps = 1.0 / (lambda * lambda);
    const double scale = e2pi() / std::pow(lambda, d - 2);
    auto kernel = [&](double tau) {
        return unit_phase(-lambda * lambda * tau) *
               detail::half_plane_kernel(d, 0.0, cplx{eps, -tau});
    };
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    const double T = 60.0;
    const int panels = static_cast<int>((T - arcs[0].tau_hi()) * 128) + 8;
    auto upper = integrate_panels(kernel, arcs[0].tau_hi(), T, panels, spec);
    auto lower = integrate_panels(kernel, -T, arcs[0].tau_lo(), panels, spec);
    const cplx far_tail = detail::ibp_tail_upper(d, 0.0, eps, lambda * lambda, T);
    const cplx tail = scale * (upper.value + lower.value + far_tail + std::conj(far_tail));
    CHECK(std::abs((I - J) - tail) < 1e-8);
    CHECK(std::abs(I - J) < 1e-2);
    CHECK(std::abs(I - J) > 1e-4);  // the complementary tail is genuinely there

    // widening the arc closes the gap monotonically
    double prev = std::abs(I - J);
    for (double half : {1.0, 2.0, 4.0}) {
        const double gap = std::abs(I - eval_J(d, lambda, -half, half, zero));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("exact shell symbol: examples and symmetry") {
    CHECK(std::abs(eval_shell_symbol(5, 4, {0, 0, 0, 0, 0}) - cplx{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(eval_shell_symbol(2, 1, {0.5, 0.5}) - cplx{-1.0, 0.0}) < 1e-14);

    // independent direct summation over the 40-point shell
    std::mt19937_64 rng(5);
    auto xi = random_xi(5, rng);
    auto shell = enumerate_shell(5, 2);
    REQUIRE(shell.count == 40);
    cplx direct{0.0, 0.0};
    for (std::int64_t i = 0; i < shell.count; ++i) {
        double dot = 0;
        for (int j = 0; j < 5; ++j) dot += shell.point(i)[j] * xi[static_cast<std::size_t>(j)];
        direct += std::polar(1.0, -two_pi * dot);
    }
    direct /= 40.0;
    CHECK(std::abs(eval_shell_symbol(shell, xi) - direct) < 1e-13);

    // modulus bounded by 1, equality at zero
    for (int s = 0; s < 20; ++s) {
        auto x = random_xi(5, rng);
        CHECK(std::abs(eval_shell_symbol(shell, x)) <= 1.0 + 1e-12);
    }

    // invariance under coordinate permutation and sign flips
    auto x = random_xi(5, rng);
    std::vector<double> permuted = {x[4], x[2], x[0], x[1], x[3]};
    std::vector<double> flipped = x;
    flipped[1] = -flipped[1];
    flipped[3] = -flipped[3];
    CHECK(std::abs(eval_shell_symbol(shell, x) - eval_shell_symbol(shell, permuted)) < 1e-13);
    CHECK(std::abs(eval_shell_symbol(shell, x) - eval_shell_symbol(shell, flipped)) < 1e-13);

    CHECK_THROWS_AS(eval_shell_symbol(3, 7, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("circle reconstruction at d=5") {
    std::mt19937_64 rng(17);
    for (std::int64_t n : {16, 25}) {
        auto shell = enumerate_shell(5, n);
        for (int s = 0; s < 3; ++s) {
            auto xi = random_xi(5, rng);
            const auto circ = eval_shell_symbol_circle(5, n, 4, xi);
            const cplx exact = eval_shell_symbol(shell, xi);
            CHECK(std::abs(circ.normalized - exact) < 1e-5);
            CHECK(circ.ratio ==
                  Catch::Approx(static_cast<double>(shell.count) /
                                std::pow(std::sqrt(static_cast<double>(n)), 3.0)));
        }
    }
    // normalization survives the decomposition at xi = 0
    const auto at0 = eval_shell_symbol_circle(5, 25, 4, std::vector<double>(5, 0.0));
    CHECK(std::abs(at0.normalized - cplx{1.0, 0.0}) < 1e-6);
}

TEST_CASE("circle reconstruction with the degenerate order-1 dissection") {
    std::mt19937_64 rng(23);
    auto xi = random_xi(2, rng);
    const auto circ = eval_shell_symbol_circle(2, 1, 1, xi);
    const cplx exact = eval_shell_symbol(2, 1, xi);
    CHECK(std::abs(circ.normalized - exact) < 1e-6);
}

TEST_CASE("main symbol: value at zero and disjoint windows") {
    const int d = 5;
    const std::int64_t n = 64, Lambda = 8;
    const auto at0 = eval_main_symbol(d, n, Lambda, std::vector<double>(5, 0.0));
    CHECK(std::abs(at0.normalized - cplx{1.0, 0.0}) < 0.1);

    // a frequency farther than the window width from every l/q sees nothing
    std::vector<double> xi(5, 0.26);
    CHECK(bump_q(xi, 1) == 0.0);
    std::vector<double> u2 = xi;
    for (auto& t : u2) t -= 0.5;
    CHECK(bump_q(u2, 2) == 0.0);

    // residual is small at zero and bounded on samples
    CHECK(std::abs(eval_residual_symbol(d, n, Lambda, std::vector<double>(5, 0.0))) < 0.1);
    std::mt19937_64 rng(31);
    for (int s = 0; s < 10; ++s) {
        auto x = random_xi(5, rng);
        CHECK(std::abs(eval_residual_symbol(d, n, Lambda, x)) <= 2.0);
    }
}

TEST_CASE("windowed symbol approaches the main symbol as arcs widen") {
    // at order 1 the single q=1 window is the whole story; widening the
    // integration range turns the arc value into the full-line one
    const int d = 5;
    const std::int64_t n = 64;
    std::vector<double> xi(5, 0.02);
    const auto main_val = eval_main_symbol(d, n, 1, xi);
    const double lambda = 8.0;
    double prev = 1e300;
    for (double half : {0.5, 1.0, 4.0}) {
        const cplx windowed = bump_q(xi, 1) * eval_J(d, lambda, -half, half, xi);
        const double gap = std::abs(windowed / main_val.ratio - main_val.normalized);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("residual decay across dyadic blocks") {
    std::mt19937_64 rng(7);
    std::vector<std::pair<double, double>> pts;
    for (std::int64_t Lam : {8, 16, 32}) {
        auto shell = enumerate_shell(5, Lam * Lam);
        double sup = 0;
        for (int s = 0; s < 30; ++s) {
            auto xi = random_xi(5, rng);
            sup = std::max(sup, std::abs(eval_residual_symbol(shell, Lam, xi)));
        }
        pts.emplace_back(static_cast<double>(Lam), sup);
    }
    const double slope = (std::log2(pts[2].second) - std::log2(pts[0].second)) /
                         (std::log2(pts[2].first) - std::log2(pts[0].first));
    CHECK(slope <= -0.5 + 0.3);
}

TEST_CASE("annular family is a partition of unity away from zero") {
    for (int s = 0; s < 100; ++s) {
        const double r = std::pow(10.0, -3.0 + 4.0 * s / 99.0);
        double sum = 0;
        for (int k = -14; k <= 8; ++k) sum += lp_psi(k, r);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("projections on a 16^2 torus") {
    GridFunction c = GridFunction::torus(2, 16);
    for (auto& v : c.values) v = 1.0;

    // the annular multiplier never sees frequency zero
    auto banded = project_band(c, 1, 2, 1);
    CHECK(lp_norm(banded, INFINITY) < 1e-13);

    // the low-pass projection passes constants through (window value 1 at 0)
    auto low = project_lowpass(c, 0.5, 1);
    for (const auto& v : low.values) CHECK(std::abs(v - cplx{1.0, 0.0}) < 1e-12);

    // idempotence-by-support: applying the band twice equals the squared
    // multiplier applied once
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    GridFunction f = GridFunction::torus(2, 16);
    for (auto& v : f.values) v = {U(rng), U(rng)};
    auto twice = project_band(project_band(f, 1, 2, 1), 1, 2, 1);
    auto squared = apply_multiplier(f, [](const std::vector<double>& xi) {
        const double m = band_multiplier(xi, 1, 2, 1);
        return m * m;
    });
    for (std::size_t i = 0; i < twice.values.size(); ++i)
        CHECK(std::abs(twice.values[i] - squared.values[i]) < 1e-12);

    // Parseval through the DFT path
    auto spec = dft(f);
    double fourier = 0;
    for (const auto& v : spec) fourier += std::norm(v);
    fourier = std::sqrt(fourier / static_cast<double>(f.size()));
    CHECK(std::abs(fourier - lp_norm(f, 2.0)) < 1e-8);

    // aliasing guard
    CHECK_THROWS_AS(project_band(f, 1, 4, 1), std::invalid_argument);
}

TEST_CASE("the q-layer of the main symbol decays like q^{-d/2}") {
    // the layer added when the dissection order reaches q is bounded in sup
    // by the Gauss-sum size times the dimensional constant; this is the
    // mechanism behind the l2 decay of the single-rational pieces
    const int d = 5;
    const std::int64_t n = 64;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double cd = main_term_constant(d);
    for (std::int64_t q = 2; q <= 6; ++q) {
        double layer_sup = 0.0;
        for (int s = 0; s < 40; ++s) {
            // sample near the rationals l/q, where the layer lives
            std::vector<double> xi(5);
            for (int i = 0; i < 5; ++i)
                xi[static_cast<std::size_t>(i)] =
                    std::round(U(rng) * static_cast<double>(q)) / static_cast<double>(q) +
                    U(rng) * 0.1 / static_cast<double>(q);
            xi = reduce_to_torus(xi);
            const cplx with = eval_main_symbol(d, n, q, xi).raw;
            const cplx without = eval_main_symbol(d, n, q - 1, xi).raw;
            layer_sup = std::max(layer_sup, std::abs(with - without));
        }
        const double phi_q = static_cast<double>(units_mod(q).size());
        const double bound =
            phi_q * std::pow(2.0, 0.5 * d) * std::pow(static_cast<double>(q), -0.5 * d) * cd;
        CHECK(layer_sup <= bound + 1e-12);
    }
}
