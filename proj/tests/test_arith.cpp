#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "sphlab/arith.hpp"

using namespace sphlab;

TEST_CASE("units_mod") {
    CHECK(units_mod(1) == std::vector<std::int64_t>{1});
    CHECK(units_mod(6) == std::vector<std::int64_t>{1, 5});
    CHECK(units_mod(12) == std::vector<std::int64_t>{1, 5, 7, 11});
    // Euler phi via a gcd scan, as the independent count
    for (std::int64_t q : {7, 9, 16, 30}) {
        std::int64_t phi = 0;
        for (std::int64_t a = 1; a <= q; ++a)
            if (std::gcd(a, q) == 1) ++phi;
        CHECK(static_cast<std::int64_t>(units_mod(q).size()) == phi);
    }
}

TEST_CASE("gauss_sum_1d: pinned examples") {
    CHECK(std::abs(gauss_sum_1d(1, 1, 0) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(gauss_sum_1d(1, 2, 0)) < 1e-15);            // 1 + e^{i pi} = 0
    CHECK(std::abs(gauss_sum_1d(1, 2, 1) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("gauss_sum rows agree with the single-point path") {
    for (std::int64_t q : {5, 8, 12, 17}) {
        for (std::int64_t a : units_mod(q)) {
            auto row = gauss_sum_1d_row(a, q);
            for (std::int64_t l = 0; l < q; ++l)
                CHECK(std::abs(row[static_cast<std::size_t>(l)] - gauss_sum_1d(a, q, l)) < 1e-13);
        }
    }
}

TEST_CASE("product formula vs direct summation") {
    // every l in (Z/q)^d, every unit a, q <= 12, d <= 3
    for (int d = 1; d <= 3; ++d) {
        for (std::int64_t q = 1; q <= 12; ++q) {
            for (std::int64_t a : units_mod(q)) {
                std::vector<std::int64_t> l(static_cast<std::size_t>(d), 0);
                std::vector<std::int64_t> ext(static_cast<std::size_t>(d), q);
                std::size_t bad = 0;
                do {
                    if (std::abs(gauss_sum(d, a, q, l) - gauss_sum_direct(d, a, q, l)) >= 1e-12)
                        ++bad;
                } while (next_index(l, ext));
                CHECK(bad == 0);
            }
        }
    }
}

TEST_CASE("pinned 2-d examples") {
    CHECK(std::abs(gauss_sum(3, 1, 1, {0, 0, 0}) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(gauss_sum(2, 1, 2, {0, 1})) < 1e-15);  // 0 * 1
    const cplx one_dim = gauss_sum_1d(1, 3, 0);
    CHECK(std::abs(gauss_sum(2, 1, 3, {0, 0}) - one_dim * one_dim) < 1e-14);
    CHECK(std::abs(gauss_sum_direct(2, 1, 3, {0, 0}) - one_dim * one_dim) < 1e-12);
}

TEST_CASE("direct path refuses huge q^d") {
    CHECK_THROWS_AS(gauss_sum_direct(5, 1, 100, {0, 0, 0, 0, 0}), size_limit_error);
}

TEST_CASE("magnitude law on a modulus sample") {
    const double sqrt2 = std::sqrt(2.0);
    for (std::int64_t q : {3, 4, 10, 49, 128, 200, 343, 500}) {
        for (std::int64_t a : units_mod(q)) {
            auto row = gauss_sum_1d_row(a, q);
            for (const auto& v : row) {
                const double s = std::sqrt(static_cast<double>(q)) * std::abs(v);
                const double dist =
                    std::min({std::abs(s), std::abs(s - 1.0), std::abs(s - sqrt2)});
                CHECK(dist < 1e-9);
            }
        }
    }
}

TEST_CASE("completeness identity residual") {
    CHECK(gauss_identity_residual(1, 1) == 0.0);
    CHECK(gauss_identity_residual(2, 4) < 1e-12);
    CHECK(gauss_identity_residual(3, 7) < 1e-12);
}

TEST_CASE("farey dissection: orders 1, 2, 4") {
    auto a1 = farey_dissection(1);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0].q == 1);
    CHECK(a1[0].length() == Catch::Approx(1.0));

    auto a2 = farey_dissection(2);
    REQUIRE(a2.size() == 2);
    double len2 = 0;
    for (const auto& arc : a2) len2 += arc.length();
    CHECK(len2 == Catch::Approx(1.0).epsilon(1e-14));

    auto a4 = farey_dissection(4);
    REQUIRE(a4.size() == 6);
    std::set<std::pair<std::int64_t, std::int64_t>> fracs;
    for (const auto& arc : a4) fracs.insert({arc.a, arc.q});
    CHECK(fracs == std::set<std::pair<std::int64_t, std::int64_t>>{
                       {1, 1}, {1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}});
    double len4 = 0;
    for (const auto& arc : a4) len4 += arc.length();
    CHECK(len4 == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("farey arcs tile one period without overlap") {
    for (std::int64_t order : {8, 32, 256}) {
        auto arcs = farey_dissection(order);
        double len = 0;
        std::vector<std::pair<double, double>> intervals;
        for (const auto& arc : arcs) {
            len += arc.length();
            CHECK(arc.alpha > 0);
            CHECK(arc.beta > 0);
            CHECK(arc.alpha <= 1.0);
            CHECK(arc.beta <= 1.0);
            intervals.emplace_back(arc.center() + arc.tau_lo(), arc.center() + arc.tau_hi());
        }
        CHECK(len == Catch::Approx(1.0).epsilon(1e-12));
        std::sort(intervals.begin(), intervals.end());
        for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
            CHECK(intervals[i].second <= intervals[i + 1].first + 1e-12);
            // adjacent arcs actually meet at the mediants: no gaps either
            CHECK(intervals[i].second == Catch::Approx(intervals[i + 1].first).margin(1e-12));
        }
    }
}
